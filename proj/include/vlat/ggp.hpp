#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vlat/fppoly.hpp"
#include "vlat/lattice.hpp"
#include "vlat/strata.hpp"

namespace vlat {

// g acts on the twisted sharp model (x0 = e0, orthogonal to the rest); it
// must preserve the form exactly and have determinant 1.
struct GGPInput {
    QuadSpace l0sharp;  // from l0_sharp_model
    QMat g;

    GGPInput(QuadSpace space, QMat gmat);
    int dim() const { return l0sharp.dim(); }
};

struct FactorClass {
    FqPoly factor;
    int multiplicity = 0;
};

struct NsrClass {
    FqPoly rep;       // canonical representative (the smaller of R, R*)
    FqPoly partner;   // R*
    int multiplicity = 0;
};

struct Classification {
    std::vector<FactorClass> sr;
    std::vector<NsrClass> nsr;
};

// Z_p x0 + Z_p g x0 + ... + Z_p g^n x0; full rank iff the orbit spans.
struct OrbitLattice {
    bool full_rank = false;
    std::optional<Lattice> lattice;
};
OrbitLattice l_x0_lattice(const GGPInput& in);

bool is_rsm(const GGPInput& in);

struct ReducedAction {
    FqQuadSpace omega;  // quotient form of the orbit lattice
    FqMat gbar;         // induced action, det 1
    FqPoly P;           // characteristic polynomial, self-reciprocal
};
// Throws CriterionNotApplicable when g is not regular semisimple minuscule.
ReducedAction reduce_g(const GGPInput& in);

// SR / NSR split of the monic factorization; P(0) must be nonzero.
Classification classify_factors(const FqPoly& P);

// The unique odd-multiplicity self-reciprocal factor, if there is exactly one.
std::optional<FqPoly> nonempty_criterion(const Classification& cls);

// deg(Q_g) * prod over NSR classes (1 + m_R); needs the criterion to hold.
long point_count(const Classification& cls);
// point_count * (m_{Q_g}+1)/2.
long intersection_number(const Classification& cls);

// Builds gbar in SO(target) with characteristic polynomial P, block by block
// (hyperbolic blocks for NSR pairs, twisted transfer forms for SR factors),
// then moves the assembled form onto the target by an explicit isometry.
// Throws UnrealizableOnForm with the obstruction when impossible.
FqMat realize(const FqPoly& P, const FqQuadSpace& target);

struct CrossCheck {
    long k_star = 0;
    std::vector<long> counts;   // S-flagged fixed points at k*, 2k*
    bool stable = false;
    long formula = 0;           // 0 when the criterion is empty
    bool criterion_empty = false;
    bool cyclic = false;        // F_p[gbar]-module cyclic (true for honest reductions)
    std::string verdict;        // "match" | "mismatch" | "assumption-violated"
};

// Compares the closed formula with the fixed-point oracle at levels
// k* = 2 lcm(deg R) and 2 k*.
CrossCheck cross_check(const FqQuadSpace& form, const FqMat& gbar,
                       unsigned long long budget = 10000000ull);
CrossCheck cross_check(const GGPInput& in, unsigned long long budget = 10000000ull);

struct GGPReport {
    bool rsm = false;
    std::optional<FqPoly> P;
    Classification cls;
    std::optional<FqPoly> Q;
    std::optional<long> count;
    std::optional<long> multiplicity;
    std::optional<CrossCheck> oracle;
};

GGPReport ggp_report(const GGPInput& in, bool with_oracle,
                     unsigned long long budget = 10000000ull);
GGPReport ggp_report_from_poly(const FqPoly& P);

}  // namespace vlat
