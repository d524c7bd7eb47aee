#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlat/quadspace.hpp"

namespace vlat {

// Full-rank Z_(p)-lattice inside a QuadSpace, held in canonical column
// Hermite form: lower triangular, diagonal p^{k_i}, entries below each pivot
// reduced to canonical residues.  Equality of lattices is equality of forms.
class Lattice {
public:
    Lattice(QuadSpace ambient, const QMat& basis_columns);
    static Lattice standard(const QuadSpace& ambient);
    // Span of possibly more than n columns (must have full rank).
    static Lattice from_columns(QuadSpace ambient, const QMat& columns);

    const QuadSpace& ambient() const { return ambient_; }
    const QMat& basis() const { return basis_; }
    QMat gram() const;  // basis^T G basis
    long p() const { return ambient_.p; }
    int dim() const { return ambient_.dim(); }
    const std::string& key() const { return key_; }
    bool operator==(const Lattice& o) const { return key_ == o.key_; }
    bool operator<(const Lattice& o) const { return key_ < o.key_; }

private:
    QuadSpace ambient_;
    QMat basis_;
    std::string key_;
};

Lattice dual_lattice(const Lattice& L);
bool lattice_contains(const Lattice& big, const Lattice& small);
Lattice lattice_join(const Lattice& a, const Lattice& b);
Lattice lattice_meet(const Lattice& a, const Lattice& b);
Lattice scale_lattice(const Lattice& L, const Rat& c);
Lattice transform_lattice(const Lattice& L, const QMat& g);
bool lattice_member(const Lattice& L, const std::vector<Rat>& v);

// Valuations of the elementary divisors of the gram matrix, ascending.
std::vector<long> gram_divisor_valuations(const Lattice& L);

// p Lambda <= dual <= Lambda, i.e. all gram divisor valuations in {-1,0}.
bool is_vertex(const Lattice& L);
// Number of gram divisor valuations equal to -1 (= length of Lambda/dual for
// vertex lattices).
int type_of(const Lattice& L);

struct VertexLattice {
    Lattice lat;
    int type;
};

// Jordan splitting: unimodular T over Z_(p) with T^T A T diagonal (p odd).
struct JordanSplit {
    QMat basis;             // T
    std::vector<Rat> diag;  // diagonal entries
};
JordanSplit jordan_splitting(const QMat& sym, long p);

// Quotient Lambda/Lambda^dual of a vertex lattice with the form p*Q mod p.
struct QuotientForm {
    long p;
    std::vector<long> gram_diag;  // t diagonal entries over F_p (form p[.,.] mod p)
    QMat basis;                   // t ambient columns projecting to the quotient basis
    QMat adapted;                 // full adapted lattice basis (ambient columns)
    std::vector<long> diag_vals;  // valuations per adapted vector (-1 or 0)
};
QuotientForm quotient_form(const Lattice& L);

// Lambda + Z_p (p^{-1} x0) for ambients where x0 = e0 and e0 is orthogonal to
// the remaining coordinates; L lives in the e0-perp space (last n coords).
Lattice sharp_lattice(const Lattice& L_small, const QuadSpace& big);
// L' cap (x0-perp) as a lattice in the small ambient (no membership demand).
Lattice lattice_cap_perp(const Lattice& L_big, const QuadSpace& small);
// Inverse of sharp_lattice: L' must contain p^{-1} x0.
Lattice unsharp_lattice(const Lattice& L_big, const QuadSpace& small);

// Enlarges a vertex lattice by isotropic steps (type +2 each) until no step
// remains; the result has the maximal type attainable above L.
Lattice grow_vertex(const Lattice& L);

// Exact count of candidate lattices in the window pM <= N <= p^{-1}M.
unsigned long long vertex_window_size(int n, long p);

// All vertex lattices N with pM <= N <= p^{-1}M, canonically sorted.
// Throws BudgetExceeded when the window has more candidates than budget.
std::vector<VertexLattice> enumerate_vertex_near(const Lattice& M, int radius = 1,
                                                 unsigned long long budget = 10000000ull);

}  // namespace vlat
