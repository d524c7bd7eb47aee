#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vlat/fqmat.hpp"
#include "vlat/fppoly.hpp"

namespace vlat {

// Nondegenerate quadratic space over F_p (odd), base-changed to F_{p^k} on
// demand.  gram is the bilinear form; Q(v) = [v,v]/2.
struct FqQuadSpace {
    long p = 3;
    FqMat gram;  // over F_p

    FqQuadSpace() = default;
    FqQuadSpace(long prime, FqMat g);
    static FqQuadSpace from_diag(long prime, const std::vector<long>& diag);

    int dim() const { return gram.rows(); }
    FqElt det() const { return det_of(gram); }
    // det * (-1)^{m/2} is a square <=> split (even dim only)
    bool is_split() const;
    int witt_index() const;  // over F_p
    // gram lifted to F_{p^k}
    FqMat gram_at(int k) const;
    bool split_at_level(int k) const;
};

// Subspace over F_{p^k}, held as an RREF row basis (canonical).
struct FqSubspace {
    FqMat rows;

    int dim() const { return rows.rows(); }
    int level() const { return rows.field()->k; }
    std::string key() const { return rows.str(); }
    bool operator==(const FqSubspace& o) const { return rows == o.rows; }
    bool operator<(const FqSubspace& o) const { return key() < o.key(); }
};

bool subspace_isotropic(const FqQuadSpace& sp, const FqMat& rows);

// Number of r-dim subspaces of F_q^m (clamped at 2^62).
unsigned long long subspace_count(int m, int r, unsigned long long q);

// All totally isotropic r-dim subspaces over F_{p^k}, canonical order.
std::vector<FqSubspace> enumerate_isotropic(const FqQuadSpace& sp, int r, int k,
                                            unsigned long long budget = 10000000ull);

// Maximal isotropics of an even-dim space with +/- labels: L, L' share a
// label iff dim(L cap L') = d (mod 2).  Empty when the form does not split
// over F_{p^k}.
std::vector<std::pair<FqSubspace, int>> max_isotropic_with_component(
    const FqQuadSpace& sp, int k, unsigned long long budget = 10000000ull);

// sigma = coordinate-wise x -> x^p.
FqSubspace frobenius_subspace(const FqSubspace& L);
FqSubspace sum_subspaces(const FqSubspace& a, const FqSubspace& b);
FqSubspace intersect_subspaces(const FqSubspace& a, const FqSubspace& b);

// rk(L cap sigma L) = d-1 (even space of dim 2d).
bool in_S_sharp(const FqQuadSpace& sp, const FqSubspace& L);
// rk(L cap sigma L) >= d-2 (odd space of dim 2d-1).
bool in_S(const FqQuadSpace& sp, const FqSubspace& L);

// L# |-> L# cap Omega where the ambient splits off its last coordinate as an
// orthogonal line; result lives in the first m-1 coordinates.
FqSubspace odev_map(const FqQuadSpace& sp_sharp, const FqSubspace& Lsharp);

struct FrobeniusClosure {
    int d_min = 0;
    FqSubspace stable;
};
FrobeniusClosure frobenius_closure(const FqSubspace& L, int k_cap = 32);

// Fixed maximal isotropic subspaces of gbar at level k, each with its
// S-membership flag (S# for even ambient, S for odd).  Uses a full scan when
// the subspace count fits the budget, otherwise enumerates gbar-stable
// subspaces through the primary decomposition of the characteristic
// polynomial (components must be cyclic or semisimple).
std::vector<std::pair<FqSubspace, bool>> fixed_points(const FqQuadSpace& sp, const FqMat& gbar,
                                                      int k,
                                                      unsigned long long budget = 10000000ull);

// Largest r with an isotropic r-subspace at level k, found by scanning.
int witt_index_by_enumeration(const FqQuadSpace& sp, int k,
                              unsigned long long budget = 10000000ull);

}  // namespace vlat
