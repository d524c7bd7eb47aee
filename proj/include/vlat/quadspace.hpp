#pragma once

#include <vector>

#include "vlat/qmat.hpp"

namespace vlat {

// Nondegenerate quadratic space over Q read p-adically.  gram holds the
// symmetric bilinear form [,]; the quadratic form is Q(v) = [v,v]/2.
struct QuadSpace {
    long p = 3;
    QMat gram;

    QuadSpace() = default;
    QuadSpace(long prime, QMat g);
    int dim() const { return gram.rows(); }
    Rat bilinear(const std::vector<Rat>& v, const std::vector<Rat>& w) const;
    Rat quad(const std::vector<Rat>& v) const;
};

// (a,b)_p for odd p via valuations and Legendre symbols.
int hilbert_symbol(const Rat& a, const Rat& b, long p);

struct Diagonalization {
    QMat basis;             // columns; basis^T gram basis diagonal
    std::vector<Rat> diag;  // entries, each of valuation 0 or 1
    QuadSpace space(long p) const;  // the diagonal model as a space
};

// Symmetric Gaussian elimination; pivot = first remaining diagonal entry of
// minimal valuation; diagonal entries normalized to valuation 0 or 1 by
// rescaling basis vectors with powers of p.
Diagonalization diagonalize(const QuadSpace& Q);

// Square class of Q_p^x / squares, canonical representative in {1, u, p, up}
// with u the least positive non-residue mod p.
struct SquareClass {
    bool odd_val = false;
    bool nonresidue = false;
    bool operator==(const SquareClass& o) const = default;
    Rat representative(long p) const;
};
SquareClass square_class(const Rat& x, long p);

// disc(V) = 2^n a'_1 ... a'_n mod squares over any diagonalization.
SquareClass discriminant(const QuadSpace& Q);

// prod_{i<j} (a'_i, a'_j)_p over any diagonalization.
int hasse_invariant(const QuadSpace& Q);

// Same dimension, discriminant and Hasse invariant (p must agree).
bool isometric(const QuadSpace& a, const QuadSpace& b);

// Basis with gram diag(p a_1, a_2, ..., a_n), all a_i units.  Exists iff
// ord_p(det gram) is odd; requires n >= 3 when repair steps are needed.
Diagonalization almost_selfdual_form(const QuadSpace& Q);

// V# = l_{-p a1/2} + V with the distinguished vector x0 and the basis
// x0# = (x1+x0)/2, x1# = (p a1)^{-1}(x1-x0), xi# = xi.
struct SharpSpace {
    QuadSpace base;    // gram diag(p a1, a2, ..., an)
    QuadSpace sharp;   // coordinates (x0, x1, ..., xn); gram diag(-p a1, p a1, a2, ..., an)
    QMat basis_sharp;  // columns x0#, ..., xn# in sharp coordinates
    std::vector<Rat> x0;  // = e0
    std::vector<Rat> a;   // a1..an

    // The sharp space presented in the x# basis: hyperbolic block + diag(a2..an).
    QuadSpace sharp_in_sharp_basis() const;
    // (n+1) x n embedding of the base, x_i -> e_i.
    QMat base_embedding() const;
};

SharpSpace sharp_extend(const QuadSpace& base_in_alsd_form);

// Matrix on sharp-basis coordinates with the column table
//   x0# -> -(p a1/2) x1#,  x1# -> -(p a1/2)^{-1} x0#,  x2# -> -x2#,  xi# -> xi#.
QMat phi_sharp_matrix(const SharpSpace& S);

struct TMaxPair {
    int t_max = 0;
    int t_max_sharp = 0;
};

// Largest vertex-lattice types for the twisted pair attached to the base:
// n even -> n-1; n odd -> n-2 when eps(V) = (p,-1)^{(n-1)/2}, else n.
// t_max_sharp = t_max + 1.
TMaxPair t_max_pair(const QuadSpace& base_in_alsd_form);

// Descent along phi_sharp_matrix: the +1-eigenspace keeps its form, the
// -1-eigenspace is scaled by the canonical non-residue.  Coordinates are
// arranged so x0 = e0 and x0 is orthogonal to the rest; the x0-perp model
// is the lower-right block.
QuadSpace l0_sharp_model(const SharpSpace& S);
QuadSpace l0_model(const SharpSpace& S);

// Kernel of a rational matrix, returned as columns (possibly 0 columns).
QMat rational_kernel(const QMat& m);

}  // namespace vlat
