#include "vlat/quadspace.hpp"

#include <algorithm>

namespace vlat {

QuadSpace::QuadSpace(long prime, QMat g) : p(prime), gram(std::move(g)) {
    require_odd_prime(p);
    if (gram.rows() != gram.cols() || gram.rows() < 1) throw InvalidInput("gram must be square");
    if (!gram.is_symmetric()) throw InvalidInput("gram must be symmetric");
    if (gram.det() == 0) throw InvalidInput("gram must be nondegenerate");
}

Rat QuadSpace::bilinear(const std::vector<Rat>& v, const std::vector<Rat>& w) const {
    if (static_cast<int>(v.size()) != dim() || static_cast<int>(w.size()) != dim())
        throw InvalidInput("vector dimension mismatch");
    Rat acc(0);
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) acc += v[i] * gram.at(i, j) * w[j];
    return acc;
}

Rat QuadSpace::quad(const std::vector<Rat>& v) const { return bilinear(v, v) / 2; }

int hilbert_symbol(const Rat& a, const Rat& b, long p) {
    require_odd_prime(p);
    if (a == 0 || b == 0) throw InvalidInput("hilbert symbol of zero");
    long alpha = padic_valuation(a, p);
    long beta = padic_valuation(b, p);
    Rat u = unit_part(a, p), v = unit_part(b, p);
    int s = 1;
    if ((alpha % 2 != 0) && (beta % 2 != 0)) s *= legendre(p - 1, p);  // (-1|p)
    if (beta % 2 != 0) s *= legendre_unit(u, p);
    if (alpha % 2 != 0) s *= legendre_unit(v, p);
    return s;
}

QuadSpace Diagonalization::space(long p) const {
    int n = static_cast<int>(diag.size());
    QMat g(n, n);
    for (int i = 0; i < n; ++i) g.at(i, i) = diag[i];
    return QuadSpace(p, g);
}

Diagonalization diagonalize(const QuadSpace& Q) {
    const int n = Q.dim();
    const long p = Q.p;
    QMat B = QMat::identity(n);
    auto gram_at = [&](int i, int j) {
        Rat acc(0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) acc += B.at(r, i) * Q.gram.at(r, c) * B.at(c, j);
        return acc;
    };
    for (int i = 0; i < n; ++i) {
        // pivot: first remaining column of minimal diagonal valuation
        long best = kValInfinity;
        int bj = -1;
        for (int j = i; j < n; ++j) {
            Rat d = gram_at(j, j);
            if (d == 0) continue;
            long v = padic_valuation(d, p);
            if (v < best) { best = v; bj = j; }
        }
        if (bj < 0) {
            // all remaining diagonal entries vanish; mix in an off-diagonal
            bool fixed = false;
            for (int j = i; j < n && !fixed; ++j)
                for (int l = i; l < n && !fixed; ++l) {
                    if (j == l) continue;
                    if (gram_at(j, l) != 0) {
                        for (int r = 0; r < n; ++r) B.at(r, j) += B.at(r, l);
                        fixed = true;
                    }
                }
            if (!fixed) throw InvalidInput("degenerate gram in diagonalize");
            --i;
            continue;
        }
        if (bj != i)
            for (int r = 0; r < n; ++r) std::swap(B.at(r, i), B.at(r, bj));
        Rat piv = gram_at(i, i);
        for (int j = i + 1; j < n; ++j) {
            Rat c = gram_at(i, j);
            if (c == 0) continue;
            Rat f = c / piv;
            for (int r = 0; r < n; ++r) B.at(r, j) -= f * B.at(r, i);
        }
        // normalize valuation into {0,1}
        long v = padic_valuation(gram_at(i, i), p);
        long shift = (v >= 0) ? v / 2 : (v - 1) / 2;
        if (shift != 0) {
            Rat f = pow_rat(p, -shift);
            for (int r = 0; r < n; ++r) B.at(r, i) *= f;
        }
    }
    Diagonalization out;
    out.basis = B;
    out.diag.resize(n);
    for (int i = 0; i < n; ++i) out.diag[i] = gram_at(i, i);
    return out;
}

Rat SquareClass::representative(long p) const {
    Rat r(1);
    if (nonresidue) r *= least_nonresidue(p);
    if (odd_val) r *= p;
    return r;
}

SquareClass square_class(const Rat& x, long p) {
    if (x == 0) throw InvalidInput("square class of zero");
    SquareClass c;
    c.odd_val = ((padic_valuation(x, p) % 2) + 2) % 2 == 1;
    c.nonresidue = legendre_unit(unit_part(x, p), p) == -1;
    return c;
}

SquareClass discriminant(const QuadSpace& Q) {
    Diagonalization d = diagonalize(Q);
    Rat prod = pow_rat(2, Q.dim());
    for (const Rat& a : d.diag) prod *= a;
    return square_class(prod, Q.p);
}

int hasse_invariant(const QuadSpace& Q) {
    Diagonalization d = diagonalize(Q);
    int s = 1;
    for (size_t i = 0; i < d.diag.size(); ++i)
        for (size_t j = i + 1; j < d.diag.size(); ++j)
            s *= hilbert_symbol(d.diag[i], d.diag[j], Q.p);
    return s;
}

bool isometric(const QuadSpace& a, const QuadSpace& b) {
    if (a.p != b.p) throw InvalidInput("isometry test needs equal primes");
    return a.dim() == b.dim() && discriminant(a) == discriminant(b) &&
           hasse_invariant(a) == hasse_invariant(b);
}

namespace {

struct WorkingBasis {
    const QuadSpace* Q;
    QMat B;

    Rat entry(int i, int j) const {
        int n = Q->dim();
        Rat acc(0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) acc += B.at(r, i) * Q->gram.at(r, c) * B.at(c, j);
        return acc;
    }
    std::vector<Rat> col(int j) const { return B.col(j); }
    void set_col(int j, const std::vector<Rat>& v) { B.set_col(j, v); }
};

std::vector<Rat> lin_comb(const std::vector<std::pair<Rat, std::vector<Rat>>>& terms) {
    std::vector<Rat> acc(terms[0].second.size(), Rat(0));
    for (auto& [c, v] : terms)
        for (size_t r = 0; r < acc.size(); ++r) acc[r] += c * v[r];
    return acc;
}

// Turn a pair of valuation-1 diagonal entries whose units a, b satisfy
// leg(-ab) = +1 into two unit entries.
void fix_pair(WorkingBasis& w, int i, int j, long p) {
    Rat a = unit_part(w.entry(i, i), p), b = unit_part(w.entry(j, j), p);
    long am = mod_p(a, p), bm = mod_p(b, p);
    long x0 = -1;
    for (long x = 1; x < p; ++x)
        if ((am * x % p * x + bm) % p == 0) { x0 = x; break; }
    if (x0 < 0) throw InternalError("fix_pair called without solvable pair");
    auto val_at = [&](long x) { return padic_valuation(a * x * x + b, p); };
    if (val_at(x0) > 1) x0 += p;
    if (val_at(x0) != 1) throw InternalError("fix_pair lift failed");
    std::vector<Rat> ui = w.col(i), uj = w.col(j);
    Rat invp(1);
    invp /= p;
    std::vector<Rat> w1 = lin_comb({{Rat(x0) * invp, ui}, {invp, uj}});
    std::vector<Rat> w2 = lin_comb({{-b * invp, ui}, {a * Rat(x0) * invp, uj}});
    w.set_col(i, w1);
    w.set_col(j, w2);
}

// Combine three valuation-1 entries into one unit entry plus a 2-dim block
// carrying a single valuation-1 entry.
void fix_triple(WorkingBasis& w, int i, int j, int l, long p) {
    Rat a = unit_part(w.entry(i, i), p), b = unit_part(w.entry(j, j), p),
        c = unit_part(w.entry(l, l), p);
    long am = mod_p(a, p), bm = mod_p(b, p), cm = mod_p(c, p);
    long X = -1, Y = -1, Z = -1;
    for (long x = 1; x < p && X < 0; ++x)
        for (long y = 1; y < p && X < 0; ++y)
            for (long z = 1; z < p && X < 0; ++z)
                if ((am * x * x + bm * y * y + cm * z * z) % p == 0) { X = x; Y = y; Z = z; }
    if (X < 0) throw InternalError("ternary unit form without zero mod p");
    auto val_of = [&](long x) { return padic_valuation(a * x * x + b * Y * Y + c * Z * Z, p); };
    if (val_of(X) > 1) X += p;
    if (val_of(X) != 1) throw InternalError("fix_triple lift failed");
    std::vector<Rat> ui = w.col(i), uj = w.col(j), ul = w.col(l);
    Rat invp(1);
    invp /= p;
    std::vector<Rat> w1 =
        lin_comb({{Rat(X) * invp, ui}, {Rat(Y) * invp, uj}, {Rat(Z) * invp, ul}});
    w.set_col(i, w1);
    Rat n1 = w.entry(i, i);
    std::vector<Rat> c1(uj), c2(ul);
    {
        Rat f1 = w.entry(i, j) / n1;
        for (size_t r = 0; r < c1.size(); ++r) c1[r] = uj[r] - f1 * w1[r];
        w.set_col(j, c1);
    }
    {
        Rat f2 = w.entry(i, l) / n1;
        for (size_t r = 0; r < c2.size(); ++r) c2[r] = ul[r] - f2 * w1[r];
        w.set_col(l, c2);
    }
    QMat block(2, 2);
    block.at(0, 0) = w.entry(j, j);
    block.at(0, 1) = w.entry(j, l);
    block.at(1, 0) = block.at(0, 1);
    block.at(1, 1) = w.entry(l, l);
    Diagonalization bd = diagonalize(QuadSpace(p, block));
    std::vector<Rat> nj = lin_comb({{bd.basis.at(0, 0), c1}, {bd.basis.at(1, 0), c2}});
    std::vector<Rat> nl = lin_comb({{bd.basis.at(0, 1), c1}, {bd.basis.at(1, 1), c2}});
    w.set_col(j, nj);
    w.set_col(l, nl);
}

}  // namespace

Diagonalization almost_selfdual_form(const QuadSpace& Q) {
    const long p = Q.p;
    const int n = Q.dim();
    if (padic_valuation(Q.gram.det(), p) % 2 == 0)
        throw NoAlmostSelfDualLattice("ord_p(det) is even: no almost self-dual lattice");
    Diagonalization d = diagonalize(Q);
    WorkingBasis w{&Q, d.basis};
    auto val1_indices = [&]() {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (padic_valuation(w.entry(i, i), p) == 1) idx.push_back(i);
        return idx;
    };
    auto idx = val1_indices();
    while (idx.size() > 1) {
        if (n < 3) throw NoAlmostSelfDualLattice("dimension too small to normalize");
        bool fixed = false;
        for (size_t s = 0; s < idx.size() && !fixed; ++s)
            for (size_t t = s + 1; t < idx.size() && !fixed; ++t) {
                Rat a = unit_part(w.entry(idx[s], idx[s]), p);
                Rat b = unit_part(w.entry(idx[t], idx[t]), p);
                if (legendre_unit(-a * b, p) == 1) {
                    fix_pair(w, idx[s], idx[t], p);
                    fixed = true;
                }
            }
        if (!fixed) {
            if (idx.size() < 3) throw InternalError("valuation-1 count stuck at 2");
            fix_triple(w, idx[0], idx[1], idx[2], p);
        }
        idx = val1_indices();
    }
    if (idx.size() != 1) throw InternalError("normalization lost the odd entry");
    if (idx[0] != 0) {
        auto a = w.col(0), b = w.col(idx[0]);
        w.set_col(0, b);
        w.set_col(idx[0], a);
    }
    Diagonalization out;
    out.basis = w.B;
    out.diag.resize(n);
    for (int i = 0; i < n; ++i) out.diag[i] = w.entry(i, i);
    for (int i = 0; i < n; ++i) {
        long v = padic_valuation(out.diag[i], p);
        if ((i == 0 && v != 1) || (i > 0 && v != 0))
            throw InternalError("almost self-dual shape not reached");
        for (int j = i + 1; j < n; ++j)
            if (w.entry(i, j) != 0) throw InternalError("basis not orthogonal");
    }
    if (!isometric(Q, out.space(p))) throw InternalError("normalization changed the space");
    return out;
}

SharpSpace sharp_extend(const QuadSpace& base) {
    const long p = base.p;
    const int n = base.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && base.gram.at(i, j) != 0)
                throw InvalidInput("sharp_extend needs a diagonal almost-self-dual gram");
    std::vector<Rat> a(n);
    for (int i = 0; i < n; ++i) {
        long want = (i == 0) ? 1 : 0;
        if (padic_valuation(base.gram.at(i, i), p) != want)
            throw InvalidInput("sharp_extend needs gram diag(p a1, a2, ..., an) with units a_i");
        a[i] = (i == 0) ? Rat(base.gram.at(0, 0) / p) : base.gram.at(i, i);
    }
    SharpSpace S;
    S.base = base;
    S.a = a;
    QMat g(n + 1, n + 1);
    g.at(0, 0) = Rat(-p) * a[0];
    for (int i = 0; i < n; ++i) g.at(i + 1, i + 1) = base.gram.at(i, i);
    S.sharp = QuadSpace(p, g);
    S.x0.assign(n + 1, Rat(0));
    S.x0[0] = 1;
    QMat bs(n + 1, n + 1);
    // x0# = (x1 + x0)/2, x1# = (p a1)^{-1} (x1 - x0), xi# = xi
    bs.at(0, 0) = Rat(1, 2);
    bs.at(1, 0) = Rat(1, 2);
    bs.at(0, 1) = Rat(-1) / (Rat(p) * a[0]);
    bs.at(1, 1) = Rat(1) / (Rat(p) * a[0]);
    for (int i = 2; i <= n; ++i) bs.at(i, i) = 1;
    S.basis_sharp = bs;
    return S;
}

QuadSpace SharpSpace::sharp_in_sharp_basis() const {
    QMat g = basis_sharp.transpose() * sharp.gram * basis_sharp;
    return QuadSpace(sharp.p, g);
}

QMat SharpSpace::base_embedding() const {
    int n = base.dim();
    QMat e(n + 1, n);
    for (int i = 0; i < n; ++i) e.at(i + 1, i) = 1;
    return e;
}

QMat phi_sharp_matrix(const SharpSpace& S) {
    const long p = S.sharp.p;
    int n1 = S.sharp.dim();
    QMat m(n1, n1);
    Rat half_pa1 = Rat(p) * S.a[0] / 2;
    m.at(1, 0) = -half_pa1;           // x0# -> -(p a1/2) x1#
    m.at(0, 1) = Rat(-1) / half_pa1;  // x1# -> -(p a1/2)^{-1} x0#
    if (n1 > 2) m.at(2, 2) = -1;
    for (int i = 3; i < n1; ++i) m.at(i, i) = 1;
    return m;
}

TMaxPair t_max_pair(const QuadSpace& base) {
    int n = base.dim();
    if (n < 3) throw InvalidInput("t_max_pair needs dimension >= 3");
    TMaxPair t;
    if (n % 2 == 0) {
        t.t_max = n - 1;
    } else {
        int eps = hasse_invariant(base);
        int ref = (((n - 1) / 2) % 2 != 0) ? legendre(base.p - 1, base.p) : 1;
        t.t_max = (eps == ref) ? n - 2 : n;
    }
    t.t_max_sharp = t.t_max + 1;
    return t;
}

QMat rational_kernel(const QMat& m) {
    int rows = m.rows(), cols = m.cols();
    QMat w(m);
    std::vector<int> pivots;
    int r = 0;
    for (int j = 0; j < cols && r < rows; ++j) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (w.at(i, j) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int jj = 0; jj < cols; ++jj) std::swap(w.at(piv, jj), w.at(r, jj));
        Rat f = Rat(1) / w.at(r, j);
        for (int jj = 0; jj < cols; ++jj) w.at(r, jj) *= f;
        for (int i = 0; i < rows; ++i) {
            if (i == r || w.at(i, j) == 0) continue;
            Rat g = w.at(i, j);
            for (int jj = 0; jj < cols; ++jj) w.at(i, jj) -= g * w.at(r, jj);
        }
        pivots.push_back(j);
        ++r;
    }
    std::vector<bool> is_piv(cols, false);
    for (int j : pivots) is_piv[j] = true;
    QMat ker(cols, cols - r);
    int col = 0;
    for (int j = 0; j < cols; ++j) {
        if (is_piv[j]) continue;
        ker.at(j, col) = 1;
        for (int i = 0; i < r; ++i) ker.at(pivots[i], col) = -w.at(i, j);
        ++col;
    }
    return ker;
}

QuadSpace l0_sharp_model(const SharpSpace& S) {
    const long p = S.sharp.p;
    int n1 = S.sharp.dim();
    QMat m = phi_sharp_matrix(S);
    QuadSpace sharp_b = S.sharp_in_sharp_basis();
    QMat id = QMat::identity(n1);
    QMat eplus = rational_kernel(m - id);
    QMat eminus = rational_kernel(m + id);
    if (eplus.cols() + eminus.cols() != n1)
        throw InternalError("phi matrix is not an involution");
    // x0 in sharp-basis coordinates: x0 = x0# - (p a1/2) x1#
    std::vector<Rat> x0(n1, Rat(0));
    x0[0] = 1;
    x0[1] = Rat(-p) * S.a[0] / 2;
    QMat x0col = QMat::col_vector(x0);
    if (!(m * x0col == x0col)) throw InternalError("x0 is not phi-fixed");
    Rat x0norm = (x0col.transpose() * sharp_b.gram * x0col).at(0, 0);
    // project the + eigenspace off x0, then order columns (x0 | plus' | minus)
    QMat cand = x0col;
    std::vector<int> kind{0};
    for (int j = 0; j < eplus.cols(); ++j) {
        QMat v = eplus.cols_slice(j, j + 1);
        Rat c = (x0col.transpose() * sharp_b.gram * v).at(0, 0) / x0norm;
        QMat w = v - x0col.scaled(c);
        if (w.is_zero()) continue;
        cand = cand.hstack(w);
        kind.push_back(1);
    }
    for (int j = 0; j < eminus.cols(); ++j) {
        cand = cand.hstack(eminus.cols_slice(j, j + 1));
        kind.push_back(2);
    }
    // keep a maximal independent subset in order
    QMat sel(n1, 0);
    std::vector<int> kinds;
    for (int j = 0; j < cand.cols(); ++j) {
        QMat test = sel.hstack(cand.cols_slice(j, j + 1));
        if (rational_kernel(test).cols() == 0) {
            sel = test;
            kinds.push_back(kind[j]);
        }
    }
    if (sel.cols() != n1) throw InternalError("eigenbasis assembly failed");
    QMat g = sel.transpose() * sharp_b.gram * sel;
    Rat u(least_nonresidue(p));
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            if (kinds[i] == 2 && kinds[j] == 2) {
                g.at(i, j) *= u;
            } else if ((kinds[i] == 2) != (kinds[j] == 2)) {
                if (g.at(i, j) != 0) throw InternalError("eigenspaces not orthogonal");
            }
        }
    for (int j = 1; j < n1; ++j)
        if (g.at(0, j) != 0) throw InternalError("x0 not split off in twisted model");
    // diagonalize the x0-perp block with valuations normalized into {0,1}
    QMat perp(n1 - 1, n1 - 1);
    for (int i = 1; i < n1; ++i)
        for (int j = 1; j < n1; ++j) perp.at(i - 1, j - 1) = g.at(i, j);
    Diagonalization pd = diagonalize(QuadSpace(p, perp));
    QMat out(n1, n1);
    out.at(0, 0) = g.at(0, 0);
    for (int i = 1; i < n1; ++i) out.at(i, i) = pd.diag[i - 1];
    return QuadSpace(p, out);
}

QuadSpace l0_model(const SharpSpace& S) {
    QuadSpace big = l0_sharp_model(S);
    int n = big.dim() - 1;
    QMat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = big.gram.at(i + 1, j + 1);
    return QuadSpace(big.p, g);
}

}  // namespace vlat
