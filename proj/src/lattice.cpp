#include "vlat/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace vlat {

Lattice::Lattice(QuadSpace ambient, const QMat& basis_columns) : ambient_(std::move(ambient)) {
    if (basis_columns.rows() != ambient_.dim() || basis_columns.cols() != ambient_.dim())
        throw InvalidInput("lattice basis must be square of ambient dimension");
    basis_ = chnf_local(basis_columns, ambient_.p);
    key_ = basis_.str();
}

Lattice Lattice::standard(const QuadSpace& ambient) {
    return Lattice(ambient, QMat::identity(ambient.dim()));
}

Lattice Lattice::from_columns(QuadSpace ambient, const QMat& columns) {
    if (columns.rows() != ambient.dim()) throw InvalidInput("column dimension mismatch");
    QMat h = chnf_local(columns, ambient.p);
    return Lattice(std::move(ambient), h);
}

QMat Lattice::gram() const { return basis_.transpose() * ambient_.gram * basis_; }

Lattice dual_lattice(const Lattice& L) {
    QMat g = L.gram();
    return Lattice(L.ambient(), L.basis() * g.inverse());
}

bool lattice_contains(const Lattice& big, const Lattice& small) {
    if (!(big.ambient().gram == small.ambient().gram) || big.p() != small.p())
        throw InvalidInput("lattices live in different ambients");
    QMat x = big.basis().inverse() * small.basis();
    return p_integral(x, big.p());
}

Lattice lattice_join(const Lattice& a, const Lattice& b) {
    if (!(a.ambient().gram == b.ambient().gram) || a.p() != b.p())
        throw InvalidInput("lattices live in different ambients");
    return Lattice::from_columns(a.ambient(), a.basis().hstack(b.basis()));
}

Lattice lattice_meet(const Lattice& a, const Lattice& b) {
    return dual_lattice(lattice_join(dual_lattice(a), dual_lattice(b)));
}

Lattice scale_lattice(const Lattice& L, const Rat& c) {
    if (c == 0) throw InvalidInput("scaling lattice by zero");
    return Lattice(L.ambient(), L.basis().scaled(c));
}

Lattice transform_lattice(const Lattice& L, const QMat& g) {
    return Lattice(L.ambient(), g * L.basis());
}

bool lattice_member(const Lattice& L, const std::vector<Rat>& v) {
    QMat x = L.basis().inverse() * QMat::col_vector(v);
    return p_integral(x, L.p());
}

std::vector<long> gram_divisor_valuations(const Lattice& L) {
    return elementary_divisor_valuations(L.gram(), L.p());
}

bool is_vertex(const Lattice& L) {
    for (long v : gram_divisor_valuations(L))
        if (v != 0 && v != -1) return false;
    return true;
}

int type_of(const Lattice& L) {
    int t = 0;
    for (long v : gram_divisor_valuations(L))
        if (v == -1) ++t;
    return t;
}

JordanSplit jordan_splitting(const QMat& sym, long p) {
    if (!sym.is_symmetric()) throw InvalidInput("jordan_splitting needs a symmetric matrix");
    const int n = sym.rows();
    QMat T = QMat::identity(n);
    QMat A(sym);
    auto recompute = [&]() { A = T.transpose() * sym * T; };
    for (int i = 0; i < n; ++i) {
        // minimal valuation over the remaining block
        long best = kValInfinity;
        int bi = -1, bj = -1;
        for (int r = i; r < n; ++r)
            for (int c = r; c < n; ++c) {
                if (A.at(r, c) == 0) continue;
                long v = padic_valuation(A.at(r, c), p);
                if (v < best) { best = v; bi = r; bj = c; }
            }
        if (bi < 0) throw InvalidInput("jordan_splitting: degenerate form");
        if (bi != bj) {
            // make the minimum appear on the diagonal: col bi += col bj
            long dv = (A.at(bi, bi) == 0) ? kValInfinity : padic_valuation(A.at(bi, bi), p);
            if (dv > best) {
                for (int r = 0; r < n; ++r) T.at(r, bi) += T.at(r, bj);
                recompute();
            }
        }
        // move pivot to position i
        long bestd = kValInfinity;
        int pick = -1;
        for (int r = i; r < n; ++r) {
            if (A.at(r, r) == 0) continue;
            long v = padic_valuation(A.at(r, r), p);
            if (v < bestd) { bestd = v; pick = r; }
        }
        if (pick < 0) throw InternalError("jordan_splitting: no diagonal pivot");
        if (pick != i) {
            for (int r = 0; r < n; ++r) std::swap(T.at(r, i), T.at(r, pick));
            recompute();
        }
        Rat piv = A.at(i, i);
        for (int j = i + 1; j < n; ++j) {
            if (A.at(i, j) == 0) continue;
            Rat f = A.at(i, j) / piv;  // valuation >= 0 by pivot minimality
            for (int r = 0; r < n; ++r) T.at(r, j) -= f * T.at(r, i);
        }
        recompute();
    }
    JordanSplit out;
    out.basis = T;
    out.diag.resize(n);
    for (int i = 0; i < n; ++i) out.diag[i] = A.at(i, i);
    return out;
}

QuotientForm quotient_form(const Lattice& L) {
    if (!is_vertex(L)) throw InvalidInput("quotient_form needs a vertex lattice");
    const long p = L.p();
    JordanSplit js = jordan_splitting(L.gram(), p);
    QMat adapted = L.basis() * js.basis;
    QuotientForm out;
    out.p = p;
    out.adapted = adapted;
    std::vector<int> quo_idx;
    out.diag_vals.resize(js.diag.size());
    for (size_t i = 0; i < js.diag.size(); ++i) {
        long v = padic_valuation(js.diag[i], p);
        out.diag_vals[i] = v;
        if (v == -1) quo_idx.push_back(static_cast<int>(i));
    }
    int t = static_cast<int>(quo_idx.size());
    out.basis = QMat(L.dim(), t);
    out.gram_diag.resize(t);
    for (int j = 0; j < t; ++j) {
        for (int r = 0; r < L.dim(); ++r) out.basis.at(r, j) = adapted.at(r, quo_idx[j]);
        Rat scaled = Rat(p) * js.diag[quo_idx[j]];
        long m = mod_p(scaled, p);
        if (m == 0) throw InternalError("degenerate quotient form entry");
        out.gram_diag[j] = m;
    }
    return out;
}

namespace {

void check_sharp_ambient(const QuadSpace& big) {
    // x0 = e0 must be anisotropic and orthogonal to the other coordinates
    if (big.gram.at(0, 0) == 0) throw InvalidInput("x0 must be anisotropic");
    for (int j = 1; j < big.dim(); ++j)
        if (big.gram.at(0, j) != 0)
            throw InvalidInput("ambient must split as x0-line + x0-perp");
}

}  // namespace

Lattice sharp_lattice(const Lattice& L_small, const QuadSpace& big) {
    check_sharp_ambient(big);
    int n = L_small.dim();
    if (big.dim() != n + 1) throw InvalidInput("sharp ambient must have dimension n+1");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(big.gram.at(i + 1, j + 1) == L_small.ambient().gram.at(i, j)))
                throw InvalidInput("x0-perp gram does not match the small ambient");
    QMat cols(n + 1, n + 1);
    cols.at(0, 0) = Rat(1) / big.p;  // p^{-1} x0
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cols.at(i + 1, j + 1) = L_small.basis().at(i, j);
    return Lattice(big, cols);
}

Lattice lattice_cap_perp(const Lattice& L_big, const QuadSpace& small) {
    const QuadSpace& big = L_big.ambient();
    check_sharp_ambient(big);
    int n1 = L_big.dim();
    int n = n1 - 1;
    if (small.dim() != n) throw InvalidInput("small ambient dimension mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(big.gram.at(i + 1, j + 1) == small.gram.at(i, j)))
                throw InvalidInput("x0-perp gram does not match the small ambient");
    // intersect with the coordinate hyperplane x0 = 0: clear the first row
    QMat B = L_big.basis();
    const long p = big.p;
    long best = kValInfinity;
    int bj = -1;
    for (int j = 0; j < n1; ++j) {
        if (B.at(0, j) == 0) continue;
        long v = padic_valuation(B.at(0, j), p);
        if (v < best) { best = v; bj = j; }
    }
    if (bj < 0) throw InternalError("unsharp: degenerate basis");
    if (bj != 0)
        for (int r = 0; r < n1; ++r) std::swap(B.at(r, 0), B.at(r, bj));
    for (int j = 1; j < n1; ++j) {
        if (B.at(0, j) == 0) continue;
        Rat f = B.at(0, j) / B.at(0, 0);
        for (int r = 0; r < n1; ++r) B.at(r, j) -= f * B.at(r, 0);
    }
    QMat cols(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cols.at(i, j) = B.at(i + 1, j + 1);
    return Lattice(small, cols);
}

Lattice unsharp_lattice(const Lattice& L_big, const QuadSpace& small) {
    std::vector<Rat> pinvx0(L_big.dim(), Rat(0));
    pinvx0[0] = Rat(1) / L_big.p();
    if (!lattice_member(L_big, pinvx0))
        throw NotInSharpImage("lattice does not contain p^{-1} x0");
    return lattice_cap_perp(L_big, small);
}

Lattice grow_vertex(const Lattice& L) {
    if (!is_vertex(L)) throw InvalidInput("grow_vertex needs a vertex lattice");
    const long p = L.p();
    Lattice cur = L;
    while (true) {
        JordanSplit js = jordan_splitting(cur.gram(), p);
        QMat adapted = cur.basis() * js.basis;
        std::vector<int> unit_idx;
        for (size_t i = 0; i < js.diag.size(); ++i)
            if (padic_valuation(js.diag[i], p) == 0) unit_idx.push_back(static_cast<int>(i));
        int m = static_cast<int>(unit_idx.size());
        if (m == 0) return cur;
        // isotropic vector of the unit-block form mod p, first in lex order
        std::vector<long> d(m);
        for (int i = 0; i < m; ++i) d[i] = mod_p(js.diag[unit_idx[i]], p);
        std::vector<long> sol;
        {
            std::vector<long> c(m, 0);
            while (true) {
                int i = m - 1;
                while (i >= 0 && c[i] == p - 1) { c[i] = 0; --i; }
                if (i < 0) break;
                ++c[i];
                long acc = 0;
                for (int j = 0; j < m; ++j) acc = (acc + d[j] * c[j] % p * c[j]) % p;
                if (acc == 0) { sol = c; break; }
            }
        }
        if (sol.empty()) return cur;
        std::vector<Rat> v(cur.dim(), Rat(0));
        for (int i = 0; i < m; ++i)
            for (int r = 0; r < cur.dim(); ++r) v[r] += Rat(sol[i]) * adapted.at(r, unit_idx[i]);
        QuadSpace amb = cur.ambient();
        Rat norm = amb.bilinear(v, v);
        if (padic_valuation(norm, p) >= 2) {
            // nudge to make the valuation exactly one
            for (int i = 0; i < m; ++i) {
                std::vector<Rat> w(v);
                for (int r = 0; r < cur.dim(); ++r) w[r] += Rat(p) * adapted.at(r, unit_idx[i]);
                if (padic_valuation(amb.bilinear(w, w), p) == 1) { v = w; break; }
            }
            if (padic_valuation(amb.bilinear(v, v), p) != 1)
                throw InternalError("grow_vertex: valuation adjustment failed");
        }
        for (auto& x : v) x /= p;
        QMat cols = cur.basis().hstack(QMat::col_vector(v));
        Lattice next = Lattice::from_columns(amb, cols);
        if (!is_vertex(next) || type_of(next) != type_of(cur) + 2)
            throw InternalError("grow_vertex: step did not raise the type by 2");
        cur = next;
    }
}

// ---- window enumeration ----------------------------------------------------

namespace {

unsigned long long gauss_binom(int n, int k, long p) {
    // number of k-dim subspaces of F_p^n, clamped at 2^62
    if (k < 0 || k > n) return 0;
    const unsigned __int128 cap = (static_cast<unsigned __int128>(1) << 62);
    unsigned __int128 num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        unsigned __int128 pn = 1;
        for (int j = 0; j < n - i; ++j) {
            pn *= static_cast<unsigned long long>(p);
            if (pn > cap) return static_cast<unsigned long long>(cap);
        }
        unsigned __int128 pk = 1;
        for (int j = 0; j < k - i; ++j) pk *= static_cast<unsigned long long>(p);
        num *= (pn - 1);
        den *= (pk - 1);
        if (num > cap * den) return static_cast<unsigned long long>(cap);
    }
    return static_cast<unsigned long long>(num / den);
}

// echelon (RREF) bases of all r-dim subspaces of F_p^n, rows with entries in
// [0,p); deterministic order
void for_each_subspace(int n, int r, long p, const std::function<void(const std::vector<std::vector<long>>&, const std::vector<int>&)>& fn) {
    if (r == 0) {
        std::vector<std::vector<long>> empty;
        std::vector<int> piv;
        fn(empty, piv);
        return;
    }
    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) piv[i] = i;
    while (true) {
        // free positions: (i, j) with j > piv[i], j not a pivot
        std::vector<std::pair<int, int>> freepos;
        {
            std::vector<bool> is_piv(n, false);
            for (int j : piv) is_piv[j] = true;
            for (int i = 0; i < r; ++i)
                for (int j = piv[i] + 1; j < n; ++j)
                    if (!is_piv[j]) freepos.emplace_back(i, j);
        }
        std::vector<long> vals(freepos.size(), 0);
        while (true) {
            std::vector<std::vector<long>> rows(r, std::vector<long>(n, 0));
            for (int i = 0; i < r; ++i) rows[i][piv[i]] = 1;
            for (size_t t = 0; t < freepos.size(); ++t)
                rows[freepos[t].first][freepos[t].second] = vals[t];
            fn(rows, piv);
            int t = static_cast<int>(vals.size()) - 1;
            while (t >= 0 && vals[t] == p - 1) { vals[t] = 0; --t; }
            if (t < 0) break;
            ++vals[t];
        }
        // next pivot combination
        int i = r - 1;
        while (i >= 0 && piv[i] == n - r + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
}

struct IntMatModP {
    // rank of an integer matrix over F_p
    static int rank(std::vector<std::vector<long>> a, long p) {
        int rows = static_cast<int>(a.size());
        if (rows == 0) return 0;
        int cols = static_cast<int>(a[0].size());
        int r = 0;
        for (int j = 0; j < cols && r < rows; ++j) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (a[i][j] % p != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(a[piv], a[r]);
            long inv = 1, base = ((a[r][j] % p) + p) % p, e = p - 2;
            while (e) {
                if (e & 1) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            for (int i = 0; i < rows; ++i) {
                if (i == r) continue;
                long f = ((a[i][j] % p) + p) % p * inv % p;
                if (!f) continue;
                for (int c = j; c < cols; ++c)
                    a[i][c] = ((a[i][c] - f * a[r][c]) % p + p) % p;
            }
            ++r;
        }
        return r;
    }
};

}  // namespace

unsigned long long vertex_window_size(int n, long p) {
    const unsigned __int128 cap = (static_cast<unsigned __int128>(1) << 62);
    unsigned __int128 total = 0;
    for (int b = 0; b <= n; ++b)
        for (int a = 0; a <= b; ++a) {
            unsigned __int128 cnt = static_cast<unsigned __int128>(gauss_binom(n, b, p)) *
                                    gauss_binom(b, a, p);
            for (int i = 0; i < a * (n - b); ++i) cnt *= static_cast<unsigned long long>(p);
            total += cnt;
            if (total > cap) return static_cast<unsigned long long>(cap);
        }
    return static_cast<unsigned long long>(total);
}

namespace {

// Fixed-size integer kernel for the window scan.  Works with the lattice
// scaled by p (integer columns mod p^3) so all reductions stay in machine
// integers; survivors are re-verified exactly.
struct WindowScanner {
    int n;
    long p, p3;
    long gmi[8][8];        // p^gscale * gram in M-coordinates (integral)
    int gscale = 0;        // 0 or 1
    long det_val_gm;       // ord_p(det gram)
    std::vector<long> uinv;  // inverses of units mod p^3
    bool i128_ok;          // Bareiss fits in __int128

    bool vertex_candidate(const long cols[8][8]) const {
        // A0 = C'^T (p^gscale G) C' with C' = p * basis; Gram(N) = A0 / p^{2+gscale}
        long long A[8][8];
        long long GB[8][8];
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r) {
                long long acc = 0;
                for (int c = 0; c < n; ++c) acc += gmi[r][c] * cols[j][c];
                GB[j][r] = acc;
            }
        // vertex needs valuations of Gram(N) >= -1, i.e. A0 divisible by p^{1+gscale}
        long div = p;
        for (int s = 0; s < gscale; ++s) div *= p;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                long long acc = 0;
                for (int r = 0; r < n; ++r) acc += cols[i][r] * GB[j][r];
                if (acc % div != 0) return false;
                A[i][j] = acc / div;
                A[j][i] = A[i][j];
            }
        // now A holds B = (C^T G C)/p; vertex iff divisor valuations of B lie
        // in {0,1}: t = corank mod p must equal ord_p(det B)
        long Bm[8][8];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long v = static_cast<long>(A[i][j] % p);
                Bm[i][j] = v < 0 ? v + p : v;
            }
        int rank = 0;
        {
            int rr = 0;
            for (int j = 0; j < n && rr < n; ++j) {
                int piv = -1;
                for (int i = rr; i < n; ++i)
                    if (Bm[i][j]) { piv = i; break; }
                if (piv < 0) continue;
                for (int c = 0; c < n; ++c) std::swap(Bm[piv][c], Bm[rr][c]);
                long inv = 1, base = Bm[rr][j], e = p - 2;
                while (e) {
                    if (e & 1) inv = inv * base % p;
                    base = base * base % p;
                    e >>= 1;
                }
                for (int i = rr + 1; i < n; ++i) {
                    if (!Bm[i][j]) continue;
                    long f = Bm[i][j] * inv % p;
                    for (int c = j; c < n; ++c)
                        Bm[i][c] = ((Bm[i][c] - f * Bm[rr][c]) % p + p) % p;
                }
                ++rr;
            }
            rank = rr;
        }
        int t = n - rank;
        // ord_p(det B) == t?
        if (i128_ok) {
            __int128 W[8][8];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) W[i][j] = A[i][j];
            __int128 denom = 1;
            int sign = 1;
            for (int k = 0; k < n - 1; ++k) {
                if (W[k][k] == 0) {
                    int piv = -1;
                    for (int i = k + 1; i < n; ++i)
                        if (W[i][k] != 0) { piv = i; break; }
                    if (piv < 0) return false;  // singular: cannot happen
                    for (int c = 0; c < n; ++c) std::swap(W[k][c], W[piv][c]);
                    sign = -sign;
                }
                for (int i = k + 1; i < n; ++i)
                    for (int j = k + 1; j < n; ++j) {
                        W[i][j] = W[i][j] * W[k][k] - W[i][k] * W[k][j];
                        if (k > 0) W[i][j] /= denom;
                    }
                denom = W[k][k];
            }
            __int128 det = sign >= 0 ? W[n - 1][n - 1] : -W[n - 1][n - 1];
            if (det == 0) return false;
            if (det < 0) det = -det;
            int v = 0;
            while (det % p == 0) { det /= p; ++v; }
            return v == t;
        }
        // exact fallback
        QMat B(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) B.at(i, j) = Rat(static_cast<long>(A[i][j]));
        Int det = B.det().get_num();
        if (det == 0) return false;
        return ord_p_int(det, p) == t;
    }

    // generator columns -> basis; returns false when not full rank
    bool reduce(long gen[24][8], int ngen, long basis[8][8]) const {
        bool used[24] = {};
        for (int row = 0; row < n; ++row) {
            int pick = -1;
            long bestv = 99;
            for (int j = 0; j < ngen; ++j) {
                if (used[j]) continue;
                long x = gen[j][row];
                if (x == 0) continue;
                long v = 0;
                while (x % p == 0) { x /= p; ++v; }
                if (v < bestv) { bestv = v; pick = j; }
            }
            if (pick < 0) return false;
            used[pick] = true;
            long piv = gen[pick][row];
            long unit = piv;
            long pv = 1;
            for (int s = 0; s < bestv; ++s) { unit /= p; pv *= p; }
            long f0 = uinv[unit];
            for (int r = 0; r < n; ++r) gen[pick][r] = gen[pick][r] * f0 % p3;
            for (int j = 0; j < ngen; ++j) {
                if (used[j] || gen[j][row] == 0) continue;
                long f = gen[j][row] / pv;
                for (int r = 0; r < n; ++r)
                    gen[j][r] = ((gen[j][r] - f * gen[pick][r]) % p3 + p3) % p3;
            }
            for (int r = 0; r < n; ++r) basis[row][r] = gen[pick][r];
        }
        return true;
    }
};

}  // namespace

std::vector<VertexLattice> enumerate_vertex_near(const Lattice& M, int radius,
                                                 unsigned long long budget) {
    if (radius != 1) throw InvalidInput("only radius 1 enumeration is supported");
    const long p = M.p();
    const int n = M.dim();
    unsigned long long size = vertex_window_size(n, p);
    if (size > budget)
        throw BudgetExceeded("window holds " + std::to_string(size) + " candidates, budget " +
                             std::to_string(budget));

    QMat gm = M.gram();
    WindowScanner sc;
    sc.n = n;
    sc.p = p;
    sc.p3 = p * p * p;
    sc.det_val_gm = padic_valuation(gm.det(), p);
    sc.uinv.assign(sc.p3, 0);
    for (long u = 1; u < sc.p3; ++u) {
        if (u % p == 0) continue;
        long a0 = u, m0 = sc.p3, x0 = 1, x1 = 0;
        while (m0) {
            long qq = a0 / m0;
            a0 -= qq * m0;
            std::swap(a0, m0);
            x0 -= qq * x1;
            std::swap(x0, x1);
        }
        sc.uinv[u] = ((x0 % sc.p3) + sc.p3) % sc.p3;
    }
    bool fast = false;
    long gmax = 0;
    for (int s = 0; s <= 1 && !fast; ++s) {
        fast = true;
        gmax = 0;
        sc.gscale = s;
        Rat scale = pow_rat(p, s);
        for (int i = 0; i < n && fast; ++i)
            for (int j = 0; j < n && fast; ++j) {
                Rat x = gm.at(i, j) * scale;
                if (x.get_den() != 1 || abs(x.get_num()) > 100000) fast = false;
                else {
                    sc.gmi[i][j] = x.get_num().get_si();
                    gmax = std::max(gmax, labs(sc.gmi[i][j]));
                }
            }
    }
    if (fast) {
        // Bareiss bound: n! * (n * p^4 * gmax)^n must fit comfortably in __int128
        long double bound = 1;
        long double entry =
            static_cast<long double>(n) * sc.p3 * sc.p3 / p * std::max(gmax, 1L);
        for (int i = 2; i <= n; ++i) bound *= i;
        for (int i = 0; i < n; ++i) bound *= entry;
        sc.i128_ok = bound < 1e37L;
    }

    std::vector<VertexLattice> out;
    std::vector<std::array<std::array<long, 8>, 8>> survivors;

    auto exact_check = [&](const long cols[8][8]) {
        QMat c(n, n);
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r) c.at(r, j) = Rat(cols[j][r]) / p;
        Lattice N(M.ambient(), M.basis() * c);
        if (!is_vertex(N)) {
            if (fast) throw InternalError("fast vertex filter disagreed with exact test");
            return;
        }
        out.push_back(VertexLattice{N, type_of(N)});
    };

    // enumerate pairs S <= T <= F_p^n with mixing maps phi: S -> F^n/T
    for (int b = 0; b <= n; ++b) {
        for_each_subspace(n, b, p, [&](const std::vector<std::vector<long>>& Trows,
                                       const std::vector<int>& Tpiv) {
            std::vector<bool> t_is_piv(n, false);
            for (int j : Tpiv) t_is_piv[j] = true;
            std::vector<int> comp;
            for (int j = 0; j < n; ++j)
                if (!t_is_piv[j]) comp.push_back(j);
            for (int a = 0; a <= b; ++a) {
                // determinant valuation preskip: a candidate from class (a, b)
                // has ord_p(det gram) = det_val_gm + 2(n - a - b); vertex
                // lattices need it in [-n, 0]
                {
                    long dv = sc.det_val_gm + 2 * (n - a - b);
                    if (dv < -n || dv > 0) continue;
                }
                for_each_subspace(b, a, p, [&](const std::vector<std::vector<long>>& Srel,
                                               const std::vector<int>&) {
                    long Srows[8][8] = {};
                    for (int i = 0; i < a; ++i)
                        for (int t = 0; t < b; ++t) {
                            if (!Srel[i][t]) continue;
                            for (int j = 0; j < n; ++j)
                                Srows[i][j] = (Srows[i][j] + Srel[i][t] * Trows[t][j]) % p;
                        }
                    int ncomp = static_cast<int>(comp.size());
                    int nfree = a * ncomp;
                    std::vector<long> phi(static_cast<size_t>(std::max(nfree, 1)), 0);
                    while (true) {
                        long gen[24][8];
                        int ngen = 0;
                        for (int i = 0; i < a; ++i, ++ngen)
                            for (int j = 0; j < n; ++j) gen[ngen][j] = Srows[i][j];
                        for (int i = 0; i < a; ++i)
                            for (int t = 0; t < ncomp; ++t)
                                gen[i][comp[t]] += p * phi[static_cast<size_t>(i) * ncomp + t];
                        for (int i = 0; i < b; ++i, ++ngen)
                            for (int j = 0; j < n; ++j) gen[ngen][j] = p * Trows[i][j];
                        for (int k = 0; k < n; ++k, ++ngen) {
                            for (int j = 0; j < n; ++j) gen[ngen][j] = 0;
                            gen[ngen][k] = p * p;
                        }
                        long basis[8][8];
                        if (sc.reduce(gen, ngen, basis)) {
                            if (!fast) {
                                exact_check(basis);
                            } else if (sc.vertex_candidate(basis)) {
                                std::array<std::array<long, 8>, 8> keep{};
                                for (int j = 0; j < n; ++j)
                                    for (int r = 0; r < n; ++r) keep[j][r] = basis[j][r];
                                survivors.push_back(keep);
                            }
                        }
                        if (nfree == 0) break;
                        int t = nfree - 1;
                        while (t >= 0 && phi[t] == p - 1) { phi[t] = 0; --t; }
                        if (t < 0) break;
                        ++phi[t];
                    }
                });
            }
        });
    }
    for (auto& keep : survivors) {
        long cols[8][8];
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r) cols[j][r] = keep[j][r];
        exact_check(cols);
    }
    std::sort(out.begin(), out.end(),
              [](const VertexLattice& x, const VertexLattice& y) { return x.lat < y.lat; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const VertexLattice& x, const VertexLattice& y) {
                              return x.lat == y.lat;
                          }),
              out.end());
    return out;
}

}  // namespace vlat
