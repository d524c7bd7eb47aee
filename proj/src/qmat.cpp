#include "vlat/qmat.hpp"

#include <algorithm>
#include <sstream>

namespace vlat {

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return QMat();
    QMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols())
            throw InvalidInput("ragged matrix literal");
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QMat QMat::col_vector(const std::vector<Rat>& v) {
    QMat m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.at(static_cast<int>(i), 0) = v[i];
    return m;
}

QMat QMat::operator*(const QMat& o) const {
    if (c_ != o.r_) throw InvalidInput("matrix product shape mismatch");
    QMat m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.c_; ++j) m.at(i, j) += x * o.at(k, j);
        }
    return m;
}

QMat QMat::operator+(const QMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw InvalidInput("matrix sum shape mismatch");
    QMat m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

QMat QMat::operator-(const QMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw InvalidInput("matrix difference shape mismatch");
    QMat m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

QMat QMat::scaled(const Rat& s) const {
    QMat m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
    return m;
}

QMat QMat::transpose() const {
    QMat m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Rat QMat::det() const {
    if (r_ != c_) throw InvalidInput("determinant of non-square matrix");
    QMat w(*this);
    int n = r_;
    Rat d(1);
    for (int i = 0; i < n; ++i) {
        int piv = -1;
        for (int r = i; r < n; ++r)
            if (w.at(r, i) != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != i) {
            for (int j = i; j < n; ++j) std::swap(w.at(piv, j), w.at(i, j));
            d = -d;
        }
        d *= w.at(i, i);
        Rat inv = Rat(1) / w.at(i, i);
        for (int r = i + 1; r < n; ++r) {
            if (w.at(r, i) == 0) continue;
            Rat f = w.at(r, i) * inv;
            for (int j = i; j < n; ++j) w.at(r, j) -= f * w.at(i, j);
        }
    }
    return d;
}

QMat QMat::inverse() const {
    if (r_ != c_) throw InvalidInput("inverse of non-square matrix");
    int n = r_;
    QMat w(*this);
    QMat inv = identity(n);
    for (int i = 0; i < n; ++i) {
        int piv = -1;
        for (int r = i; r < n; ++r)
            if (w.at(r, i) != 0) { piv = r; break; }
        if (piv < 0) throw InvalidInput("singular matrix");
        if (piv != i)
            for (int j = 0; j < n; ++j) {
                std::swap(w.at(piv, j), w.at(i, j));
                std::swap(inv.at(piv, j), inv.at(i, j));
            }
        Rat f = Rat(1) / w.at(i, i);
        for (int j = 0; j < n; ++j) {
            w.at(i, j) *= f;
            inv.at(i, j) *= f;
        }
        for (int r = 0; r < n; ++r) {
            if (r == i || w.at(r, i) == 0) continue;
            Rat g = w.at(r, i);
            for (int j = 0; j < n; ++j) {
                w.at(r, j) -= g * w.at(i, j);
                inv.at(r, j) -= g * inv.at(i, j);
            }
        }
    }
    return inv;
}

bool QMat::is_zero() const {
    for (const Rat& x : a_)
        if (x != 0) return false;
    return true;
}

bool QMat::is_symmetric() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < c_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

std::vector<Rat> QMat::col(int j) const {
    std::vector<Rat> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = at(i, j);
    return v;
}

void QMat::set_col(int j, const std::vector<Rat>& v) {
    for (int i = 0; i < r_; ++i) at(i, j) = v[i];
}

QMat QMat::cols_slice(int j0, int j1) const {
    QMat m(r_, j1 - j0);
    for (int i = 0; i < r_; ++i)
        for (int j = j0; j < j1; ++j) m.at(i, j - j0) = at(i, j);
    return m;
}

QMat QMat::hstack(const QMat& o) const {
    if (r_ != o.r_) throw InvalidInput("hstack shape mismatch");
    QMat m(r_, c_ + o.c_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
        for (int j = 0; j < o.c_; ++j) m.at(i, c_ + j) = o.at(i, j);
    }
    return m;
}

std::string QMat::str() const {
    std::ostringstream os;
    os << r_ << 'x' << c_ << ':';
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) os << at(i, j).get_str() << (j + 1 == c_ ? ";" : ",");
    return os.str();
}

QMat mat_mul(const QMat& a, const QMat& b) { return a * b; }

Rat pow_rat(long base, long expo) {
    Rat b(base);
    Rat acc(1);
    long e = expo >= 0 ? expo : -expo;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    if (expo < 0) acc = 1 / acc;
    return acc;
}

std::vector<long> elementary_divisor_valuations(QMat a, long p) {
    if (a.rows() != a.cols()) throw InvalidInput("elementary divisors of non-square matrix");
    int n = a.rows();
    std::vector<long> vals;
    // Smith reduction over Z_(p): pick minimal-valuation pivot, clear its row
    // and column; only valuations are recorded.
    std::vector<int> live_r, live_c;
    for (int i = 0; i < n; ++i) { live_r.push_back(i); live_c.push_back(i); }
    while (!live_r.empty()) {
        long best = kValInfinity;
        int bi = -1, bj = -1;
        for (int i : live_r)
            for (int j : live_c) {
                if (a.at(i, j) == 0) continue;
                long v = padic_valuation(a.at(i, j), p);
                if (v < best) { best = v; bi = i; bj = j; }
            }
        if (bi < 0) throw InvalidInput("singular matrix in elementary divisor computation");
        vals.push_back(best);
        Rat piv = a.at(bi, bj);
        for (int i : live_r) {
            if (i == bi || a.at(i, bj) == 0) continue;
            Rat f = a.at(i, bj) / piv;
            for (int j : live_c) a.at(i, j) -= f * a.at(bi, j);
        }
        for (int j : live_c) {
            if (j == bj || a.at(bi, j) == 0) continue;
            Rat f = a.at(bi, j) / piv;
            for (int i : live_r) a.at(i, j) -= f * a.at(i, bj);
        }
        live_r.erase(std::find(live_r.begin(), live_r.end(), bi));
        live_c.erase(std::find(live_c.begin(), live_c.end(), bj));
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

Rat canonical_residue(const Rat& x, long p, long k) {
    if (x == 0) return Rat(0);
    long v = padic_valuation(x, p);
    if (v >= k) return Rat(0);
    long s = std::max(0L, -v);
    // x * p^s is p-integral; reduce mod p^{k+s}, then divide back.
    Rat scaled = x * pow_rat(p, s);
    Int pk(1);
    for (long i = 0; i < k + s; ++i) pk *= p;
    // scaled = num/den with den prime to p; represent mod p^{k+s}
    Int num = scaled.get_num(), den = scaled.get_den();
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw InternalError("canonical_residue: denominator not prime to p");
    Int c = (num % pk) * dinv % pk;
    if (c < 0) c += pk;
    Rat r = Rat(c) / pow_rat(p, s);
    r.canonicalize();
    return r;
}

bool p_integral(const QMat& a, long p) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0 && padic_valuation(a.at(i, j), p) < 0) return false;
    return true;
}

QMat chnf_local(const QMat& cols, long p) {
    int n = cols.rows(), m = cols.cols();
    if (m < n) throw InvalidInput("chnf_local: not enough columns for full rank");
    QMat w(cols);
    // Phase 1: triangularize.  Pivot for row i = remaining column of minimal
    // valuation at row i (first such column on ties).
    for (int i = 0; i < n; ++i) {
        long best = kValInfinity;
        int bj = -1;
        for (int j = i; j < m; ++j) {
            if (w.at(i, j) == 0) continue;
            long v = padic_valuation(w.at(i, j), p);
            if (v < best) { best = v; bj = j; }
        }
        if (bj < 0) throw InvalidInput("chnf_local: column span not full rank");
        if (bj != i)
            for (int r = 0; r < n; ++r) std::swap(w.at(r, i), w.at(r, bj));
        // scale column i by the unit p^best / pivot
        Rat scale = pow_rat(p, best) / w.at(i, i);
        for (int r = 0; r < n; ++r) w.at(r, i) *= scale;
        // clear row i in all other columns
        Rat piv = w.at(i, i);
        for (int j = 0; j < m; ++j) {
            if (j == i || w.at(i, j) == 0) continue;
            if (j < i) continue;  // left columns already have zero at this row
            Rat f = w.at(i, j) / piv;
            for (int r = 0; r < n; ++r) w.at(r, j) -= f * w.at(r, i);
        }
    }
    QMat h = w.cols_slice(0, n);
    // Phase 2: reduce sub-diagonal entries in each column, top-down so a pass
    // settles the column.
    std::vector<long> kexp(n);
    for (int i = 0; i < n; ++i) kexp[i] = padic_valuation(h.at(i, i), p);
    for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) {
            if (h.at(i, j) == 0) continue;
            Rat r = canonical_residue(h.at(i, j), p, kexp[i]);
            Rat qq = (h.at(i, j) - r) / h.at(i, i);
            if (qq == 0) continue;
            for (int rr = 0; rr < n; ++rr) h.at(rr, j) -= qq * h.at(rr, i);
        }
    }
    return h;
}

}  // namespace vlat
