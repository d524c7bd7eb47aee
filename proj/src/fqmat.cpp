#include "vlat/fqmat.hpp"

#include <algorithm>
#include <sstream>

namespace vlat {

FqMat FqMat::identity(const FqField* F, int n) {
    FqMat m(F, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = FqElt::one(F);
    return m;
}

FqMat FqMat::operator*(const FqMat& o) const {
    if (c_ != o.r_ || F_ != o.F_) throw InvalidInput("FqMat product mismatch");
    FqMat m(F_, r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const FqElt& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.c_; ++j) m.at(i, j) = m.at(i, j) + x * o.at(k, j);
        }
    return m;
}

FqMat FqMat::operator+(const FqMat& o) const {
    if (r_ != o.r_ || c_ != o.c_ || F_ != o.F_) throw InvalidInput("FqMat sum mismatch");
    FqMat m(F_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

FqMat FqMat::operator-(const FqMat& o) const {
    if (r_ != o.r_ || c_ != o.c_ || F_ != o.F_) throw InvalidInput("FqMat diff mismatch");
    FqMat m(F_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

bool FqMat::operator==(const FqMat& o) const {
    return F_ == o.F_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

FqMat FqMat::transpose() const {
    FqMat m(F_, c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

FqMat FqMat::scaled(const FqElt& s) const {
    FqMat m(F_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
    return m;
}

FqMat FqMat::frobenius() const {
    FqMat m(F_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i].frobenius();
    return m;
}

FqMat FqMat::vstack(const FqMat& o) const {
    if (o.r_ == 0) return *this;
    if (r_ == 0) return o;
    if (c_ != o.c_ || F_ != o.F_) throw InvalidInput("FqMat vstack mismatch");
    FqMat m(F_, r_ + o.r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    for (int i = 0; i < o.r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(r_ + i, j) = o.at(i, j);
    return m;
}

std::string FqMat::str() const {
    std::ostringstream os;
    os << r_ << 'x' << c_ << ':';
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) os << at(i, j).index() << (j + 1 == c_ ? ";" : ",");
    return os.str();
}

FqMat rref(FqMat m, int* rank_out, std::vector<int>* pivots_out) {
    int r = 0;
    std::vector<int> pivots;
    for (int j = 0; j < m.cols() && r < m.rows(); ++j) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, j).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int jj = 0; jj < m.cols(); ++jj) std::swap(m.at(piv, jj), m.at(r, jj));
        FqElt inv = m.at(r, j).inverse();
        for (int jj = 0; jj < m.cols(); ++jj) m.at(r, jj) = m.at(r, jj) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, j).is_zero()) continue;
            FqElt f = m.at(i, j);
            for (int jj = 0; jj < m.cols(); ++jj)
                m.at(i, jj) = m.at(i, jj) - f * m.at(r, jj);
        }
        pivots.push_back(j);
        ++r;
    }
    if (rank_out) *rank_out = r;
    if (pivots_out) *pivots_out = pivots;
    // drop zero rows
    FqMat out(m.field(), r, m.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
    return out;
}

int rank_of(const FqMat& m) {
    int r = 0;
    rref(m, &r);
    return r;
}

FqElt det_of(FqMat m) {
    if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square FqMat");
    const FqField* F = m.field();
    FqElt d = FqElt::one(F);
    int n = m.rows();
    for (int j = 0; j < n; ++j) {
        int piv = -1;
        for (int i = j; i < n; ++i)
            if (!m.at(i, j).is_zero()) { piv = i; break; }
        if (piv < 0) return FqElt::zero(F);
        if (piv != j) {
            for (int jj = 0; jj < n; ++jj) std::swap(m.at(piv, jj), m.at(j, jj));
            d = -d;
        }
        d = d * m.at(j, j);
        FqElt inv = m.at(j, j).inverse();
        for (int i = j + 1; i < n; ++i) {
            if (m.at(i, j).is_zero()) continue;
            FqElt f = m.at(i, j) * inv;
            for (int jj = j; jj < n; ++jj) m.at(i, jj) = m.at(i, jj) - f * m.at(j, jj);
        }
    }
    return d;
}

FqMat inverse_of(const FqMat& m) {
    if (m.rows() != m.cols()) throw InvalidInput("inverse of non-square FqMat");
    int n = m.rows();
    FqMat aug = m;
    FqMat id = FqMat::identity(m.field(), n);
    // augmented RREF
    FqMat wide(m.field(), n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            wide.at(i, j) = aug.at(i, j);
            wide.at(i, n + j) = id.at(i, j);
        }
    int r = 0;
    wide = rref(std::move(wide), &r);
    if (r < n) throw InvalidInput("singular FqMat");
    FqMat out(m.field(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = wide.at(i, n + j);
    return out;
}

FqMat right_kernel(const FqMat& m) {
    int rank = 0;
    std::vector<int> piv;
    FqMat e = rref(m, &rank, &piv);
    const FqField* F = m.field();
    int n = m.cols();
    std::vector<bool> is_piv(n, false);
    for (int j : piv) is_piv[j] = true;
    FqMat ker(F, n - rank, n);
    int row = 0;
    for (int j = 0; j < n; ++j) {
        if (is_piv[j]) continue;
        ker.at(row, j) = FqElt::one(F);
        for (int i = 0; i < rank; ++i) ker.at(row, piv[i]) = -e.at(i, j);
        ++row;
    }
    int kr = 0;
    return rref(std::move(ker), &kr);
}

FqMat row_space(const FqMat& rows) {
    int r = 0;
    return rref(rows, &r);
}

FqMat sum_rows(const FqMat& a, const FqMat& b) {
    if (a.rows() == 0) return row_space(b);
    if (b.rows() == 0) return row_space(a);
    return row_space(a.vstack(b));
}

FqMat intersect_rows(const FqMat& a, const FqMat& b) {
    const FqField* F = a.field();
    if (a.rows() == 0 || b.rows() == 0) return FqMat(F, 0, a.cols());
    // (alpha, beta) with alpha A = beta B: left kernel of stacked [A; -B].
    FqMat stacked = a.vstack(b.scaled(-FqElt::one(F)));
    FqMat lk = right_kernel(stacked.transpose());
    FqMat result(F, lk.rows(), a.cols());
    for (int i = 0; i < lk.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            FqElt acc = FqElt::zero(F);
            for (int t = 0; t < a.rows(); ++t) acc = acc + lk.at(i, t) * a.at(t, j);
            result.at(i, j) = acc;
        }
    return row_space(result);
}

bool rows_contain(const FqMat& space, const FqMat& sub) {
    if (sub.rows() == 0) return true;
    FqMat s = sum_rows(space, sub);
    return s.rows() == row_space(space).rows();
}

std::vector<FqElt> char_poly(const FqMat& m) {
    if (m.rows() != m.cols()) throw InvalidInput("char_poly of non-square FqMat");
    const FqField* F = m.field();
    int n = m.rows();
    // det(T I - M): coefficient of T^{n-j} is (-1)^j e_j with e_j the sum of
    // principal j x j minors of M.
    std::vector<FqElt> coeff(n + 1, FqElt::zero(F));
    coeff[n] = FqElt::one(F);
    for (int j = 1; j <= n; ++j) {
        FqElt ej = FqElt::zero(F);
        std::vector<int> idx(j);
        for (int i = 0; i < j; ++i) idx[i] = i;
        while (true) {
            FqMat minor(F, j, j);
            for (int a = 0; a < j; ++a)
                for (int b = 0; b < j; ++b) minor.at(a, b) = m.at(idx[a], idx[b]);
            ej = ej + det_of(minor);
            int t = j - 1;
            while (t >= 0 && idx[t] == n - j + t) --t;
            if (t < 0) break;
            ++idx[t];
            for (int s = t + 1; s < j; ++s) idx[s] = idx[s - 1] + 1;
        }
        FqElt sign = (j % 2 == 0) ? FqElt::one(F) : -FqElt::one(F);
        coeff[n - j] = sign * ej;
    }
    return coeff;
}

FqMat lift_matrix(const FqMat& m, const FqField* target) {
    if (m.field()->k != 1) throw InvalidInput("lift_matrix expects a prime-field matrix");
    if (m.field()->p != target->p) throw InvalidInput("lift_matrix characteristic mismatch");
    FqMat out(target, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out.at(i, j) = embed_prime_field(target, m.at(i, j).coeffs()[0]);
    return out;
}

}  // namespace vlat
