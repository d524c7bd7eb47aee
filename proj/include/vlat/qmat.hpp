#pragma once

#include <vector>

#include "vlat/rat.hpp"

namespace vlat {

// Dense matrix over the rationals; everything exact.
class QMat {
public:
    QMat() = default;
    QMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {}

    static QMat identity(int n);
    static QMat from_rows(const std::vector<std::vector<Rat>>& rows);
    static QMat col_vector(const std::vector<Rat>& v);

    int rows() const { return r_; }
    int cols() const { return c_; }

    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    QMat operator*(const QMat& o) const;
    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    QMat scaled(const Rat& s) const;
    bool operator==(const QMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    QMat transpose() const;
    Rat det() const;
    QMat inverse() const;  // throws InvalidInput on singular
    bool is_zero() const;
    bool is_symmetric() const;

    std::vector<Rat> col(int j) const;
    void set_col(int j, const std::vector<Rat>& v);
    QMat cols_slice(int j0, int j1) const;  // columns [j0, j1)
    QMat hstack(const QMat& o) const;

    std::string str() const;  // row-major debug/canonical key string

private:
    int r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

QMat mat_mul(const QMat& a, const QMat& b);

// Valuations of the elementary divisors over Z_(p) of a nonsingular square
// rational matrix, ascending.
std::vector<long> elementary_divisor_valuations(QMat a, long p);

// Column Hermite form over Z_(p).  Input: n x m (m >= n) whose Z_(p)-column
// span has full rank n.  Output: n x n lower triangular, diagonal p^{k_i},
// entries below each pivot canonically reduced mod p^{k_i} (residues with
// p-power denominators), so lattices compare equal iff their forms agree.
QMat chnf_local(const QMat& cols, long p);

// True when every entry has padic_valuation >= 0.
bool p_integral(const QMat& a, long p);

// Canonical residue of x mod p^k Z_(p): r with x - r in p^k Z_(p),
// r = c / p^s, 0 <= c < p^{k+s}, s = max(0, -ord_p(x)).
Rat canonical_residue(const Rat& x, long p, long k);

Rat pow_rat(long base, long expo);  // base^expo, expo may be negative

}  // namespace vlat
