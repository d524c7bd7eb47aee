#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vlat/fq.hpp"

namespace vlat {

// Dense matrix over one F_{p^k}.
class FqMat {
public:
    FqMat() = default;
    FqMat(const FqField* F, int rows, int cols)
        : F_(F), r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, FqElt::zero(F)) {}

    static FqMat identity(const FqField* F, int n);

    const FqField* field() const { return F_; }
    int rows() const { return r_; }
    int cols() const { return c_; }

    FqElt& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const FqElt& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    FqMat operator*(const FqMat& o) const;
    FqMat operator+(const FqMat& o) const;
    FqMat operator-(const FqMat& o) const;
    bool operator==(const FqMat& o) const;
    FqMat transpose() const;
    FqMat scaled(const FqElt& s) const;

    // Entrywise arithmetic Frobenius x -> x^p.
    FqMat frobenius() const;

    FqMat vstack(const FqMat& o) const;

    std::string str() const;

private:
    const FqField* F_ = nullptr;
    int r_ = 0, c_ = 0;
    std::vector<FqElt> a_;
};

// Reduced row echelon form; returns rank, records pivot columns if asked.
FqMat rref(FqMat m, int* rank_out, std::vector<int>* pivots_out = nullptr);

int rank_of(const FqMat& m);
FqElt det_of(FqMat m);
FqMat inverse_of(const FqMat& m);

// Basis of the right kernel {x : m x = 0}, returned as rows, in RREF.
FqMat right_kernel(const FqMat& m);

// Row-space operations; inputs and outputs are RREF row bases.
FqMat row_space(const FqMat& rows);
FqMat intersect_rows(const FqMat& a, const FqMat& b);
FqMat sum_rows(const FqMat& a, const FqMat& b);
bool rows_contain(const FqMat& space, const FqMat& sub);

// Characteristic polynomial, coefficients c_0..c_n of det(T I - M), via the
// principal-minor expansion (division-free; dimensions here are small).
std::vector<FqElt> char_poly(const FqMat& m);

// Base change F_p -> F_{p^k} (coefficient embedding) for matrices given over
// the prime field.
FqMat lift_matrix(const FqMat& m, const FqField* target);

}  // namespace vlat
