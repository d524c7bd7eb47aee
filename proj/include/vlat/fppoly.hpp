#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vlat/fq.hpp"
#include "vlat/rat.hpp"

namespace vlat {

// Univariate polynomials over F_{p^k}; coefficients c_0..c_d.
class FqPoly {
public:
    FqPoly() = default;
    explicit FqPoly(const FqField* F) : F_(F) {}
    FqPoly(const FqField* F, std::vector<FqElt> coeffs);
    static FqPoly zero(const FqField* F) { return FqPoly(F); }
    static FqPoly one(const FqField* F);
    static FqPoly x(const FqField* F);
    static FqPoly constant(const FqElt& c);
    static FqPoly from_longs(const FqField* F, const std::vector<long>& coeffs);

    const FqField* field() const { return F_; }
    const std::vector<FqElt>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    FqElt coeff(int i) const;
    FqElt lead() const;
    FqElt eval(const FqElt& x) const;

    bool operator==(const FqPoly& o) const { return F_ == o.F_ && c_ == o.c_; }
    bool operator!=(const FqPoly& o) const { return !(*this == o); }

    FqPoly operator+(const FqPoly& o) const;
    FqPoly operator-(const FqPoly& o) const;
    FqPoly operator*(const FqPoly& o) const;
    FqPoly scaled(const FqElt& s) const;
    FqPoly monic() const;

    // Euclidean division; o must be nonzero.
    std::pair<FqPoly, FqPoly> divmod(const FqPoly& o) const;
    FqPoly operator%(const FqPoly& o) const { return divmod(o).second; }
    FqPoly operator/(const FqPoly& o) const { return divmod(o).first; }

    FqPoly derivative() const;
    FqPoly powmod(Int e, const FqPoly& mod) const;
    FqPoly mulmod(const FqPoly& o, const FqPoly& mod) const;

    std::string str(const std::string& var = "T") const;

private:
    const FqField* F_ = nullptr;
    std::vector<FqElt> c_;
    void trim();
};

FqPoly poly_gcd(FqPoly a, FqPoly b);

// Monic irreducible factorization: squarefree split, distinct-degree split,
// then equal-degree split with a deterministic sequence of trial elements, so
// the factor list is the same on every run.  Returns (factor, multiplicity)
// sorted canonically.
std::vector<std::pair<FqPoly, int>> factor_poly(const FqPoly& f);

bool poly_is_irreducible(const FqPoly& f);

// Canonical ordering key (degree, then coefficient indices low to high).
bool poly_less(const FqPoly& a, const FqPoly& b);

// T^deg(f) * f(1/T), made monic; f(0) must be nonzero.
FqPoly reciprocal_monic(const FqPoly& f);

// ---- prime-field polynomial text I/O (the CLI grammar) -------------------
//
//   expr   := term (('+'|'-') term)*
//   term   := atom+                      (juxtaposition multiplies)
//   atom   := base ('^' uint)?
//   base   := '(' expr ')' | 'T' | uint
//
// Coefficients are reduced mod p.
FqPoly parse_fp_poly(const std::string& text, long p);
std::string fp_poly_str(const FqPoly& f, const std::string& var = "T");

}  // namespace vlat
