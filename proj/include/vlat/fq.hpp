#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vlat/errors.hpp"

namespace vlat {

// F_{p^k} in a polynomial basis modulo a stored irreducible.  The modulus for
// (p,k) is the lexicographically least monic irreducible: candidates
// x^k + c_{k-1}x^{k-1} + ... + c_0 are scanned in increasing order of the
// base-p integer with digits (c_{k-1},...,c_0), so every run of the library
// works in the same model of the field.
// Inline coefficient storage bound; levels k beyond this are refused (the
// enumeration budgets would be blown long before such fields help anyway).
inline constexpr int kMaxExtensionDegree = 12;

struct FqField {
    long p = 0;
    int k = 1;
    std::vector<long> modulus;  // c_0..c_{k-1}; x^k = -(c_0 + c_1 x + ...)

    static const FqField* get(long p, int k);
    long order_long() const;  // p^k, throws if it would overflow a long
};

class FqElt {
public:
    FqElt() = default;
    FqElt(const FqField* F, long value);  // image of an integer
    static FqElt zero(const FqField* F) { return FqElt(F, 0); }
    static FqElt one(const FqField* F) { return FqElt(F, 1); }
    static FqElt gen(const FqField* F);  // class of x (k >= 2)
    static FqElt from_coeffs(const FqField* F, std::vector<long> c);

    const FqField* field() const { return F_; }
    std::vector<long> coeffs() const { return std::vector<long>(c_.begin(), c_.begin() + F_->k); }
    bool is_zero() const;
    bool operator==(const FqElt& o) const;
    bool operator!=(const FqElt& o) const { return !(*this == o); }

    FqElt operator+(const FqElt& o) const;
    FqElt operator-(const FqElt& o) const;
    FqElt operator-() const;
    FqElt operator*(const FqElt& o) const;
    FqElt inverse() const;
    FqElt operator/(const FqElt& o) const { return *this * o.inverse(); }
    FqElt pow(long long e) const;

    // x -> x^p, the arithmetic Frobenius; k-fold iterate is the identity.
    FqElt frobenius() const;

    // Index in [0, p^k): sum c_i p^i.  Total order used for canonical output.
    long index() const;
    static FqElt from_index(const FqField* F, long idx);

    std::string str() const;

private:
    const FqField* F_ = nullptr;
    std::array<long, kMaxExtensionDegree> c_{};  // entries in [0,p), zero-padded past k

    void check_same(const FqElt& o) const;
};

// Lift through the subfield F_p -> F_{p^k} (coefficient embedding).
FqElt embed_prime_field(const FqField* target, long a);

}  // namespace vlat
