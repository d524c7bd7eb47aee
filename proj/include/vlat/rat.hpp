#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

#include "vlat/errors.hpp"

namespace vlat {

// Exact rationals everywhere; no floating point in the library.
using Rat = mpq_class;
using Int = mpz_class;

// Sentinel for ord_p(0).
inline constexpr long kValInfinity = std::numeric_limits<long>::max();

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "a", "a/b", optional sign, arbitrary precision.
Rat rat_parse(const std::string& s);

std::string rat_str(const Rat& x);

bool is_odd_prime(long p);
void require_odd_prime(long p);

// ord_p on nonzero integers.
long ord_p_int(const Int& n, long p);

// ord_p on rationals, ord_p(p) = 1, ord_p(0) = kValInfinity.
long padic_valuation(const Rat& x, long p);

// x / p^ord_p(x); x must be nonzero.
Rat unit_part(const Rat& x, long p);

// Residue in [0,p) of a rational with padic_valuation >= 0.
long mod_p(const Rat& x, long p);

// Legendre symbol of a unit mod p, in {+1,-1}.
int legendre(long a, long p);
int legendre_unit(const Rat& a, long p);

// Least positive quadratic non-residue mod p.
long least_nonresidue(long p);

}  // namespace vlat
