#include "vlat/rat.hpp"

namespace vlat {

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty rational literal");
    try {
        Rat q(s);
        if (q.get_den() == 0) throw InvalidInput("rational with zero denominator: " + s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InvalidInput("bad rational literal: " + s);
    }
}

std::string rat_str(const Rat& x) {
    return x.get_str();
}

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void require_odd_prime(long p) {
    if (!is_odd_prime(p)) throw InvalidInput("p must be an odd prime, got " + std::to_string(p));
}

long ord_p_int(const Int& n, long p) {
    if (n == 0) throw InternalError("ord_p_int of zero");
    Int m = abs(n);
    long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

long padic_valuation(const Rat& x, long p) {
    require_odd_prime(p);
    if (x == 0) return kValInfinity;
    return ord_p_int(x.get_num(), p) - ord_p_int(x.get_den(), p);
}

Rat unit_part(const Rat& x, long p) {
    if (x == 0) throw InvalidInput("unit_part of zero");
    long v = padic_valuation(x, p);
    Rat pw(1);
    Rat pr(p);
    for (long i = 0; i < (v >= 0 ? v : -v); ++i) pw *= pr;
    Rat res = (v >= 0) ? Rat(x / pw) : Rat(x * pw);
    res.canonicalize();
    return res;
}

long mod_p(const Rat& x, long p) {
    if (x == 0) return 0;
    if (padic_valuation(x, p) < 0) throw InvalidInput("mod_p of rational with negative valuation");
    Int num = x.get_num(), den = x.get_den();
    Int pm(p);
    Int n = num % pm;
    if (n < 0) n += pm;
    Int d = den % pm;
    if (d < 0) d += pm;
    // den is prime to p here
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pm.get_mpz_t()) == 0)
        throw InternalError("mod_p: denominator not invertible");
    Int r = (n * dinv) % pm;
    return r.get_si();
}

int legendre(long a, long p) {
    require_odd_prime(p);
    long r = a % p;
    if (r < 0) r += p;
    if (r == 0) throw InvalidInput("legendre of non-unit");
    // Euler's criterion; p is small so repeated squaring over long is safe.
    long e = (p - 1) / 2;
    long base = r, acc = 1;
    while (e) {
        if (e & 1) acc = (acc * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return acc == 1 ? +1 : -1;
}

int legendre_unit(const Rat& a, long p) {
    if (padic_valuation(a, p) != 0) throw InvalidInput("legendre_unit needs a p-adic unit");
    return legendre(mod_p(a, p), p);
}

long least_nonresidue(long p) {
    for (long u = 2; u < p; ++u)
        if (legendre(u, p) == -1) return u;
    throw InternalError("no non-residue found");
}

}  // namespace vlat
