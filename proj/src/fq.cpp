#include "vlat/fq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "vlat/rat.hpp"

namespace vlat {

namespace {

// Dense polynomials over F_p with long coefficients, used only to find and
// store the modulus; general F_q polynomial arithmetic lives in fppoly.
using Poly = std::vector<long>;  // c_0..c_d, c_d != 0 unless empty

long norm_mod(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, long p) {
    // m monic
    trim(a);
    while (a.size() >= m.size()) {
        long c = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[shift + i] = norm_mod(a[shift + i] - c * m[i], p);
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, long p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = norm_mod(c[i + j] + a[i] * b[j], p);
    return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly base, Int e, const Poly& m, long p) {
    Poly acc{1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = poly_mulmod(acc, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return acc;
}

Poly poly_gcd(Poly a, Poly b, long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic
        long inv = 1;
        {
            long lead = b.back(), e = p - 2, base = lead, acc = 1;
            while (e) {
                if (e & 1) acc = (acc * base) % p;
                base = (base * base) % p;
                e >>= 1;
            }
            inv = acc;
        }
        Poly bm(b);
        for (long& x : bm) x = norm_mod(x * inv, p);
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const Poly& m, long p) {
    // m monic of degree k: irreducible iff x^{p^k} == x (mod m) and
    // gcd(x^{p^{k/q}} - x, m) = 1 for each prime q | k.
    int k = static_cast<int>(m.size()) - 1;
    Poly x{0, 1};
    Int pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    Poly xq = poly_powmod(x, pk, m, p);
    Poly diff(xq);
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = norm_mod(diff[1] - 1, p);
    trim(diff);
    if (!diff.empty()) return false;
    for (int q = 2; q <= k; ++q) {
        if (k % q != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) { prime = false; break; }
        if (!prime) continue;
        Int pe = 1;
        for (int i = 0; i < k / q; ++i) pe *= p;
        Poly xe = poly_powmod(x, pe, m, p);
        Poly dd(xe);
        if (dd.size() < 2) dd.resize(2, 0);
        dd[1] = norm_mod(dd[1] - 1, p);
        trim(dd);
        Poly g = poly_gcd(dd, m, p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<long> find_modulus(long p, int k) {
    if (k == 1) return {};  // prime field, no modulus needed
    // scan lexicographically: integer n encodes digits c_{k-1}..c_0
    long bound = 1;
    for (int i = 0; i < k; ++i) bound *= p;
    for (long n = 0; n < bound; ++n) {
        Poly m(k + 1, 0);
        m[k] = 1;
        long t = n;
        for (int i = 0; i < k; ++i) {
            m[i] = t % p;
            t /= p;
        }
        if (is_irreducible(m, p)) {
            std::vector<long> c(m.begin(), m.begin() + k);
            return c;
        }
    }
    throw InternalError("no irreducible modulus found");
}

}  // namespace

const FqField* FqField::get(long p, int k) {
    require_odd_prime(p);
    if (k < 1 || k > kMaxExtensionDegree)
        throw InvalidInput("extension degree out of range");
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::unique_ptr<FqField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.get();
    auto F = std::make_unique<FqField>();
    F->p = p;
    F->k = k;
    F->modulus = find_modulus(p, k);
    const FqField* ptr = F.get();
    cache.emplace(key, std::move(F));
    return ptr;
}

long FqField::order_long() const {
    long acc = 1;
    for (int i = 0; i < k; ++i) {
        if (acc > (1L << 60) / p) throw BudgetExceeded("field order exceeds long range");
        acc *= p;
    }
    return acc;
}

FqElt::FqElt(const FqField* F, long value) : F_(F) {
    c_[0] = norm_mod(value, F->p);
}

FqElt FqElt::gen(const FqField* F) {
    if (F->k < 2) throw InvalidInput("prime field has no polynomial generator");
    FqElt x(F, 0);
    x.c_[1] = 1;
    return x;
}

FqElt FqElt::from_coeffs(const FqField* F, std::vector<long> c) {
    if (static_cast<int>(c.size()) > F->k) throw InvalidInput("too many coefficients");
    FqElt x(F, 0);
    for (size_t i = 0; i < c.size(); ++i) x.c_[i] = norm_mod(c[i], F->p);
    return x;
}

bool FqElt::is_zero() const {
    for (int i = 0; i < F_->k; ++i)
        if (c_[i]) return false;
    return true;
}

bool FqElt::operator==(const FqElt& o) const { return F_ == o.F_ && c_ == o.c_; }

void FqElt::check_same(const FqElt& o) const {
    if (F_ != o.F_) throw InvalidInput("mixing elements of different fields");
}

FqElt FqElt::operator+(const FqElt& o) const {
    check_same(o);
    FqElt r(*this);
    for (int i = 0; i < F_->k; ++i) r.c_[i] = norm_mod(r.c_[i] + o.c_[i], F_->p);
    return r;
}

FqElt FqElt::operator-(const FqElt& o) const {
    check_same(o);
    FqElt r(*this);
    for (int i = 0; i < F_->k; ++i) r.c_[i] = norm_mod(r.c_[i] - o.c_[i], F_->p);
    return r;
}

FqElt FqElt::operator-() const {
    FqElt r(*this);
    for (int i = 0; i < F_->k; ++i) r.c_[i] = norm_mod(-r.c_[i], F_->p);
    return r;
}

FqElt FqElt::operator*(const FqElt& o) const {
    check_same(o);
    const long p = F_->p;
    const int k = F_->k;
    if (k == 1) {
        FqElt r(F_, 0);
        r.c_[0] = norm_mod(c_[0] * o.c_[0], p);
        return r;
    }
    long prod[2 * kMaxExtensionDegree - 1] = {};
    for (int i = 0; i < k; ++i) {
        if (!c_[i]) continue;
        for (int j = 0; j < k; ++j) prod[i + j] = norm_mod(prod[i + j] + c_[i] * o.c_[j], p);
    }
    // reduce by x^k = -modulus tail
    for (int d = 2 * k - 2; d >= k; --d) {
        long v = prod[d];
        if (!v) continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i)
            prod[d - k + i] = norm_mod(prod[d - k + i] - v * F_->modulus[i], p);
    }
    FqElt r(F_, 0);
    for (int i = 0; i < k; ++i) r.c_[i] = prod[i];
    return r;
}

FqElt FqElt::pow(long long e) const {
    if (is_zero()) {
        if (e == 0) return one(F_);
        if (e < 0) throw InvalidInput("negative power of zero");
        return zero(F_);
    }
    long long m = static_cast<long long>(F_->order_long()) - 1;
    long long r = e % m;
    if (r < 0) r += m;
    FqElt base(*this), acc = one(F_);
    while (r) {
        if (r & 1) acc = acc * base;
        base = base * base;
        r >>= 1;
    }
    return acc;
}

FqElt FqElt::inverse() const {
    if (is_zero()) throw InvalidInput("inverse of zero");
    return pow(static_cast<long long>(F_->order_long()) - 2);
}

FqElt FqElt::frobenius() const { return pow(F_->p); }

long FqElt::index() const {
    long acc = 0;
    for (int i = F_->k - 1; i >= 0; --i) acc = acc * F_->p + c_[i];
    return acc;
}

FqElt FqElt::from_index(const FqField* F, long idx) {
    FqElt x(F, 0);
    for (int i = 0; i < F->k; ++i) {
        x.c_[i] = idx % F->p;
        idx /= F->p;
    }
    if (idx != 0) throw InvalidInput("field element index out of range");
    return x;
}

std::string FqElt::str() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < F_->k; ++i) os << c_[i] << (i + 1 == F_->k ? "" : ",");
    os << ']';
    return os.str();
}

FqElt embed_prime_field(const FqField* target, long a) { return FqElt(target, a); }

}  // namespace vlat
