#include "vlat/fppoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "vlat/rat.hpp"

namespace vlat {

void FqPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqPoly::FqPoly(const FqField* F, std::vector<FqElt> coeffs) : F_(F), c_(std::move(coeffs)) {
    trim();
}

FqPoly FqPoly::one(const FqField* F) { return FqPoly(F, {FqElt::one(F)}); }

FqPoly FqPoly::x(const FqField* F) { return FqPoly(F, {FqElt::zero(F), FqElt::one(F)}); }

FqPoly FqPoly::constant(const FqElt& c) { return FqPoly(c.field(), {c}); }

FqPoly FqPoly::from_longs(const FqField* F, const std::vector<long>& coeffs) {
    std::vector<FqElt> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.push_back(FqElt(F, v));
    return FqPoly(F, std::move(c));
}

bool FqPoly::is_one() const { return c_.size() == 1 && c_[0] == FqElt::one(F_); }

FqElt FqPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return FqElt::zero(F_);
    return c_[i];
}

FqElt FqPoly::lead() const {
    if (is_zero()) throw InvalidInput("leading coefficient of zero polynomial");
    return c_.back();
}

FqElt FqPoly::eval(const FqElt& x) const {
    FqElt acc = FqElt::zero(F_);
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
    std::vector<FqElt> c(std::max(c_.size(), o.c_.size()), FqElt::zero(F_));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < c_.size()) c[i] = c[i] + c_[i];
        if (i < o.c_.size()) c[i] = c[i] + o.c_[i];
    }
    return FqPoly(F_, std::move(c));
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
    std::vector<FqElt> c(std::max(c_.size(), o.c_.size()), FqElt::zero(F_));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < c_.size()) c[i] = c[i] + c_[i];
        if (i < o.c_.size()) c[i] = c[i] - o.c_[i];
    }
    return FqPoly(F_, std::move(c));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
    if (is_zero() || o.is_zero()) return FqPoly(F_);
    std::vector<FqElt> c(c_.size() + o.c_.size() - 1, FqElt::zero(F_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
    }
    return FqPoly(F_, std::move(c));
}

FqPoly FqPoly::scaled(const FqElt& s) const {
    std::vector<FqElt> c(c_);
    for (auto& x : c) x = x * s;
    return FqPoly(F_, std::move(c));
}

FqPoly FqPoly::monic() const {
    if (is_zero()) throw InvalidInput("monic of zero polynomial");
    return scaled(lead().inverse());
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& o) const {
    if (o.is_zero()) throw InvalidInput("polynomial division by zero");
    FqPoly rem(*this);
    if (rem.degree() < o.degree()) return {FqPoly(F_), rem};
    std::vector<FqElt> q(rem.degree() - o.degree() + 1, FqElt::zero(F_));
    FqElt linv = o.lead().inverse();
    while (!rem.is_zero() && rem.degree() >= o.degree()) {
        int shift = rem.degree() - o.degree();
        FqElt f = rem.lead() * linv;
        q[shift] = f;
        std::vector<FqElt> sub(rem.c_);
        for (int i = 0; i <= o.degree(); ++i) sub[shift + i] = sub[shift + i] - f * o.c_[i];
        rem = FqPoly(F_, std::move(sub));
    }
    return {FqPoly(F_, std::move(q)), rem};
}

FqPoly FqPoly::derivative() const {
    if (degree() < 1) return FqPoly(F_);
    std::vector<FqElt> c(c_.size() - 1, FqElt::zero(F_));
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * FqElt(F_, static_cast<long>(i));
    return FqPoly(F_, std::move(c));
}

FqPoly FqPoly::mulmod(const FqPoly& o, const FqPoly& mod) const { return (*this * o) % mod; }

FqPoly FqPoly::powmod(Int e, const FqPoly& mod) const {
    FqPoly acc = one(F_) % mod;
    FqPoly base = *this % mod;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = acc.mulmod(base, mod);
        base = base.mulmod(base, mod);
        e >>= 1;
    }
    return acc;
}

std::string FqPoly::str(const std::string& var) const {
    if (F_->k == 1) return fp_poly_str(*this, var);
    std::ostringstream os;
    os << '[';
    for (int i = 0; i <= degree(); ++i) os << c_[i].str() << (i == degree() ? "" : ",");
    os << ']';
    return os.str();
}

FqPoly poly_gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = a % b;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

bool poly_less(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        long ia = a.coeff(i).index(), ib = b.coeff(i).index();
        if (ia != ib) return ia < ib;
    }
    return false;
}

namespace {

// p-th root in F_{p^k}: x -> x^{p^{k-1}}.
FqElt pth_root(const FqElt& x) {
    FqElt r = x;
    for (int i = 0; i < x.field()->k - 1; ++i) r = r.frobenius();
    return r;
}

std::vector<std::pair<FqPoly, int>> squarefree_decomposition(FqPoly f) {
    // Yun-style over F_q with p-power descent.
    std::vector<std::pair<FqPoly, int>> out;  // (squarefree part, multiplicity)
    const FqField* F = f.field();
    long p = F->p;
    int pmult = 1;
    while (f.degree() > 0) {
        FqPoly d = f.derivative();
        if (d.is_zero()) {
            // f = g(T^p): take p-th root of coefficients
            std::vector<FqElt> c;
            for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
                c.push_back(pth_root(f.coeff(i)));
            f = FqPoly(F, std::move(c));
            pmult *= static_cast<int>(p);
            continue;
        }
        FqPoly g = poly_gcd(f, d);
        FqPoly w = f / g;
        int mult = 1;
        while (w.degree() > 0) {
            FqPoly y = poly_gcd(w, g);
            FqPoly part = w / y;
            if (part.degree() > 0) out.emplace_back(part.monic(), mult * pmult);
            w = y;
            g = g / y;
            ++mult;
        }
        f = g;
    }
    return out;
}

// trial elements for equal-degree splitting: a fixed LCG over base-q digits,
// so factorizations are reproducible.
FqPoly trial_poly(const FqField* F, int deg_bound, unsigned long long& state) {
    std::vector<FqElt> c(static_cast<size_t>(deg_bound), FqElt::zero(F));
    long q = F->order_long();
    for (auto& x : c) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x = FqElt::from_index(F, static_cast<long>((state >> 17) % static_cast<unsigned long long>(q)));
    }
    return FqPoly(F, std::move(c));
}

void equal_degree_split(const FqPoly& f, int d, std::vector<FqPoly>& out,
                        unsigned long long& state) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const FqField* F = f.field();
    Int q(F->order_long());
    Int e = 1;
    for (int i = 0; i < d; ++i) e *= q;
    e = (e - 1) / 2;
    while (true) {
        FqPoly a = trial_poly(F, f.degree(), state);
        if (a.degree() < 1) continue;
        FqPoly g = poly_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, out, state);
            equal_degree_split(f / g, d, out, state);
            return;
        }
        FqPoly b = a.powmod(e, f);
        b = b - FqPoly::one(F);
        g = poly_gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, out, state);
            equal_degree_split(f / g, d, out, state);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FqPoly, int>> factor_poly(const FqPoly& f) {
    if (f.is_zero()) throw InvalidInput("factoring the zero polynomial");
    const FqField* F = f.field();
    std::map<std::string, std::pair<FqPoly, int>> acc;
    auto add_factor = [&](const FqPoly& g, int mult) {
        std::string key = g.str();
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, std::make_pair(g, mult));
        else
            it->second.second += mult;
    };
    for (auto& [sqf, mult] : squarefree_decomposition(f.monic())) {
        // distinct-degree
        FqPoly rest = sqf;
        FqPoly xq = FqPoly::x(F);
        Int q(F->order_long());
        int d = 0;
        while (rest.degree() > 0) {
            ++d;
            if (2 * d > rest.degree()) {
                add_factor(rest.monic(), mult);
                break;
            }
            xq = xq.powmod(q, rest);
            FqPoly diff = xq - FqPoly::x(F);
            FqPoly g = poly_gcd(diff, rest);
            if (g.degree() > 0) {
                unsigned long long state = 0x9e3779b97f4a7c15ull;
                std::vector<FqPoly> irr;
                equal_degree_split(g, d, irr, state);
                for (auto& h : irr) add_factor(h, mult);
                rest = rest / g;
                xq = xq % rest;
            }
        }
    }
    std::vector<std::pair<FqPoly, int>> out;
    for (auto& [key, v] : acc) out.push_back(v);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

bool poly_is_irreducible(const FqPoly& f) {
    if (f.degree() < 1) return false;
    auto fac = factor_poly(f);
    return fac.size() == 1 && fac[0].second == 1;
}

FqPoly reciprocal_monic(const FqPoly& f) {
    const FqField* F = f.field();
    if (f.is_zero() || f.coeff(0).is_zero())
        throw InvalidInput("reciprocal needs nonzero constant term");
    std::vector<FqElt> c(f.coeffs());
    std::reverse(c.begin(), c.end());
    return FqPoly(F, std::move(c)).monic();
}

// ---- prime-field polynomial text I/O --------------------------------------

namespace {

struct PolyParser {
    const std::string& s;
    size_t pos = 0;
    const FqField* F;

    explicit PolyParser(const std::string& text, const FqField* field) : s(text), F(field) {}

    void skip_ws() {
        while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool peek_atom_start() {
        skip_ws();
        if (pos >= s.size()) return false;
        char c = s[pos];
        return c == '(' || c == 'T' || c == 't' || isdigit(static_cast<unsigned char>(c));
    }

    FqPoly parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek_is('+')) ++pos;
        else if (peek_is('-')) { ++pos; neg = true; }
        FqPoly acc = parse_term();
        if (neg) acc = acc.scaled(-FqElt::one(F));
        while (true) {
            skip_ws();
            if (peek_is('+')) {
                ++pos;
                acc = acc + parse_term();
            } else if (peek_is('-')) {
                ++pos;
                acc = acc - parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    FqPoly parse_term() {
        FqPoly acc = parse_atom();
        while (true) {
            skip_ws();
            if (peek_is('*')) { ++pos; acc = acc * parse_atom(); continue; }
            if (peek_atom_start()) { acc = acc * parse_atom(); continue; }
            break;
        }
        return acc;
    }

    FqPoly parse_atom() {
        FqPoly base = parse_base();
        skip_ws();
        if (peek_is('^')) {
            ++pos;
            long e = parse_uint();
            FqPoly acc = FqPoly::one(F);
            for (long i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    FqPoly parse_base() {
        skip_ws();
        if (pos >= s.size()) throw InvalidInput("unexpected end of polynomial");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            FqPoly inner = parse_expr();
            if (!peek_is(')')) throw InvalidInput("missing ')' in polynomial");
            ++pos;
            return inner;
        }
        if (c == 'T' || c == 't') {
            ++pos;
            return FqPoly::x(F);
        }
        if (isdigit(static_cast<unsigned char>(c))) {
            long v = parse_uint();
            return FqPoly::constant(FqElt(F, v));
        }
        throw InvalidInput(std::string("unexpected character in polynomial: ") + c);
    }

    long parse_uint() {
        skip_ws();
        if (pos >= s.size() || !isdigit(static_cast<unsigned char>(s[pos])))
            throw InvalidInput("expected integer in polynomial");
        long v = 0;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000) throw InvalidInput("integer too large in polynomial");
            ++pos;
        }
        return v;
    }
};

}  // namespace

FqPoly parse_fp_poly(const std::string& text, long p) {
    const FqField* F = FqField::get(p, 1);
    PolyParser parser(text, F);
    FqPoly f = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) throw InvalidInput("trailing characters in polynomial");
    return f;
}

std::string fp_poly_str(const FqPoly& f, const std::string& var) {
    if (f.field()->k != 1) throw InvalidInput("fp_poly_str expects a prime-field polynomial");
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        long c = f.coeff(i).index();
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c;
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

}  // namespace vlat
