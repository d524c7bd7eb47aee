#include "vlat/clifford.hpp"

#include <algorithm>
#include <bit>

namespace vlat {

CliffordElt::CliffordElt(const QuadSpace& space) : space_(space) {
    if (space_.dim() > 8) throw InvalidInput("Clifford algebra capped at dimension 8");
}

CliffordElt CliffordElt::scalar(const QuadSpace& space, const Rat& c) {
    CliffordElt e(space);
    e.add_term(0, c);
    return e;
}

CliffordElt CliffordElt::generator(const QuadSpace& space, int i) {
    if (i < 0 || i >= space.dim()) throw InvalidInput("generator index out of range");
    CliffordElt e(space);
    e.add_term(static_cast<uint16_t>(1u << i), Rat(1));
    return e;
}

CliffordElt CliffordElt::monomial(const QuadSpace& space, uint16_t mask, const Rat& c) {
    if (mask >= (1u << space.dim())) throw InvalidInput("monomial mask out of range");
    CliffordElt e(space);
    e.add_term(mask, c);
    return e;
}

CliffordElt CliffordElt::from_vector(const QuadSpace& space, const std::vector<Rat>& v) {
    if (static_cast<int>(v.size()) != space.dim()) throw InvalidInput("vector dimension mismatch");
    CliffordElt e(space);
    for (int i = 0; i < space.dim(); ++i) e.add_term(static_cast<uint16_t>(1u << i), v[i]);
    return e;
}

Rat CliffordElt::coeff(uint16_t mask) const {
    auto it = coeff_.find(mask);
    return it == coeff_.end() ? Rat(0) : it->second;
}

bool CliffordElt::operator==(const CliffordElt& o) const {
    return space_.gram == o.space_.gram && coeff_ == o.coeff_;
}

void CliffordElt::add_term(uint16_t mask, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = coeff_.emplace(mask, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeff_.erase(it);
    }
}

void CliffordElt::check_same(const CliffordElt& o) const {
    if (!(space_.gram == o.space_.gram) || space_.p != o.space_.p)
        throw InvalidInput("Clifford elements from different spaces");
}

CliffordElt CliffordElt::operator+(const CliffordElt& o) const {
    check_same(o);
    CliffordElt r(*this);
    for (auto& [m, c] : o.coeff_) r.add_term(m, c);
    return r;
}

CliffordElt CliffordElt::operator-(const CliffordElt& o) const {
    check_same(o);
    CliffordElt r(*this);
    for (auto& [m, c] : o.coeff_) r.add_term(m, -c);
    return r;
}

CliffordElt CliffordElt::scaled(const Rat& c) const {
    CliffordElt r(space_);
    if (c == 0) return r;
    for (auto& [m, x] : coeff_) r.coeff_.emplace(m, x * c);
    return r;
}

namespace {

// monomial * generator: e_S * e_k expanded by the rewriting rules, appended
// into out with coefficient c.
void mul_mono_gen(const QuadSpace& sp, uint16_t mask, int k, const Rat& c, CliffordElt& out) {
    // indices in S greater than k must hop over e_k
    uint16_t higher = static_cast<uint16_t>(mask & ~((1u << (k + 1)) - 1));
    if (higher == 0) {
        if (mask & (1u << k)) {
            // e_k e_k = Q(e_k)
            Rat q = sp.gram.at(k, k) / 2;
            out.add_term(static_cast<uint16_t>(mask & ~(1u << k)), c * q);
        } else {
            out.add_term(static_cast<uint16_t>(mask | (1u << k)), c);
        }
        return;
    }
    // let i = max index of S; e_S e_k = e_{S'} e_i e_k with S' = S minus i
    int i = 15;
    while (!(higher & (1u << i))) --i;
    uint16_t rest = static_cast<uint16_t>(mask & ~(1u << i));
    // e_i e_k = [e_i, e_k] - e_k e_i
    Rat bil = sp.gram.at(i, k);
    if (bil != 0) out.add_term(rest, c * bil);
    // - e_{rest} e_k e_i: first multiply rest by e_k, then append e_i
    CliffordElt tmp(sp);
    mul_mono_gen(sp, rest, k, -c, tmp);
    for (auto& [m, x] : tmp.terms()) {
        // all indices in m are < i, so appending e_i is a plain insertion
        out.add_term(static_cast<uint16_t>(m | (1u << i)), x);
    }
}

}  // namespace

CliffordElt cmul(const CliffordElt& a, const CliffordElt& b) {
    if (!(a.space().gram == b.space().gram) || a.space().p != b.space().p)
        throw InvalidInput("Clifford product across different spaces");
    const QuadSpace& sp = a.space();
    CliffordElt acc = a;
    CliffordElt result(sp);
    // process b term by term; each b-monomial is applied generator by generator
    for (auto& [bm, bc] : b.terms()) {
        CliffordElt cur = a.scaled(bc);
        for (int k = 0; k < sp.dim(); ++k) {
            if (!(bm & (1u << k))) continue;
            CliffordElt next(sp);
            for (auto& [m, c] : cur.terms()) mul_mono_gen(sp, m, k, c, next);
            cur = next;
        }
        result = result + cur;
    }
    (void)acc;
    return result;
}

std::pair<CliffordElt, CliffordElt> grading_split(const CliffordElt& a) {
    CliffordElt even(a.space()), odd(a.space());
    for (auto& [m, c] : a.terms()) {
        if (std::popcount(static_cast<unsigned>(m)) % 2 == 0) even.add_term(m, c);
        else odd.add_term(m, c);
    }
    return {even, odd};
}

CliffordElt dagger(const CliffordElt& a) {
    const QuadSpace& sp = a.space();
    CliffordElt out(sp);
    for (auto& [m, c] : a.terms()) {
        // reverse the generator word: multiply generators in decreasing order
        CliffordElt cur = CliffordElt::scalar(sp, c);
        for (int k = sp.dim() - 1; k >= 0; --k) {
            if (!(m & (1u << k))) continue;
            CliffordElt next(sp);
            for (auto& [mm, cc] : cur.terms()) mul_mono_gen(sp, mm, k, cc, next);
            cur = next;
        }
        out = out + cur;
    }
    return out;
}

QMat left_mul_matrix(const CliffordElt& a) {
    const QuadSpace& sp = a.space();
    int N = 1 << sp.dim();
    QMat L(N, N);
    for (int s = 0; s < N; ++s) {
        CliffordElt col = cmul(a, CliffordElt::monomial(sp, static_cast<uint16_t>(s), Rat(1)));
        for (auto& [m, c] : col.terms()) L.at(m, s) = c;
    }
    return L;
}

Rat regular_trace(const CliffordElt& a) {
    const QuadSpace& sp = a.space();
    int N = 1 << sp.dim();
    Rat tr(0);
    for (int s = 0; s < N; ++s) {
        CliffordElt col = cmul(a, CliffordElt::monomial(sp, static_cast<uint16_t>(s), Rat(1)));
        tr += col.coeff(static_cast<uint16_t>(s));
    }
    return tr;
}

GSpinVerdict is_gspin(const CliffordElt& g) {
    GSpinVerdict v;
    auto [even, odd] = grading_split(g);
    if (!odd.is_zero()) throw InvalidInput("is_gspin: element has a nonzero odd part");
    v.even = true;
    const QuadSpace& sp = g.space();
    int n = sp.dim();
    int N = 1 << n;
    // invert by solving L_g x = 1
    QMat L = left_mul_matrix(g);
    QMat rhs(N, 1);
    rhs.at(0, 0) = 1;
    QMat ginv_coords;
    try {
        ginv_coords = L.inverse() * rhs;
    } catch (const InvalidInput&) {
        v.member = false;
        return v;
    }
    CliffordElt ginv(sp);
    for (int s = 0; s < N; ++s) ginv.add_term(static_cast<uint16_t>(s), ginv_coords.at(s, 0));
    if (!(cmul(ginv, g) == CliffordElt::scalar(sp, Rat(1)))) {
        v.member = false;
        return v;
    }
    // conjugation must preserve the span of the generators
    QMat so(n, n);
    for (int j = 0; j < n; ++j) {
        CliffordElt image = cmul(cmul(g, CliffordElt::generator(sp, j)), ginv);
        for (auto& [m, c] : image.terms()) {
            if (std::popcount(static_cast<unsigned>(m)) != 1) {
                v.member = false;
                return v;
            }
            int i = std::countr_zero(static_cast<unsigned>(m));
            so.at(i, j) = c;
        }
    }
    // spinor similitude: g^dagger g must be a nonzero scalar
    CliffordElt sim = cmul(dagger(g), g);
    for (auto& [m, c] : sim.terms())
        if (m != 0) {
            v.member = false;
            return v;
        }
    Rat s = sim.coeff(0);
    if (s == 0) {
        v.member = false;
        return v;
    }
    v.member = true;
    v.similitude = s;
    v.so_matrix = so;
    v.inverse = ginv;
    return v;
}

std::vector<Rat> act_vector(const CliffordElt& g, const std::vector<Rat>& v) {
    GSpinVerdict verdict = is_gspin(g);
    if (!verdict.member) throw InvalidInput("act_vector: not a GSpin member");
    QMat x = (*verdict.so_matrix) * QMat::col_vector(v);
    return x.col(0);
}

QMat so_image(const CliffordElt& g) {
    GSpinVerdict verdict = is_gspin(g);
    if (!verdict.member) throw InvalidInput("so_image: not a GSpin member");
    return *verdict.so_matrix;
}

QMat psi_form(const CliffordElt& delta) {
    const QuadSpace& sp = delta.space();
    if (sp.dim() > 6) throw BudgetExceeded("psi_form capped at dimension 6");
    if (!(dagger(delta) == delta.scaled(Rat(-1))))
        throw InvalidInput("psi_form needs delta^dagger = -delta");
    int N = 1 << sp.dim();
    // tau(e_U) = regular trace, precomputed once
    std::vector<Rat> tau(N);
    for (int u = 0; u < N; ++u)
        tau[u] = regular_trace(CliffordElt::monomial(sp, static_cast<uint16_t>(u), Rat(1)));
    QMat psi(N, N);
    for (int s = 0; s < N; ++s) {
        CliffordElt left = cmul(CliffordElt::monomial(sp, static_cast<uint16_t>(s), Rat(1)), delta);
        for (int t = 0; t < N; ++t) {
            CliffordElt prod =
                cmul(left, dagger(CliffordElt::monomial(sp, static_cast<uint16_t>(t), Rat(1))));
            Rat acc(0);
            for (auto& [m, c] : prod.terms()) acc += c * tau[m];
            psi.at(s, t) = acc;
        }
    }
    return psi;
}

CliffordElt mu_sharp(const Rat& t, const SharpSpace& S) {
    if (t == 0) throw InvalidInput("mu_sharp at t = 0");
    QuadSpace sp = S.sharp_in_sharp_basis();
    CliffordElt x0s = CliffordElt::generator(sp, 0);
    CliffordElt x1s = CliffordElt::generator(sp, 1);
    CliffordElt fwd = cmul(x0s, x1s);
    CliffordElt bwd = cmul(x1s, x0s);
    return fwd.scaled(Rat(1) / t) + bwd;
}

CliffordElt g_zero(const SharpSpace& S) {
    const QuadSpace& base = S.base;
    if (base.dim() < 2) throw InvalidInput("g_zero needs base dimension >= 2");
    CliffordElt x1 = CliffordElt::generator(base, 0);
    CliffordElt x2 = CliffordElt::generator(base, 1);
    Rat invp(1);
    invp /= base.p;
    return cmul(x2, x1).scaled(invp);
}

}  // namespace vlat
