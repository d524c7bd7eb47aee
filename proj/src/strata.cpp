#include "vlat/strata.hpp"

#include <algorithm>
#include <functional>

#include "vlat/rat.hpp"

namespace vlat {

FqQuadSpace::FqQuadSpace(long prime, FqMat g) : p(prime), gram(std::move(g)) {
    require_odd_prime(p);
    if (gram.field()->k != 1 || gram.field()->p != p)
        throw InvalidInput("FqQuadSpace gram must be over the prime field");
    if (gram.rows() != gram.cols()) throw InvalidInput("gram must be square");
    for (int i = 0; i < gram.rows(); ++i)
        for (int j = 0; j < gram.cols(); ++j)
            if (!(gram.at(i, j) == gram.at(j, i))) throw InvalidInput("gram must be symmetric");
    if (det().is_zero()) throw InvalidInput("gram must be nondegenerate");
}

FqQuadSpace FqQuadSpace::from_diag(long prime, const std::vector<long>& diag) {
    const FqField* F = FqField::get(prime, 1);
    FqMat g(F, static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    for (size_t i = 0; i < diag.size(); ++i) g.at(static_cast<int>(i), static_cast<int>(i)) = FqElt(F, diag[i]);
    return FqQuadSpace(prime, g);
}

bool FqQuadSpace::is_split() const {
    if (dim() % 2 != 0) throw InvalidInput("is_split is for even dimension");
    int r = dim() / 2;
    long d = det().index();
    long sign = (r % 2 == 0) ? 1 : p - 1;  // (-1)^r mod p
    long val = d * sign % p;
    return legendre(val, p) == 1;
}

int FqQuadSpace::witt_index() const {
    if (dim() % 2 != 0) return (dim() - 1) / 2;
    return is_split() ? dim() / 2 : dim() / 2 - 1;
}

FqMat FqQuadSpace::gram_at(int k) const {
    if (k == 1) return gram;
    return lift_matrix(gram, FqField::get(p, k));
}

bool FqQuadSpace::split_at_level(int k) const {
    if (dim() % 2 != 0) throw InvalidInput("split_at_level is for even dimension");
    if (k % 2 == 0) return true;  // every unit is a square after a quadratic extension
    return is_split();
}

bool subspace_isotropic(const FqQuadSpace& sp, const FqMat& rows) {
    const FqField* F = rows.field();
    FqMat g = sp.gram_at(F->k);
    FqMat prod = rows * g * rows.transpose();
    for (int i = 0; i < prod.rows(); ++i)
        for (int j = 0; j < prod.cols(); ++j)
            if (!prod.at(i, j).is_zero()) return false;
    return true;
}

unsigned long long subspace_count(int m, int r, unsigned long long q) {
    if (r < 0 || r > m) return 0;
    const unsigned __int128 cap = (static_cast<unsigned __int128>(1) << 62);
    unsigned __int128 num = 1, den = 1;
    for (int i = 0; i < r; ++i) {
        unsigned __int128 qn = 1;
        for (int j = 0; j < m - i; ++j) {
            qn *= q;
            if (qn > cap) return static_cast<unsigned long long>(cap);
        }
        unsigned __int128 qr = 1;
        for (int j = 0; j < r - i; ++j) qr *= q;
        num *= (qn - 1);
        den *= (qr - 1);
        if (num > cap * den) return static_cast<unsigned long long>(cap);
    }
    return static_cast<unsigned long long>(num / den);
}

namespace {

// iterate over all RREF matrices of r-dim subspaces of F^m
void for_each_rref(const FqField* F, int m, int r,
                   const std::function<void(const FqMat&)>& fn) {
    if (r == 0) {
        fn(FqMat(F, 0, m));
        return;
    }
    long q = F->order_long();
    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) piv[i] = i;
    while (true) {
        std::vector<std::pair<int, int>> freepos;
        std::vector<bool> is_piv(m, false);
        for (int j : piv) is_piv[j] = true;
        for (int i = 0; i < r; ++i)
            for (int j = piv[i] + 1; j < m; ++j)
                if (!is_piv[j]) freepos.emplace_back(i, j);
        std::vector<long> vals(freepos.size(), 0);
        while (true) {
            FqMat rows(F, r, m);
            for (int i = 0; i < r; ++i) rows.at(i, piv[i]) = FqElt::one(F);
            for (size_t t = 0; t < freepos.size(); ++t)
                rows.at(freepos[t].first, freepos[t].second) = FqElt::from_index(F, vals[t]);
            fn(rows);
            int t = static_cast<int>(vals.size()) - 1;
            while (t >= 0 && vals[t] == q - 1) { vals[t] = 0; --t; }
            if (t < 0) break;
            ++vals[t];
        }
        int i = r - 1;
        while (i >= 0 && piv[i] == m - r + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
}

}  // namespace

std::vector<FqSubspace> enumerate_isotropic(const FqQuadSpace& sp, int r, int k,
                                            unsigned long long budget) {
    const FqField* F = FqField::get(sp.p, k);
    const int m = sp.dim();
    if (r == 0) return {FqSubspace{FqMat(F, 0, m)}};
    if (r > m) return {};
    FqMat G = sp.gram_at(k);
    const long q = F->order_long();
    std::vector<FqSubspace> out;
    unsigned long long nodes = 0;

    // flag search over RREF shapes: pivots fixed per branch, each new row is
    // drawn from the affine solution space of the pairing conditions against
    // the earlier rows, then filtered by isotropy of the row itself
    std::vector<int> piv(r);
    FqMat rows(F, r, m);
    std::vector<FqMat> row_pairings;  // row_l * G, cached per placed row

    std::function<void(int)> place = [&](int i) {
        if (i == r) {
            out.push_back(FqSubspace{rows});
            return;
        }
        std::vector<bool> is_piv(m, false);
        for (int t = 0; t < r; ++t) is_piv[piv[t]] = true;
        std::vector<int> freecols;
        for (int j = piv[i] + 1; j < m; ++j)
            if (!is_piv[j]) freecols.push_back(j);
        int f = static_cast<int>(freecols.size());
        // linear conditions: for l < i,  (row_l G)_{piv_i} + sum_j x_j (row_l G)_j = 0
        FqMat A(F, i, f);
        FqMat b(F, i, 1);
        for (int l = 0; l < i; ++l) {
            const FqMat& rg = row_pairings[l];
            for (int t = 0; t < f; ++t) A.at(l, t) = rg.at(0, freecols[t]);
            b.at(l, 0) = -rg.at(0, piv[i]);
        }
        // solve A x = b
        FqMat aug(F, i, f + 1);
        for (int l = 0; l < i; ++l) {
            for (int t = 0; t < f; ++t) aug.at(l, t) = A.at(l, t);
            aug.at(l, f) = b.at(l, 0);
        }
        int rank = 0;
        std::vector<int> pivots;
        FqMat red = rref(aug, &rank, &pivots);
        for (int t = 0; t < rank; ++t)
            if (pivots[t] == f) return;  // inconsistent
        std::vector<FqElt> part(f, FqElt::zero(F));
        for (int t = 0; t < rank; ++t) part[pivots[t]] = red.at(t, f);
        FqMat K = right_kernel(A);
        int s = K.rows();
        std::vector<long> combo(static_cast<size_t>(std::max(s, 1)), 0);
        while (true) {
            if (++nodes > budget)
                throw BudgetExceeded("isotropic flag search exceeded work budget " +
                                     std::to_string(budget));
            // row = e_piv + sum (part + combo . K) on free columns
            for (int j = 0; j < m; ++j) rows.at(i, j) = FqElt::zero(F);
            rows.at(i, piv[i]) = FqElt::one(F);
            for (int t = 0; t < f; ++t) {
                FqElt x = part[t];
                for (int u = 0; u < s; ++u)
                    if (combo[u]) x = x + FqElt::from_index(F, combo[u]) * K.at(u, t);
                rows.at(i, freecols[t]) = x;
            }
            // quadratic condition on the new row
            FqMat rg(F, 1, m);
            for (int j = 0; j < m; ++j) {
                FqElt acc = FqElt::zero(F);
                for (int c = 0; c < m; ++c) acc = acc + rows.at(i, c) * G.at(c, j);
                rg.at(0, j) = acc;
            }
            FqElt qv = FqElt::zero(F);
            for (int j = 0; j < m; ++j) qv = qv + rg.at(0, j) * rows.at(i, j);
            if (qv.is_zero()) {
                row_pairings.push_back(rg);
                place(i + 1);
                row_pairings.pop_back();
            }
            if (s == 0) break;
            int t = s - 1;
            while (t >= 0 && combo[t] == q - 1) { combo[t] = 0; --t; }
            if (t < 0) break;
            ++combo[t];
        }
        for (int j = 0; j < m; ++j) rows.at(i, j) = FqElt::zero(F);
    };

    // iterate pivot combinations lexicographically
    for (int t = 0; t < r; ++t) piv[t] = t;
    while (true) {
        place(0);
        int t = r - 1;
        while (t >= 0 && piv[t] == m - r + t) --t;
        if (t < 0) break;
        ++piv[t];
        for (int u = t + 1; u < r; ++u) piv[u] = piv[u - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<FqSubspace, int>> max_isotropic_with_component(const FqQuadSpace& sp,
                                                                     int k,
                                                                     unsigned long long budget) {
    if (sp.dim() % 2 != 0) throw InvalidInput("component labels need even dimension");
    int d = sp.dim() / 2;
    if (!sp.split_at_level(k)) return {};
    std::vector<FqSubspace> all = enumerate_isotropic(sp, d, k, budget);
    std::vector<std::pair<FqSubspace, int>> out;
    if (all.empty()) return out;
    const FqSubspace& ref = all.front();
    for (auto& L : all) {
        int inter = intersect_subspaces(L, ref).dim();
        int label = ((d - inter) % 2 == 0) ? +1 : -1;
        out.emplace_back(L, label);
    }
    return out;
}

FqSubspace frobenius_subspace(const FqSubspace& L) {
    return FqSubspace{row_space(L.rows.frobenius())};
}

FqSubspace sum_subspaces(const FqSubspace& a, const FqSubspace& b) {
    return FqSubspace{sum_rows(a.rows, b.rows)};
}

FqSubspace intersect_subspaces(const FqSubspace& a, const FqSubspace& b) {
    return FqSubspace{intersect_rows(a.rows, b.rows)};
}

bool in_S_sharp(const FqQuadSpace& sp, const FqSubspace& L) {
    if (sp.dim() % 2 != 0) throw InvalidInput("in_S_sharp needs an even-dimensional space");
    int d = sp.dim() / 2;
    if (L.dim() != d) throw InvalidInput("in_S_sharp needs a maximal isotropic subspace");
    if (!subspace_isotropic(sp, L.rows)) throw InvalidInput("subspace is not isotropic");
    int r = intersect_subspaces(L, frobenius_subspace(L)).dim();
    return r == d - 1;
}

bool in_S(const FqQuadSpace& sp, const FqSubspace& L) {
    if (sp.dim() % 2 == 0) throw InvalidInput("in_S needs an odd-dimensional space");
    int d = (sp.dim() + 1) / 2;
    if (L.dim() != d - 1) throw InvalidInput("in_S needs a maximal isotropic subspace");
    if (!subspace_isotropic(sp, L.rows)) throw InvalidInput("subspace is not isotropic");
    int r = intersect_subspaces(L, frobenius_subspace(L)).dim();
    return r >= d - 2;
}

FqSubspace odev_map(const FqQuadSpace& sp_sharp, const FqSubspace& Lsharp) {
    int m = sp_sharp.dim();
    for (int j = 0; j + 1 < m; ++j)
        if (!sp_sharp.gram.at(m - 1, j).is_zero())
            throw InvalidInput("odev_map needs the last coordinate split off orthogonally");
    const FqField* F = Lsharp.rows.field();
    // kernel of the last-coordinate functional restricted to L
    FqMat R = Lsharp.rows;
    FqMat lastcol(F, R.rows(), 1);
    for (int i = 0; i < R.rows(); ++i) lastcol.at(i, 0) = R.at(i, m - 1);
    FqMat ker = right_kernel(lastcol.transpose());  // combos alpha with alpha . last = 0
    FqMat inter(F, ker.rows(), m - 1);
    for (int i = 0; i < ker.rows(); ++i)
        for (int j = 0; j + 1 < m; ++j) {
            FqElt acc = FqElt::zero(F);
            for (int t = 0; t < R.rows(); ++t) acc = acc + ker.at(i, t) * R.at(t, j);
            inter.at(i, j) = acc;
        }
    return FqSubspace{row_space(inter)};
}

FrobeniusClosure frobenius_closure(const FqSubspace& L, int k_cap) {
    FqSubspace cur = FqSubspace{row_space(L.rows)};
    int d = 0;
    while (d <= k_cap) {
        FqSubspace next = sum_subspaces(cur, frobenius_subspace(cur));
        if (next.dim() == cur.dim()) return FrobeniusClosure{d, cur};
        cur = next;
        ++d;
    }
    throw InternalError("frobenius_closure did not stabilize within the cap");
}

// ---- fixed points -----------------------------------------------------------

namespace {

FqMat poly_apply(const FqPoly& f, const FqMat& g) {
    const FqField* F = g.field();
    int n = g.rows();
    FqMat acc(F, n, n);
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * g;
        FqElt c = f.coeff(i);
        if (!c.is_zero())
            for (int r = 0; r < n; ++r) acc.at(r, r) = acc.at(r, r) + c;
    }
    return acc;
}

// subspace image under the operator (rows transform by A^T)
FqMat rows_image(const FqMat& rows, const FqMat& op) {
    return row_space(rows * op.transpose());
}

bool rows_equal(const FqMat& a, const FqMat& b) {
    return row_space(a) == row_space(b);
}

struct Component {
    FqPoly factor;
    int mult = 0;
    FqMat basis;  // rows spanning the primary component
};

// All g-stable subspaces of a primary component, for cyclic or semisimple
// module structure.
std::vector<FqMat> component_submodules(const Component& comp, const FqMat& g,
                                        unsigned long long budget) {
    const FqField* F = g.field();
    int dim = comp.basis.rows();
    int d = comp.factor.degree();
    FqMat pg = poly_apply(comp.factor, g);
    // kernel of factor(g) inside the component
    FqMat image_in = comp.basis * pg.transpose();
    int rk = rank_of(image_in);
    int kerdim = dim - rk;
    if (kerdim == d) {
        // cyclic: the submodule chain factor(g)^i . V
        std::vector<FqMat> out;
        FqMat cur = row_space(comp.basis);
        out.push_back(cur);
        for (int i = 1; i <= comp.mult; ++i) {
            cur = rows_image(cur, pg);
            out.push_back(cur);
        }
        return out;
    }
    if (rk == 0) {
        // semisimple: scan all subspaces, keep the g-stable ones
        std::vector<FqMat> out;
        unsigned long long total = 0;
        for (int r = 0; r <= dim; ++r)
            total += subspace_count(dim, r, static_cast<unsigned long long>(F->order_long()));
        if (total > budget)
            throw BudgetExceeded("semisimple component scan exceeds budget");
        // subspaces of the component expressed in component coordinates
        for (int r = 0; r <= dim; ++r) {
            for_each_rref(F, dim, r, [&](const FqMat& rel) {
                FqMat rows = rel * comp.basis;  // ambient coordinates
                FqMat img = rows_image(rows, g);
                if (rows_equal(img, rows)) out.push_back(row_space(rows));
            });
        }
        return out;
    }
    throw BudgetExceeded("component with mixed module structure; not enumerable");
}

}  // namespace

std::vector<std::pair<FqSubspace, bool>> fixed_points(const FqQuadSpace& sp, const FqMat& gbar,
                                                      int k, unsigned long long budget) {
    if (gbar.field()->k != 1 || gbar.field()->p != sp.p)
        throw InvalidInput("gbar must be over the prime field of the space");
    if (gbar.rows() != sp.dim()) throw InvalidInput("gbar dimension mismatch");
    // gbar must preserve the form
    {
        FqMat gg = gbar.transpose() * sp.gram * gbar;
        if (!(gg == sp.gram)) throw InvalidInput("gbar is not an isometry of the form");
    }
    const int m = sp.dim();
    const int r = (m % 2 == 0) ? m / 2 : (m - 1) / 2;
    const FqField* F = FqField::get(sp.p, k);
    FqMat g = lift_matrix(gbar, F);
    FqMat G = sp.gram_at(k);

    auto flag_of = [&](const FqSubspace& L) {
        return (m % 2 == 0) ? in_S_sharp(sp, L) : in_S(sp, L);
    };

    std::vector<std::pair<FqSubspace, bool>> out;
    bool scanned = false;
    // the flag search spends at least q^{m-r} row trials, so skip the scan
    // attempt when that alone exceeds the budget
    bool try_scan = true;
    {
        unsigned __int128 rowtrials = 1;
        for (int i = 0; i < m - r; ++i) {
            rowtrials *= static_cast<unsigned long long>(F->order_long());
            if (rowtrials > budget) { try_scan = false; break; }
        }
    }
    if (try_scan) {
        try {
            std::vector<std::pair<FqSubspace, bool>> found;
            for (auto& L : enumerate_isotropic(sp, r, k, budget)) {
                FqMat img = rows_image(L.rows, g);
                if (rows_equal(img, L.rows)) found.emplace_back(L, flag_of(L));
            }
            out = std::move(found);
            scanned = true;
        } catch (const BudgetExceeded&) {
            // fall through to the stable-subspace path
        }
    }
    if (!scanned && m % 2 != 0)
        throw BudgetExceeded("fixed-point scan over budget; no stable path in odd dimension");
    if (scanned) {
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    // stable-subspace path over the primary decomposition
    std::vector<FqElt> cp = char_poly(g);
    auto factors = factor_poly(FqPoly(F, cp));
    std::vector<Component> comps;
    for (auto& [f, mult] : factors) {
        FqPoly fm = FqPoly::one(F);
        for (int i = 0; i < mult; ++i) fm = fm * f;
        FqMat op = poly_apply(fm, g);
        FqMat ker = right_kernel(op);
        if (ker.rows() != f.degree() * mult) throw InternalError("primary component dimension");
        comps.push_back(Component{f, mult, ker});
    }
    // pair factors with their reciprocal
    std::vector<int> partner(comps.size(), -1);
    for (size_t i = 0; i < comps.size(); ++i) {
        FqPoly rec = reciprocal_monic(comps[i].factor);
        for (size_t j = 0; j < comps.size(); ++j)
            if (comps[j].factor == rec) partner[i] = static_cast<int>(j);
        if (partner[i] < 0) throw InternalError("char poly is not closed under reciprocal");
    }

    std::vector<std::vector<FqMat>> choice_sets;  // per group, spanning rows
    std::vector<bool> done(comps.size(), false);
    for (size_t i = 0; i < comps.size(); ++i) {
        if (done[i]) continue;
        int j = partner[i];
        if (j == static_cast<int>(i)) {
            // self-reciprocal: stable Lagrangians of the component
            std::vector<FqMat> subs = component_submodules(comps[i], g, budget);
            std::vector<FqMat> lag;
            int half = comps[i].basis.rows() / 2;
            if (comps[i].basis.rows() % 2 == 0) {
                for (auto& s : subs) {
                    if (s.rows() != half) continue;
                    if (!subspace_isotropic(sp, s)) continue;
                    lag.push_back(s);
                }
            }
            choice_sets.push_back(std::move(lag));
            done[i] = true;
        } else {
            // pair: any submodule of V_i, the partner part is forced
            std::vector<FqMat> subs = component_submodules(comps[i], g, budget);
            std::vector<FqMat> combined;
            for (auto& s : subs) {
                // perp of s inside the partner component
                FqMat perp = right_kernel(s * G);  // all x with s G x = 0
                FqMat other = intersect_rows(perp, comps[j].basis);
                if (other.rows() != comps[j].basis.rows() - s.rows())
                    throw InternalError("pair component perp has wrong dimension");
                combined.push_back(sum_rows(s, other));
            }
            choice_sets.push_back(std::move(combined));
            done[i] = done[j] = true;
        }
    }
    // cartesian product
    unsigned long long combos = 1;
    for (auto& cs : choice_sets) {
        combos *= std::max<size_t>(cs.size(), 1);
        if (combos > budget) throw BudgetExceeded("stable-subspace assembly exceeds budget");
    }
    std::vector<FqMat> acc{FqMat(F, 0, m)};
    for (auto& cs : choice_sets) {
        std::vector<FqMat> next;
        for (auto& partial : acc)
            for (auto& piece : cs) next.push_back(sum_rows(partial, piece));
        acc = std::move(next);
        if (acc.empty()) break;
    }
    for (auto& rows : acc) {
        if (rows.rows() != r) continue;
        if (!subspace_isotropic(sp, rows)) continue;
        FqMat img = rows_image(rows, g);
        if (!rows_equal(img, rows)) throw InternalError("assembled subspace is not stable");
        FqSubspace L{row_space(rows)};
        out.emplace_back(L, flag_of(L));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              out.end());
    return out;
}

int witt_index_by_enumeration(const FqQuadSpace& sp, int k, unsigned long long budget) {
    int best = 0;
    for (int rr = 1; rr <= sp.dim() / 2; ++rr) {
        if (enumerate_isotropic(sp, rr, k, budget).empty()) break;
        best = rr;
    }
    return best;
}

}  // namespace vlat
