// factor.hpp -- univariate factorization over tower fields and root adjunction.
// Factoring over an extension reduces to factoring the norm over the level
// below (Trager); the rational base case lives in qfactor.hpp.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "germlab/qfactor.hpp"
#include "germlab/unipoly.hpp"

namespace germlab {

struct FactorOptions {
    int q_degree_cap = 64;
    int max_tower_degree = FieldTower::kDefaultMaxDegree;
};

struct TowerFactorization {
    FieldElement constant;
    std::vector<std::pair<UniPoly<FieldElement>, int>> factors; // monic irreducible, multiplicity
};

inline TowerPtr deeper_tower(const TowerPtr& a, const TowerPtr& b) {
    if (FieldTower::is_prefix(a, b)) return b;
    check_input(FieldTower::is_prefix(b, a), "incompatible coefficient fields");
    return a;
}

inline TowerPtr common_tower(const UniPoly<FieldElement>& p, TowerPtr start = nullptr) {
    TowerPtr k = std::move(start);
    for (auto& c : p.c) k = deeper_tower(k, c.tower());
    return k;
}

inline UniPoly<FieldElement> promote_poly(const UniPoly<FieldElement>& p, const TowerPtr& k) {
    UniPoly<FieldElement> r = p;
    for (auto& c : r.c) c = c.promoted(k);
    return r;
}

inline UniPoly<Rational> to_rational_poly(const UniPoly<FieldElement>& p) {
    UniPoly<Rational> r;
    for (auto& c : p.c) r.c.push_back(c.as_rational());
    r.normalize();
    return r;
}

inline UniPoly<FieldElement> from_rational_poly(const UniPoly<Rational>& p) {
    UniPoly<FieldElement> r;
    for (auto& c : p.c) r.c.emplace_back(c);
    r.normalize();
    return r;
}

inline bool field_poly_less(const UniPoly<FieldElement>& a, const UniPoly<FieldElement>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c.size(); i-- > 0;) {
        const auto& ca = a.c[i].coords();
        const auto& cb = b.c[i].coords();
        std::size_t n = std::max(ca.size(), cb.size());
        for (std::size_t j = 0; j < n; ++j) {
            Rational x = j < ca.size() ? ca[j] : Rational(0);
            Rational y = j < cb.size() ? cb[j] : Rational(0);
            if (x != y) return x < y;
        }
    }
    return false;
}

namespace detail {

// Irreducible factors of a monic squarefree polynomial over the tower k.
inline std::vector<UniPoly<FieldElement>> factor_squarefree_tower(const UniPoly<FieldElement>& g,
                                                                  const TowerPtr& k, const FactorOptions& opt) {
    if (g.degree() <= 1) return {g};
    if (!k) {
        auto rf = detail::factor_squarefree_q(to_rational_poly(g), opt.q_degree_cap);
        std::vector<UniPoly<FieldElement>> out;
        for (auto& f : rf) out.push_back(from_rational_poly(f));
        return out;
    }
    // K = K0(alpha); factor via the norm over K0.
    TowerPtr k0 = FieldTower::take_prefix(k, k->depth() - 1);
    const TowerLevel& top = k->levels().back();
    const std::size_t d = static_cast<std::size_t>(top.degree);
    const std::size_t stride = static_cast<std::size_t>(k->degree()) / d;
    FieldElement alpha = FieldElement::generator(k);

    // m_alpha(z) as a polynomial in z with constant-in-s coefficients over K0
    using SPoly = UniPoly<FieldElement>;
    UniPoly<SPoly> mz;
    for (std::size_t j = 0; j < d; ++j) {
        FieldElement cj = k0 ? FieldElement(k0, top.min_poly_coords[j])
                             : FieldElement(top.min_poly_coords[j][0]);
        mz.c.push_back(SPoly::constant(cj));
    }
    mz.c.push_back(SPoly::constant(FieldElement::one()));
    mz.normalize();

    for (int step = 0; step < 60; ++step) {
        long lambda = (step + 1) / 2 * ((step % 2) ? 1 : -1); // 0, 1, -1, 2, -2, ...
        if (step == 0) lambda = 0;
        // g_l(s) = g(s - lambda*alpha)
        UniPoly<FieldElement> shift({FieldElement(Rational(-lambda)) * alpha, FieldElement::one()});
        UniPoly<FieldElement> gl = g.compose(shift);
        // G(z) with alpha |-> z: coefficients of gl split into alpha-power blocks
        UniPoly<SPoly> gz;
        gz.c.assign(d, SPoly());
        for (std::size_t i = 0; i < gl.c.size(); ++i) {
            FieldElement ci = gl.c[i].promoted(k);
            const auto& co = ci.coords();
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<Rational> block(co.begin() + static_cast<long>(j * stride),
                                            co.begin() + static_cast<long>((j + 1) * stride));
                FieldElement cij = k0 ? FieldElement(k0, std::move(block)) : FieldElement(block[0]);
                if (!cij.is_zero()) {
                    if (gz.c[j].c.size() <= i) gz.c[j].c.resize(i + 1, FieldElement());
                    gz.c[j].c[i] = cij;
                }
            }
        }
        for (auto& sp : gz.c) sp.normalize();
        gz.normalize();
        SPoly norm = resultant(mz, gz);
        norm.normalize();
        if (norm.degree() != g.degree() * static_cast<int>(d)) continue; // degenerate shift
        SPoly norm_monic = norm.scaled(FieldElement::one() / norm.lc());
        if (gcd_field(norm_monic, norm_monic.derivative()).degree() != 0) continue;
        auto sub = factor_squarefree_tower(norm_monic, k0, opt);
        std::vector<UniPoly<FieldElement>> out;
        UniPoly<FieldElement> back({FieldElement(Rational(lambda)) * alpha, FieldElement::one()});
        for (auto& ni : sub) {
            UniPoly<FieldElement> nik = promote_poly(ni, k);
            UniPoly<FieldElement> gi = gcd_field(gl, nik);
            if (gi.degree() <= 0) continue;
            UniPoly<FieldElement> fi = gi.compose(back);
            fi = fi.scaled(FieldElement::one() / fi.lc());
            out.push_back(fi);
        }
        int total = 0;
        for (auto& f : out) total += f.degree();
        check_consistent(total == g.degree(), "norm-based factorization lost degree");
        return out;
    }
    throw Error(ErrorKind::Capacity, "no squarefree norm found while factoring over an extension");
}

} // namespace detail

// Factorization into monic irreducible factors over the (deepest) coefficient
// tower of p.  constant * prod factor^mult == p exactly.
inline TowerFactorization uni_factor(const UniPoly<FieldElement>& p, const FactorOptions& opt = {}) {
    check_input(!p.is_zero(), "factorization of the zero polynomial");
    TowerPtr k = common_tower(p);
    UniPoly<FieldElement> q = promote_poly(p, k);
    TowerFactorization out;
    out.constant = q.lc();
    if (q.degree() == 0) return out;
    UniPoly<FieldElement> monic = q.scaled(FieldElement::one() / q.lc());
    auto parts = squarefree_decomposition(monic);
    for (auto& [g, mult] : parts) {
        auto irr = detail::factor_squarefree_tower(g, k, opt);
        for (auto& f : irr) out.factors.emplace_back(f, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return field_poly_less(a.first, b.first);
    });
    return out;
}

// Adjoins a root of a monic irreducible polynomial over `tower`, returning
// the extended tower and the new generator.  Level names run a, b, c, ...
inline std::pair<TowerPtr, FieldElement> adjoin_root(const TowerPtr& tower,
                                                     const UniPoly<FieldElement>& monic_irreducible,
                                                     const FactorOptions& opt = {}) {
    check_input(monic_irreducible.degree() >= 2, "adjoining a root of a linear polynomial");
    std::vector<std::vector<Rational>> coords;
    for (auto& c : monic_irreducible.c) {
        FieldElement cc = c.promoted(tower);
        coords.push_back(cc.coords());
    }
    std::string name(1, static_cast<char>('a' + (tower ? tower->depth() : 0)));
    TowerPtr ext = FieldTower::extend(tower, name, std::move(coords), opt.max_tower_degree);
    return {ext, FieldElement::generator(ext)};
}

// All roots of p that lie in its own coefficient tower, via linear factors.
inline std::vector<std::pair<FieldElement, int>> roots_in_tower(const UniPoly<FieldElement>& p,
                                                                const FactorOptions& opt = {}) {
    auto fac = uni_factor(p, opt);
    std::vector<std::pair<FieldElement, int>> out;
    for (auto& [f, mult] : fac.factors)
        if (f.degree() == 1) out.emplace_back(-f.c[0], mult);
    return out;
}

// Some root of a monic polynomial, extending the tower when necessary.
// Deterministic: linear factors are preferred, then the canonically first
// irreducible factor of smallest degree.
inline std::pair<TowerPtr, FieldElement> some_root(const TowerPtr& tower, const UniPoly<FieldElement>& f,
                                                   const FactorOptions& opt = {}) {
    auto fac = uni_factor(promote_poly(f, common_tower(f, tower)), opt);
    check_input(!fac.factors.empty(), "no roots: polynomial is constant");
    const UniPoly<FieldElement>* best = nullptr;
    for (auto& [g, mult] : fac.factors) {
        (void)mult;
        if (!best || g.degree() < best->degree() ||
            (g.degree() == best->degree() && field_poly_less(g, *best)))
            best = &g;
    }
    TowerPtr k = common_tower(*best, tower);
    if (best->degree() == 1) return {k, (-best->c[0]).promoted(k)};
    return adjoin_root(k, *best, opt);
}

inline std::pair<TowerPtr, FieldElement> nth_root(const TowerPtr& tower, const FieldElement& v, int n,
                                                  const FactorOptions& opt = {}) {
    check_input(n >= 1, "nth_root needs n >= 1");
    if (n == 1) return {deeper_tower(tower, v.tower()), v};
    UniPoly<FieldElement> f = UniPoly<FieldElement>::monomial(FieldElement::one(), static_cast<std::size_t>(n)) -
                              UniPoly<FieldElement>::constant(v);
    return some_root(tower, f, opt);
}

// Minimal polynomial over Q of a tower element (monic, rational coefficients).
inline UniPoly<Rational> minimal_polynomial(const FieldElement& e, const FactorOptions& opt = {}) {
    auto cp = e.char_poly_over_q();
    UniPoly<Rational> charpoly(cp);
    auto fac = factor_rationals(charpoly, opt.q_degree_cap);
    for (auto& [f, mult] : fac.factors) {
        (void)mult;
        if (from_rational_poly(f).evaluate_t(e).is_zero()) return f;
    }
    throw Error(ErrorKind::Inconsistent, "no characteristic factor vanishes at the element");
}

// Index of e among the canonically ordered complex roots of its minimal
// polynomial (ascending real part, then imaginary part).
inline int canonical_root_index(const UniPoly<Rational>& minpoly, const FieldElement& e) {
    std::vector<std::complex<double>> cs;
    for (auto& c : minpoly.c) cs.emplace_back(to_double(c), 0.0);
    auto roots = complex_roots(cs);
    sort_roots_canonically(roots);
    std::complex<double> v = e.approx();
    int best = 0;
    double bd = 1e300;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        double d = std::abs(roots[i] - v);
        if (d < bd) {
            bd = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

} // namespace germlab
