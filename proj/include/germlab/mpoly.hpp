// mpoly.hpp -- sparse polynomials over a tower field in up to four variables.
// Slots 0,1 are the working plane ((x,y) at the source, (u,v) at the target);
// slots 2,3 serve elimination and pencil parameters.  Germs are the 2-variable
// case; nothing here assumes more structure than a commutative UFD needs.
#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "germlab/factor.hpp"
#include "germlab/unipoly.hpp"

namespace germlab {

using Exp = std::array<int, 4>;

inline Exp exp2(int i, int j) { return Exp{i, j, 0, 0}; }

class MPoly {
  public:
    std::map<Exp, FieldElement> t;

    MPoly() = default;
    explicit MPoly(Rational r) {
        if (r != 0) t.emplace(Exp{0, 0, 0, 0}, FieldElement(std::move(r)));
    }
    explicit MPoly(FieldElement e) {
        if (!e.is_zero()) t.emplace(Exp{0, 0, 0, 0}, std::move(e));
    }
    static MPoly zero() { return MPoly(); }
    static MPoly one() { return MPoly(Rational(1)); }
    static MPoly monomial(FieldElement c, Exp e) {
        MPoly p;
        if (!c.is_zero()) p.t.emplace(e, std::move(c));
        return p;
    }
    static MPoly variable(int v) {
        Exp e{0, 0, 0, 0};
        e[static_cast<std::size_t>(v)] = 1;
        return monomial(FieldElement::one(), e);
    }

    bool is_zero() const { return t.empty(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first == Exp{0, 0, 0, 0}); }
    FieldElement constant_term() const {
        auto it = t.find(Exp{0, 0, 0, 0});
        return it == t.end() ? FieldElement::zero() : it->second;
    }
    bool is_unit_germ() const { return !constant_term().is_zero(); } // nonzero at the origin

    void add_term(const Exp& e, const FieldElement& c) {
        if (c.is_zero()) return;
        auto it = t.find(e);
        if (it == t.end()) {
            t.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (auto& [e, c] : b.t) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (auto& [e, c] : b.t) r.add_term(e, -c);
        return r;
    }
    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.t) c = -c;
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (auto& [ea, ca] : a.t)
            for (auto& [eb, cb] : b.t) {
                Exp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly scaled(const FieldElement& s) const {
        if (s.is_zero()) return {};
        MPoly r = *this;
        for (auto& [e, c] : r.t) c = c * s;
        return r;
    }

    MPoly pow(unsigned k) const {
        MPoly r = one(), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    MPoly derivative(int v) const {
        MPoly r;
        for (auto& [e, c] : t) {
            int k = e[static_cast<std::size_t>(v)];
            if (k == 0) continue;
            Exp e2 = e;
            e2[static_cast<std::size_t>(v)] = k - 1;
            r.add_term(e2, scale_int(c, k));
        }
        return r;
    }

    int degree(int v) const {
        int d = -1;
        for (auto& [e, c] : t) d = std::max(d, e[static_cast<std::size_t>(v)]);
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : t) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
        return d;
    }
    int order() const { // minimal total degree; -1 for zero
        int d = -1;
        for (auto& [e, c] : t) {
            int s = e[0] + e[1] + e[2] + e[3];
            if (d < 0 || s < d) d = s;
        }
        return d;
    }
    int order(int v) const { // minimal exponent of v; -1 for zero
        int d = -1;
        for (auto& [e, c] : t) {
            int s = e[static_cast<std::size_t>(v)];
            if (d < 0 || s < d) d = s;
        }
        return d;
    }

    MPoly truncated_total(int prec) const { // keep total degree < prec
        MPoly r;
        for (auto& [e, c] : t)
            if (e[0] + e[1] + e[2] + e[3] < prec) r.t.emplace(e, c);
        return r;
    }

    // Substitute variable v by a polynomial (other exponents untouched).
    MPoly substituted(int v, const MPoly& value) const {
        std::vector<MPoly> powers{one()};
        MPoly r;
        for (auto& [e, c] : t) {
            int k = e[static_cast<std::size_t>(v)];
            while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * value);
            Exp e2 = e;
            e2[static_cast<std::size_t>(v)] = 0;
            r += MPoly::monomial(c, e2) * powers[static_cast<std::size_t>(k)];
        }
        return r;
    }

    FieldElement evaluate(const std::array<FieldElement, 4>& xs) const {
        FieldElement r = FieldElement::zero();
        for (auto& [e, c] : t) {
            FieldElement v = c;
            for (std::size_t i = 0; i < 4; ++i)
                if (e[i]) v = v * xs[i].pow(e[i]);
            r += v;
        }
        return r;
    }

    TowerPtr tower() const {
        TowerPtr k = nullptr;
        for (auto& [e, c] : t) k = deeper_tower(k, c.tower());
        return k;
    }

    bool is_rational() const {
        for (auto& [e, c] : t)
            if (!c.is_rational()) return false;
        return true;
    }

    std::string to_string(const std::array<std::string, 4>& names = {"x", "y", "z", "w"}) const;
};

inline MPoly scale_int(const MPoly& p, long k) { return p.scaled(FieldElement(Rational(k))); }

// --- UniPoly view along one variable: coefficients keep the other slots ---

inline UniPoly<MPoly> as_unipoly(const MPoly& p, int v) {
    UniPoly<MPoly> r;
    for (auto& [e, c] : p.t) {
        std::size_t k = static_cast<std::size_t>(e[static_cast<std::size_t>(v)]);
        if (r.c.size() <= k) r.c.resize(k + 1, MPoly());
        Exp e2 = e;
        e2[static_cast<std::size_t>(v)] = 0;
        r.c[k].add_term(e2, c);
    }
    r.normalize();
    return r;
}

inline MPoly from_unipoly(const UniPoly<MPoly>& p, int v) {
    MPoly r;
    for (std::size_t k = 0; k < p.c.size(); ++k)
        for (auto& [e, c] : p.c[k].t) {
            Exp e2 = e;
            e2[static_cast<std::size_t>(v)] += static_cast<int>(k);
            r.add_term(e2, c);
        }
    return r;
}

// Exact division (asserts divisibility): leading-term reduction in lex order.
inline MPoly exact_div(const MPoly& a, const MPoly& b) {
    check_input(!b.is_zero(), "multivariate division by zero");
    MPoly r = a, q;
    const auto& bl = *b.t.rbegin();
    while (!r.is_zero()) {
        const auto& rl = *r.t.rbegin();
        Exp e;
        bool ok = true;
        for (std::size_t i = 0; i < 4; ++i) {
            e[i] = rl.first[i] - bl.first[i];
            if (e[i] < 0) ok = false;
        }
        check_input(ok, "inexact multivariate division");
        MPoly m = MPoly::monomial(rl.second / bl.second, e);
        q += m;
        r -= m * b;
    }
    return q;
}

inline bool divides(const MPoly& b, const MPoly& a, MPoly* quotient = nullptr) {
    if (a.is_zero()) {
        if (quotient) *quotient = MPoly();
        return true;
    }
    if (b.is_zero()) return false;
    MPoly r = a, q;
    const auto& bl = *b.t.rbegin();
    while (!r.is_zero()) {
        const auto& rl = *r.t.rbegin();
        Exp e;
        for (std::size_t i = 0; i < 4; ++i) {
            e[i] = rl.first[i] - bl.first[i];
            if (e[i] < 0) return false;
        }
        MPoly m = MPoly::monomial(rl.second / bl.second, e);
        q += m;
        r -= m * b;
    }
    if (quotient) *quotient = q;
    return true;
}

// --- multivariate gcd by primitive pseudo-remainder sequences ---

namespace detail {
inline int highest_variable(const MPoly& p) {
    int hv = -1;
    for (auto& [e, c] : p.t)
        for (int v = 0; v < 4; ++v)
            if (e[static_cast<std::size_t>(v)] > 0) hv = std::max(hv, v);
    return hv;
}
} // namespace detail

inline MPoly mpoly_gcd(MPoly a, MPoly b);

inline MPoly mpoly_content(const UniPoly<MPoly>& p) {
    MPoly g;
    for (auto& c : p.c) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : mpoly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) return MPoly::one();
    }
    return g.is_zero() ? MPoly() : g;
}

inline MPoly mpoly_gcd(MPoly a, MPoly b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int va = detail::highest_variable(a), vb = detail::highest_variable(b);
    int v = std::max(va, vb);
    if (v < 0) return MPoly::one(); // both nonzero constants over a field
    if (va < 0 || vb < 0) return MPoly::one();
    auto ua = as_unipoly(a, v);
    auto ub = as_unipoly(b, v);
    MPoly ca = mpoly_content(ua), cb = mpoly_content(ub);
    MPoly cg = mpoly_gcd(ca, cb);
    UniPoly<MPoly> pa, pb;
    {
        UniPoly<MPoly> tmp = ua;
        for (auto& c : tmp.c)
            if (!c.is_zero()) c = exact_div(c, ca);
        pa = tmp;
        tmp = ub;
        for (auto& c : tmp.c)
            if (!c.is_zero()) c = exact_div(c, cb);
        pb = tmp;
    }
    if (pa.degree() < pb.degree()) std::swap(pa, pb);
    while (!pb.is_zero() && pb.degree() > 0) {
        UniPoly<MPoly> r = pseudo_rem(pa, pb);
        if (!r.is_zero()) {
            MPoly cr = mpoly_content(r);
            for (auto& c : r.c)
                if (!c.is_zero()) c = exact_div(c, cr);
        }
        pa = std::move(pb);
        pb = std::move(r);
    }
    if (!pb.is_zero()) return cg; // coprime in the main variable
    MPoly g = cg * from_unipoly(pa, v);
    // normalize so the lex-leading coefficient is 1
    if (!g.is_zero()) g = g.scaled(g.t.rbegin()->second.inverse());
    return g;
}

// gcd(f, f_x, f_y, ...) over the variables actually present.
inline MPoly mpoly_gcd_with_partials(const MPoly& f) {
    MPoly g = f;
    for (int v = 0; v < 4; ++v) {
        MPoly d = f.derivative(v);
        if (!d.is_zero() || f.degree(v) > 0) g = mpoly_gcd(g, d);
        if (g.is_constant() && !g.is_zero()) return MPoly::one();
    }
    return g;
}

inline MPoly squarefree_part(const MPoly& f) {
    check_input(!f.is_zero(), "squarefree part of zero");
    if (f.is_constant()) return MPoly::one();
    MPoly w = mpoly_gcd_with_partials(f);
    if (w.is_constant()) {
        MPoly g = f;
        return g.scaled(g.t.rbegin()->second.inverse());
    }
    MPoly s = exact_div(f, w);
    return s.scaled(s.t.rbegin()->second.inverse());
}

// Full multiplicity decomposition: input = unit * prod part_i ^ i with each
// part squarefree and pairwise coprime (parts may be reducible).
inline std::vector<std::pair<MPoly, int>> squarefree_decomposition(const MPoly& f) {
    check_input(!f.is_zero(), "squarefree decomposition of zero");
    std::vector<MPoly> chain{f}; // chain[k] = prod p^{e-k} over factors with e > k
    while (!chain.back().is_constant()) chain.push_back(mpoly_gcd_with_partials(chain.back()));
    // s_k = squarefree part of chain[k] = prod of factors with multiplicity > k
    std::vector<MPoly> s;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) s.push_back(squarefree_part(chain[k]));
    std::vector<std::pair<MPoly, int>> out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        MPoly part = (k + 1 < s.size()) ? exact_div(s[k], s[k + 1]) : s[k];
        if (!part.is_constant()) out.emplace_back(part, static_cast<int>(k) + 1);
    }
    return out;
}

// --- conversions with single-variable polynomials over the tower ---

inline UniPoly<FieldElement> to_field_poly(const MPoly& p, int v) {
    UniPoly<FieldElement> r;
    for (auto& [e, c] : p.t) {
        for (int i = 0; i < 4; ++i)
            check_input(i == v || e[static_cast<std::size_t>(i)] == 0, "polynomial is not univariate");
        std::size_t k = static_cast<std::size_t>(e[static_cast<std::size_t>(v)]);
        if (r.c.size() <= k) r.c.resize(k + 1, FieldElement());
        r.c[k] = c;
    }
    r.normalize();
    return r;
}

inline MPoly from_field_poly(const UniPoly<FieldElement>& p, int v) {
    MPoly r;
    for (std::size_t k = 0; k < p.c.size(); ++k) {
        Exp e{0, 0, 0, 0};
        e[static_cast<std::size_t>(v)] = static_cast<int>(k);
        r.add_term(e, p.c[k]);
    }
    return r;
}

inline std::string MPoly::to_string(const std::array<std::string, 4>& names) const {
    if (t.empty()) return "0";
    std::string out;
    for (auto& [e, c] : t) {
        std::string term;
        bool have_var = e[0] || e[1] || e[2] || e[3];
        if (!have_var || !c.is_one()) {
            std::string cs = c.to_string();
            if (cs.find('+') != std::string::npos || (cs.find('*') != std::string::npos && have_var))
                cs = "(" + cs + ")";
            term = cs;
        }
        for (std::size_t i = 0; i < 4; ++i) {
            if (!e[i]) continue;
            if (!term.empty()) term += "*";
            term += names[i];
            if (e[i] > 1) term += "^" + std::to_string(e[i]);
        }
        if (out.empty())
            out = term;
        else
            out += " + " + term;
    }
    return out;
}

// --- truncated power series in the two plane variables ---
//
// Terms of total degree < precision are exact; everything at or above the
// cutoff is unknown and kept out of the body.
struct TruncSeries {
    MPoly body;
    int precision = 1;

    TruncSeries() = default;
    TruncSeries(MPoly b, int prec) : body(b.truncated_total(prec)), precision(prec) {
        check_input(prec >= 1, "series precision must be >= 1");
    }

    bool is_zero() const { return body.is_zero(); }
    int order() const { return body.is_zero() ? precision : body.order(); }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        int p = std::min(a.precision, b.precision);
        return TruncSeries(a.body + b.body, p);
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        int p = std::min(a.precision, b.precision);
        return TruncSeries(a.body - b.body, p);
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        int orda = a.body.is_zero() ? a.precision : a.body.order();
        int ordb = b.body.is_zero() ? b.precision : b.body.order();
        int p = std::min(a.precision + ordb, b.precision + orda);
        p = std::max(p, 1);
        return TruncSeries(a.body * b.body, p);
    }
    TruncSeries pow(unsigned k) const {
        TruncSeries r(MPoly::one(), kExactPrecision);
        TruncSeries b = *this;
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    static constexpr int kExactPrecision = 1 << 28;
};

// A polynomial seen as an exact series (no truncation has happened).
inline TruncSeries exact_series(const MPoly& p) { return TruncSeries(p, TruncSeries::kExactPrecision); }

} // namespace germlab
