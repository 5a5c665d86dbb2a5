// series.hpp -- univariate truncated power series over a tower field.
// Coefficients of t^i for i < prec are exact; everything beyond is unknown.
#pragma once

#include <vector>

#include "germlab/mpoly.hpp"

namespace germlab {

struct UniSeries {
    std::vector<FieldElement> c; // ascending from t^0; only indices < prec are meaningful
    int prec = 1;

    UniSeries() = default;
    UniSeries(std::vector<FieldElement> coeffs, int precision) : c(std::move(coeffs)), prec(precision) {
        check_input(prec >= 1, "series precision must be >= 1");
        clamp();
    }
    static UniSeries zero(int precision) { return UniSeries({}, precision); }
    static UniSeries constant(FieldElement v, int precision) { return UniSeries({std::move(v)}, precision); }
    static UniSeries t_power(int k, int precision) {
        std::vector<FieldElement> v(static_cast<std::size_t>(k) + 1, FieldElement::zero());
        v.back() = FieldElement::one();
        return UniSeries(std::move(v), precision);
    }

    void clamp() {
        if (static_cast<int>(c.size()) > prec) c.resize(static_cast<std::size_t>(prec));
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool known_zero() const { return c.empty(); }
    // order of the visible part; prec when no nonzero term is visible
    int order() const {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) return static_cast<int>(i);
        return prec;
    }
    FieldElement coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(i)] : FieldElement::zero();
    }

    friend UniSeries operator+(const UniSeries& a, const UniSeries& b) {
        UniSeries r;
        r.prec = std::min(a.prec, b.prec);
        r.c.assign(std::max(a.c.size(), b.c.size()), FieldElement::zero());
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        r.clamp();
        return r;
    }
    friend UniSeries operator-(const UniSeries& a, const UniSeries& b) {
        UniSeries r;
        r.prec = std::min(a.prec, b.prec);
        r.c.assign(std::max(a.c.size(), b.c.size()), FieldElement::zero());
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        r.clamp();
        return r;
    }
    UniSeries operator-() const {
        UniSeries r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
        UniSeries r;
        r.prec = std::min(a.prec + b.order(), b.prec + a.order());
        if (r.prec < 1) r.prec = 1;
        if (a.known_zero() || b.known_zero()) return r;
        r.c.assign(std::min<std::size_t>(a.c.size() + b.c.size() - 1, static_cast<std::size_t>(r.prec)),
                   FieldElement::zero());
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c.size() && i + j < r.c.size(); ++j) {
                if (b.c[j].is_zero()) continue;
                r.c[i + j] += a.c[i] * b.c[j];
            }
        }
        r.clamp();
        return r;
    }
    UniSeries scaled(const FieldElement& s) const {
        UniSeries r = *this;
        for (auto& x : r.c) x = x * s;
        r.clamp();
        return r;
    }
    UniSeries shifted_up(int k) const { // multiply by t^k
        UniSeries r;
        r.prec = prec + k;
        r.c.assign(c.size() + static_cast<std::size_t>(k), FieldElement::zero());
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i + static_cast<std::size_t>(k)] = c[i];
        return r;
    }
    UniSeries truncated(int new_prec) const {
        UniSeries r = *this;
        r.prec = std::min(prec, new_prec);
        r.clamp();
        return r;
    }
    UniSeries pow(unsigned k) const {
        UniSeries r = constant(FieldElement::one(), 1 << 28);
        UniSeries b = *this;
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    // substitute t -> t^k
    UniSeries stretched(int k) const {
        UniSeries r;
        r.prec = prec * k;
        r.c.assign(c.empty() ? 0 : (c.size() - 1) * static_cast<std::size_t>(k) + 1, FieldElement::zero());
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i * static_cast<std::size_t>(k)] = c[i];
        r.clamp();
        return r;
    }
};

// Multiplicative inverse of a unit series (nonzero constant term).
inline UniSeries series_inverse(const UniSeries& s) {
    check_input(!s.coeff(0).is_zero(), "series inverse needs a unit (nonzero constant term)");
    FieldElement c0inv = s.coeff(0).inverse();
    UniSeries r = UniSeries::constant(c0inv, s.prec);
    // Newton: r <- r(2 - s r), doubling correct terms
    int correct = 1;
    while (correct < s.prec) {
        UniSeries two = UniSeries::constant(FieldElement(Rational(2)), s.prec);
        r = (r * (two - (s * r).truncated(s.prec))).truncated(s.prec);
        correct *= 2;
    }
    return r.truncated(s.prec);
}

// Composition s(g(t)); requires ord g >= 1.
inline UniSeries series_compose(const UniSeries& s, const UniSeries& g) {
    check_input(g.coeff(0).is_zero(), "series composition needs ord >= 1 inner series");
    int prec = std::min(s.prec, g.prec); // conservative; inner order >= 1
    UniSeries acc = UniSeries::zero(prec);
    UniSeries gp = UniSeries::constant(FieldElement::one(), 1 << 28);
    for (std::size_t i = 0; i < s.c.size(); ++i) {
        if (!s.c[i].is_zero()) acc = acc + gp.scaled(s.c[i]).truncated(prec);
        if (i + 1 < s.c.size()) gp = (gp * g).truncated(prec);
    }
    return acc;
}

// Compositional inverse of s = c1 t + ... with c1 != 0: returns r with
// s(r(t)) = t + O(t^prec).
inline UniSeries series_reverse(const UniSeries& s) {
    check_input(s.order() == 1, "series reversion needs order exactly 1 (nonzero linear coefficient)");
    const int prec = s.prec;
    FieldElement c1 = s.coeff(1);
    FieldElement c1inv = c1.inverse();
    std::vector<FieldElement> r{FieldElement::zero(), c1inv};
    for (int k = 2; k < prec; ++k) {
        UniSeries rk(r, prec);
        UniSeries comp = series_compose(s, rk);
        // s(r) = t + e_k t^k + ...; cancel e_k with r_k := -e_k / c1
        FieldElement ek = comp.coeff(k);
        r.push_back(-(ek * c1inv));
    }
    return UniSeries(std::move(r), prec);
}

// k-th root of a unit series with constant term 1: g with g^k = s.
inline UniSeries unit_series_root(const UniSeries& s, int k) {
    check_input(s.coeff(0).is_one(), "unit series root needs constant term 1");
    if (k == 1) return s;
    std::vector<FieldElement> g{FieldElement::one()};
    FieldElement kinv = FieldElement(Rational(1, k));
    for (int n = 1; n < s.prec; ++n) {
        UniSeries gk = UniSeries(g, n + 1).pow(static_cast<unsigned>(k)).truncated(n + 1);
        FieldElement diff = s.coeff(n) - gk.coeff(n);
        g.push_back(diff * kinv);
    }
    return UniSeries(std::move(g), s.prec);
}

// Evaluate a two-variable polynomial on a parametrized arc (x(t), y(t)).
inline UniSeries evaluate_on_param(const MPoly& f, const UniSeries& xs, const UniSeries& ys) {
    int prec = std::min(xs.prec, ys.prec);
    std::vector<UniSeries> xp{UniSeries::constant(FieldElement::one(), 1 << 28)};
    std::vector<UniSeries> yp{UniSeries::constant(FieldElement::one(), 1 << 28)};
    UniSeries acc = UniSeries::zero(prec + std::max(f.order(), 0) * std::max(std::min(xs.order(), ys.order()) - 1, 0));
    for (auto& [e, coeff] : f.t) {
        check_input(e[2] == 0 && e[3] == 0, "evaluate_on_param expects a two-variable polynomial");
        while (static_cast<int>(xp.size()) <= e[0]) xp.push_back(xp.back() * xs);
        while (static_cast<int>(yp.size()) <= e[1]) yp.push_back(yp.back() * ys);
        acc = acc + (xp[static_cast<std::size_t>(e[0])] * yp[static_cast<std::size_t>(e[1])]).scaled(coeff);
    }
    return acc;
}

// Evaluate a truncated series on an arc; the result's precision also reflects
// the contribution the unseen terms (total degree >= D.precision) could make.
inline UniSeries evaluate_trunc_on_param(const TruncSeries& d, const UniSeries& xs, const UniSeries& ys) {
    UniSeries r = evaluate_on_param(d.body, xs, ys);
    long scale = std::min(xs.order(), ys.order());
    if (scale < 1) scale = 1;
    long bound = static_cast<long>(d.precision) * scale;
    if (bound < r.prec) {
        r.prec = static_cast<int>(bound);
        r.clamp();
    }
    return r;
}

} // namespace germlab
