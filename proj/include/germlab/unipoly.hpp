// unipoly.hpp -- dense univariate polynomials over a generic coefficient ring.
// Instantiated with FieldElement for tower arithmetic, and with MPoly for the
// nested views used by resultants and multivariate gcd.
//
// Ring requirements on T: default-constructible zero, +, -, unary -, *,
// is_zero(), ==, and a free function exact_div(a, b) performing guaranteed
// exact division.  Field-only operations additionally use inverse via '/'.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "germlab/errors.hpp"
#include "germlab/field_tower.hpp"

namespace germlab {

inline FieldElement exact_div(const FieldElement& a, const FieldElement& b) { return a / b; }
inline FieldElement scale_int(const FieldElement& a, long k) { return a * FieldElement(Rational(k)); }
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
inline Rational scale_int(const Rational& a, long k) { return a * k; }

template <class T>
bool ring_is_zero(const T& t) { return t.is_zero(); }
inline bool ring_is_zero(const Rational& t) { return t == 0; }

template <class T>
struct ring_one {
    static T get() { return T(Rational(1)); }
};
template <>
struct ring_one<FieldElement> {
    static FieldElement get() { return FieldElement::one(); }
};

template <class T>
class UniPoly;
template <class U>
struct ring_one<UniPoly<U>> {
    static UniPoly<U> get() { return UniPoly<U>::constant(ring_one<U>::get()); }
};
template <class U>
UniPoly<U> scale_int(const UniPoly<U>& p, long k);

template <class T>
class UniPoly {
  public:
    std::vector<T> c; // ascending coefficients; normalized: no trailing zeros

    UniPoly() = default;
    explicit UniPoly(std::vector<T> coeffs) : c(std::move(coeffs)) { normalize(); }
    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(T v) {
        UniPoly p;
        if (!ring_is_zero(v)) p.c.push_back(std::move(v));
        return p;
    }
    static UniPoly variable() {
        UniPoly p;
        p.c = {T(), ring_one<T>::get()};
        return p;
    }
    static UniPoly monomial(T v, std::size_t e) {
        UniPoly p;
        if (ring_is_zero(v)) return p;
        p.c.assign(e + 1, T());
        p.c[e] = std::move(v);
        return p;
    }

    void normalize() {
        while (!c.empty() && ring_is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const T& lc() const {
        check_input(!c.empty(), "leading coefficient of zero polynomial");
        return c.back();
    }
    T coeff(std::size_t i) const { return i < c.size() ? c[i] : T(); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        UniPoly r = a;
        if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), T());
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
        r.normalize();
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        UniPoly r = a;
        if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), T());
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
        r.normalize();
        return r;
    }
    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        UniPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, T());
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (ring_is_zero(a.c[i])) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j) {
                if (ring_is_zero(b.c[j])) continue;
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
            }
        }
        r.normalize();
        return r;
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return (a - b).is_zero(); }

    UniPoly scaled(const T& s) const {
        UniPoly r = *this;
        for (auto& x : r.c) x = x * s;
        r.normalize();
        return r;
    }
    UniPoly shifted_up(std::size_t k) const { // multiply by x^k
        if (is_zero() || k == 0) return *this;
        UniPoly r;
        r.c.assign(c.size() + k, T());
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
        return r;
    }

    UniPoly derivative() const {
        UniPoly r;
        for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(scale_int(c[i], static_cast<long>(i)));
        r.normalize();
        return r;
    }

    template <class X>
    X evaluate(const X& x) const {
        X v{};
        bool first = true;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (first) {
                v = X(c[i]);
                first = false;
            } else {
                v = v * x + X(c[i]);
            }
        }
        return v;
    }
    T evaluate_t(const T& x) const {
        T v = T();
        for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    }

    UniPoly pow(unsigned e) const {
        UniPoly r = constant(ring_one<T>::get());
        UniPoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    UniPoly compose(const UniPoly& inner) const {
        UniPoly v;
        for (std::size_t i = c.size(); i-- > 0;) v = v * inner + constant(c[i]);
        return v;
    }
};

template <class U>
UniPoly<U> scale_int(const UniPoly<U>& p, long k) {
    UniPoly<U> r = p;
    for (auto& x : r.c) x = scale_int(x, k);
    r.normalize();
    return r;
}

// Division with remainder; requires invertible leading coefficient (field T).
template <class T>
std::pair<UniPoly<T>, UniPoly<T>> divrem(const UniPoly<T>& a, const UniPoly<T>& b) {
    check_input(!b.is_zero(), "polynomial division by zero");
    UniPoly<T> q, r = a;
    T inv_lead = ring_one<T>::get() / b.lc();
    if (r.degree() >= b.degree()) q.c.assign(static_cast<std::size_t>(r.degree() - b.degree()) + 1, T());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        T f = r.lc() * inv_lead;
        q.c[shift] = q.c[shift] + f;
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] = r.c[shift + i] - f * b.c[i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + rem.
template <class T>
UniPoly<T> pseudo_rem(const UniPoly<T>& a, const UniPoly<T>& b) {
    check_input(!b.is_zero(), "pseudo-division by zero");
    UniPoly<T> r = a;
    int e = a.degree() - b.degree() + 1;
    if (e <= 0) return r;
    const T& d = b.lc();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        T f = r.lc();
        for (auto& x : r.c) x = x * d;
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] = r.c[shift + i] - f * b.c[i];
        r.normalize();
        --e;
    }
    // Pad remaining multiplications so the multiplier is exactly lc^(delta+1).
    while (e-- > 0)
        for (auto& x : r.c) x = x * d;
    return r;
}

// Exact division of polynomials over a ring (asserts exactness).
template <class T>
UniPoly<T> exact_div(const UniPoly<T>& a, const UniPoly<T>& b) {
    check_input(!b.is_zero(), "exact division by zero polynomial");
    if (a.is_zero()) return a;
    check_input(a.degree() >= b.degree(), "inexact polynomial division");
    UniPoly<T> q, r = a;
    q.c.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, T());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        T f = exact_div(r.lc(), b.lc());
        q.c[shift] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] = r.c[shift + i] - f * b.c[i];
        r.normalize();
    }
    check_input(r.is_zero(), "inexact polynomial division (nonzero remainder)");
    q.normalize();
    return q;
}

template <class T>
UniPoly<T> scalar_div(const UniPoly<T>& a, const T& s) {
    UniPoly<T> r = a;
    for (auto& x : r.c) x = exact_div(x, s);
    return r;
}

// Resultant by the subresultant pseudo-remainder sequence.  Matches the sign
// of the Sylvester determinant whose first deg(q) rows hold p's coefficients.
template <class T>
T resultant(UniPoly<T> a, UniPoly<T> b) {
    check_input(!a.is_zero() || !b.is_zero(), "resultant of two zero polynomials is undefined");
    if (a.is_zero() || b.is_zero()) return T();
    bool negate = false;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) negate = true;
        std::swap(a, b);
    }
    if (b.degree() == 0) {
        T r = ring_one<T>::get();
        for (int i = 0; i < a.degree(); ++i) r = r * b.lc();
        return negate ? -r : r;
    }
    T g = ring_one<T>::get(), h = ring_one<T>::get();
    T s = ring_one<T>::get();
    if (negate) s = -s;
    while (true) {
        int delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
        UniPoly<T> r = pseudo_rem(a, b);
        a = b;
        T divisor = g;
        for (int i = 0; i < delta; ++i) divisor = divisor * h;
        b = scalar_div(r, divisor);
        g = a.lc();
        if (delta >= 1) {
            T hn = g;
            for (int i = 1; i < delta; ++i) hn = hn * g;
            for (int i = 1; i < delta; ++i) hn = exact_div(hn, h);
            h = hn;
        }
        if (b.is_zero()) return T();
        if (b.degree() == 0) {
            int da = a.degree();
            T num = ring_one<T>::get();
            for (int i = 0; i < da; ++i) num = num * b.lc();
            for (int i = 1; i < da; ++i) num = exact_div(num, h);
            return s * num;
        }
    }
}

// Plain Euclidean gcd over a field, monic-normalized result.
template <class T>
UniPoly<T> gcd_field(UniPoly<T> a, UniPoly<T> b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scaled(ring_one<T>::get() / a.lc());
    return a;
}

// Yun's squarefree decomposition over a field of characteristic zero:
// returns [(f1,1), (f2,2), ...] with input = lc * prod fi^i, fi squarefree,
// pairwise coprime, monic.
template <class T>
std::vector<std::pair<UniPoly<T>, int>> squarefree_decomposition(const UniPoly<T>& f) {
    check_input(!f.is_zero(), "squarefree decomposition of zero");
    std::vector<std::pair<UniPoly<T>, int>> out;
    UniPoly<T> p = f.scaled(ring_one<T>::get() / f.lc());
    if (p.degree() == 0) return out;
    UniPoly<T> d = p.derivative();
    UniPoly<T> g = gcd_field(p, d);
    UniPoly<T> w = divrem(p, g).first;
    UniPoly<T> y = divrem(d, g).first;
    UniPoly<T> z = y - w.derivative();
    int i = 1;
    while (!w.is_zero() && w.degree() > 0) {
        UniPoly<T> gi = gcd_field(w, z);
        if (gi.degree() > 0) out.emplace_back(gi, i);
        w = divrem(w, gi).first;
        y = divrem(z, gi).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

// Reference Sylvester-determinant resultant (cofactor expansion); used by the
// test suite as an independent oracle for small degrees.
template <class T>
T sylvester_resultant(const UniPoly<T>& p, const UniPoly<T>& q) {
    check_input(!p.is_zero() && !q.is_zero(), "Sylvester resultant needs nonzero inputs");
    int m = p.degree(), n = q.degree();
    std::size_t size = static_cast<std::size_t>(m + n);
    if (size == 0) return ring_one<T>::get();
    std::vector<std::vector<T>> a(size, std::vector<T>(size, T()));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = p.c[static_cast<std::size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = q.c[static_cast<std::size_t>(n - k)];
    // cofactor expansion along the first column, recursively
    std::vector<std::size_t> rows(size);
    for (std::size_t i = 0; i < size; ++i) rows[i] = i;
    struct Rec {
        const std::vector<std::vector<T>>& a;
        T run(std::vector<std::size_t> rows, std::size_t col, std::size_t size) {
            if (col == size) return ring_one<T>::get();
            T acc = T();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const T& v = a[rows[i]][col];
                if (ring_is_zero(v)) continue;
                std::vector<std::size_t> rest;
                rest.reserve(rows.size() - 1);
                for (std::size_t j = 0; j < rows.size(); ++j)
                    if (j != i) rest.push_back(rows[j]);
                T sub = run(std::move(rest), col + 1, size);
                T term = v * sub;
                if (i & 1) term = -term;
                acc = acc + term;
            }
            return acc;
        }
    } rec{a};
    return rec.run(rows, 0, size);
}

} // namespace germlab
