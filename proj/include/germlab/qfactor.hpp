// qfactor.hpp -- complete factorization of univariate polynomials over Q.
// Pipeline: squarefree decomposition, rational-root extraction, then a
// deterministic Berlekamp + Hensel-lifting + recombination step for whatever
// remains.  Degrees are desk-scale; everything is exact.
#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "germlab/rational.hpp"
#include "germlab/unipoly.hpp"

namespace germlab {

namespace zf {

using ZPoly = std::vector<Integer>;       // ascending, no trailing zeros
using PPoly = std::vector<std::int64_t>;  // ascending, coefficients in [0,p)

inline void znorm(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }
inline void pnorm(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int pdeg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    znorm(r);
    return r;
}

inline ZPoly zmod(ZPoly f, const Integer& m) {
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
    }
    znorm(f);
    return f;
}

inline ZPoly zcenter(ZPoly f, const Integer& m) {
    Integer half = m / 2;
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
        if (c > half) c -= m;
    }
    znorm(f);
    return f;
}

// Exact division by a monic divisor in Z[x]; true and quotient when exact.
inline bool zdiv_monic(const ZPoly& a, const ZPoly& b, ZPoly& q) {
    q.clear();
    ZPoly r = a;
    znorm(r);
    if (zdeg(b) < 0 || b.back() != 1) return false;
    if (r.empty()) return true;
    if (zdeg(r) < zdeg(b)) return false;
    q.assign(static_cast<std::size_t>(zdeg(r) - zdeg(b)) + 1, Integer(0));
    while (!r.empty() && zdeg(r) >= zdeg(b)) {
        std::size_t shift = static_cast<std::size_t>(zdeg(r) - zdeg(b));
        Integer f = r.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
        znorm(r);
    }
    return r.empty();
}

// Division with remainder in (Z/m)[x] by a monic divisor.
inline void zdivrem_monic_mod(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly& q, ZPoly& r) {
    q.clear();
    r = zmod(a, m);
    if (zdeg(r) < zdeg(b)) return;
    q.assign(static_cast<std::size_t>(zdeg(r) - zdeg(b)) + 1, Integer(0));
    while (!r.empty() && zdeg(r) >= zdeg(b)) {
        std::size_t shift = static_cast<std::size_t>(zdeg(r) - zdeg(b));
        Integer f = r.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[shift + i] -= f * b[i];
            r[shift + i] %= m;
            if (r[shift + i] < 0) r[shift + i] += m;
        }
        znorm(r);
    }
}

inline ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) { return zmod(zmul(a, b), m); }
inline ZPoly zadd_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r = a;
    if (r.size() < b.size()) r.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return zmod(std::move(r), m);
}
inline ZPoly zsub_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r = a;
    if (r.size() < b.size()) r.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return zmod(std::move(r), m);
}

// ---- arithmetic mod a small prime ----

inline std::int64_t pinv(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return ((t % p) + p) % p;
}

inline PPoly pmul(const PPoly& a, const PPoly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    pnorm(r);
    return r;
}

inline PPoly pmod_poly(PPoly a, const PPoly& b, std::int64_t p) {
    pnorm(a);
    std::int64_t inv = pinv(b.back(), p);
    while (!a.empty() && pdeg(a) >= pdeg(b)) {
        std::size_t shift = static_cast<std::size_t>(pdeg(a) - pdeg(b));
        std::int64_t f = a.back() * inv % p;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - f * b[i]) % p + p) % p;
        pnorm(a);
    }
    return a;
}

inline std::pair<PPoly, PPoly> pdivrem(PPoly a, const PPoly& b, std::int64_t p) {
    pnorm(a);
    PPoly q;
    if (pdeg(a) >= pdeg(b)) q.assign(static_cast<std::size_t>(pdeg(a) - pdeg(b)) + 1, 0);
    std::int64_t inv = pinv(b.back(), p);
    while (!a.empty() && pdeg(a) >= pdeg(b)) {
        std::size_t shift = static_cast<std::size_t>(pdeg(a) - pdeg(b));
        std::int64_t f = a.back() * inv % p;
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - f * b[i]) % p + p) % p;
        pnorm(a);
    }
    pnorm(q);
    return {q, a};
}

inline PPoly pgcd(PPoly a, PPoly b, std::int64_t p) {
    pnorm(a);
    pnorm(b);
    while (!b.empty()) {
        PPoly r = pmod_poly(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::int64_t inv = pinv(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

inline PPoly pderiv(const PPoly& a, std::int64_t p) {
    PPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(static_cast<std::int64_t>(i) % p * a[i] % p);
    pnorm(r);
    return r;
}

inline PPoly ppowmod(PPoly base, Integer e, const PPoly& m, std::int64_t p) {
    PPoly r{1};
    base = pmod_poly(std::move(base), m, p);
    while (e > 0) {
        if ((e & 1) != 0) r = pmod_poly(pmul(r, base, p), m, p);
        base = pmod_poly(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// Extended Euclid in F_p[x]: s*a + t*b = 1 for coprime a, b.
inline void pbezout(const PPoly& a, const PPoly& b, std::int64_t p, PPoly& s, PPoly& t) {
    PPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    pnorm(r0);
    pnorm(r1);
    while (!r1.empty()) {
        auto [q, r2] = pdivrem(r0, r1, p);
        PPoly s2 = s0, t2 = t0;
        PPoly qs = pmul(q, s1, p), qt = pmul(q, t1, p);
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = ((s2[i] - qs[i]) % p + p) % p;
        if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
        for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = ((t2[i] - qt[i]) % p + p) % p;
        pnorm(s2);
        pnorm(t2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    check_input(pdeg(r0) == 0, "bezout of non-coprime polynomials");
    std::int64_t inv = pinv(r0[0], p);
    s = s0;
    t = t0;
    for (auto& c : s) c = c * inv % p;
    for (auto& c : t) c = c * inv % p;
}

// Berlekamp factorization of a monic squarefree polynomial mod p.
inline std::vector<PPoly> berlekamp(const PPoly& f, std::int64_t p) {
    const int n = pdeg(f);
    if (n <= 1) return {f};
    const std::size_t un = static_cast<std::size_t>(n);
    // Petr matrix rows: x^(i*p) mod f
    std::vector<std::vector<std::int64_t>> q(un, std::vector<std::int64_t>(un, 0));
    PPoly xp = ppowmod(PPoly{0, 1}, Integer(p), f, p);
    PPoly cur{1};
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t j = 0; j < cur.size(); ++j) q[i][j] = cur[j];
        cur = pmod_poly(pmul(cur, xp, p), f, p);
    }
    // kernel of (Q^T - I): vectors v (as polynomials) with v(x)^p = v(x) mod f
    std::vector<std::vector<std::int64_t>> m(un, std::vector<std::int64_t>(un, 0));
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j) m[i][j] = ((q[j][i] - (i == j ? 1 : 0)) % p + p) % p;
    std::vector<int> pivot_col(un, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < un && row < un; ++col) {
        std::size_t piv = row;
        while (piv < un && m[piv][col] == 0) ++piv;
        if (piv == un) continue;
        std::swap(m[piv], m[row]);
        std::int64_t inv = pinv(m[row][col], p);
        for (std::size_t j = 0; j < un; ++j) m[row][j] = m[row][j] * inv % p;
        for (std::size_t r2 = 0; r2 < un; ++r2) {
            if (r2 == row || m[r2][col] == 0) continue;
            std::int64_t f2 = m[r2][col];
            for (std::size_t j = 0; j < un; ++j) m[r2][j] = ((m[r2][j] - f2 * m[row][j]) % p + p) % p;
        }
        pivot_col[row] = static_cast<int>(col);
        ++row;
    }
    std::vector<bool> is_pivot(un, false);
    for (std::size_t r2 = 0; r2 < row; ++r2) is_pivot[static_cast<std::size_t>(pivot_col[r2])] = true;
    std::vector<PPoly> kernel;
    for (std::size_t fc = 0; fc < un; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<std::int64_t> v(un, 0);
        v[fc] = 1;
        for (std::size_t r2 = 0; r2 < row; ++r2)
            v[static_cast<std::size_t>(pivot_col[r2])] = (p - m[r2][fc]) % p;
        PPoly vk(v.begin(), v.end());
        pnorm(vk);
        kernel.push_back(std::move(vk));
    }
    const std::size_t target = kernel.size();
    std::vector<PPoly> factors{f};
    for (const auto& v : kernel) {
        if (factors.size() >= target) break;
        if (pdeg(v) < 1) continue;
        std::vector<PPoly> next;
        for (auto& fac : factors) {
            if (pdeg(fac) <= 1) {
                next.push_back(fac);
                continue;
            }
            PPoly rest = fac;
            for (std::int64_t c = 0; c < p && pdeg(rest) > 0; ++c) {
                PPoly shifted = v;
                if (shifted.empty()) shifted.push_back(0);
                shifted[0] = ((shifted[0] - c) % p + p) % p;
                pnorm(shifted);
                if (shifted.empty()) continue;
                PPoly g = pgcd(rest, shifted, p);
                if (pdeg(g) >= 1 && pdeg(g) < pdeg(rest)) {
                    next.push_back(g);
                    rest = pdivrem(rest, g, p).first;
                }
            }
            if (pdeg(rest) >= 1) next.push_back(rest);
        }
        factors = std::move(next);
    }
    for (auto& fac : factors) {
        std::int64_t inv = pinv(fac.back(), p);
        for (auto& c : fac) c = c * inv % p;
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

// One quadratic Hensel step: from factorization/Bezout mod m to mod m^2.
// All of f, g, h monic.
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m) {
    Integer m2 = m * m;
    ZPoly e = zsub_mod(zmod(f, m2), zmul_mod(g, h, m2), m2);
    ZPoly q, r;
    zdivrem_monic_mod(zmul_mod(s, e, m2), h, m2, q, r);
    ZPoly gstar = zadd_mod(zadd_mod(g, zmul_mod(t, e, m2), m2), zmul_mod(q, g, m2), m2);
    ZPoly hstar = zadd_mod(h, r, m2);
    ZPoly b = zsub_mod(zadd_mod(zmul_mod(s, gstar, m2), zmul_mod(t, hstar, m2), m2), ZPoly{1}, m2);
    ZPoly c, d;
    zdivrem_monic_mod(zmul_mod(s, b, m2), hstar, m2, c, d);
    ZPoly sstar = zsub_mod(s, d, m2);
    ZPoly tstar = zsub_mod(zsub_mod(t, zmul_mod(t, b, m2), m2), zmul_mod(c, gstar, m2), m2);
    g = std::move(gstar);
    h = std::move(hstar);
    s = std::move(sstar);
    t = std::move(tstar);
}

// Lift the modular factorization of monic f to the target modulus p^(2^j).
inline std::vector<ZPoly> hensel_lift_tree(const ZPoly& f, const std::vector<PPoly>& modular, std::int64_t p,
                                           const Integer& target) {
    if (modular.size() == 1) return {zmod(f, target)};
    std::size_t half = modular.size() / 2;
    PPoly g0{1}, h0{1};
    for (std::size_t i = 0; i < half; ++i) g0 = pmul(g0, modular[i], p);
    for (std::size_t i = half; i < modular.size(); ++i) h0 = pmul(h0, modular[i], p);
    PPoly sp, tp;
    pbezout(g0, h0, p, sp, tp);
    auto to_z = [](const PPoly& a) {
        ZPoly r;
        for (auto c : a) r.emplace_back(c);
        znorm(r);
        return r;
    };
    ZPoly g = to_z(g0), h = to_z(h0), s = to_z(sp), t = to_z(tp);
    Integer m(p);
    while (m < target) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    g = zmod(g, target);
    h = zmod(h, target);
    std::vector<PPoly> left(modular.begin(), modular.begin() + static_cast<long>(half));
    std::vector<PPoly> right(modular.begin() + static_cast<long>(half), modular.end());
    auto lf = hensel_lift_tree(g, left, p, target);
    auto rf = hensel_lift_tree(h, right, p, target);
    lf.insert(lf.end(), rf.begin(), rf.end());
    return lf;
}

// Irreducible factorization of a monic squarefree integer polynomial.
inline std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f) {
    const int n = zdeg(f);
    if (n <= 1) return {f};
    static const int primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
    std::vector<PPoly> best;
    std::int64_t best_p = 0;
    int tried = 0;
    for (int p : primes) {
        PPoly fp;
        for (auto& c : f) {
            Integer cc = c % p;
            if (cc < 0) cc += p;
            fp.push_back(cc.convert_to<std::int64_t>());
        }
        pnorm(fp);
        if (pdeg(fp) != n) continue; // monic, so this never triggers, kept for safety
        PPoly der = pderiv(fp, p);
        if (der.empty()) continue;
        if (pdeg(pgcd(fp, der, p)) != 0) continue;
        auto fac = berlekamp(fp, p);
        if (best.empty() || fac.size() < best.size()) {
            best = fac;
            best_p = p;
        }
        if (++tried >= 3 || best.size() == 1) break;
    }
    check_capacity(!best.empty(), "no usable prime found for modular factorization");
    if (best.size() == 1) return {f};
    // Mignotte-style bound on factor coefficients of a monic polynomial.
    Integer height = 0;
    for (auto& c : f) height += boost::multiprecision::abs(c);
    Integer bound = (Integer(1) << static_cast<unsigned>(n + 1)) * height;
    Integer target(best_p);
    while (target < 2 * bound + 1) target *= target;
    auto lifted = hensel_lift_tree(zmod(f, target), best, best_p, target);

    std::vector<ZPoly> out;
    ZPoly rest = f;
    std::vector<ZPoly> pool = lifted;
    std::size_t card = 1;
    std::uint64_t attempts = 0;
    while (pool.size() >= 2 * card) {
        std::vector<std::size_t> idx(card);
        for (std::size_t i = 0; i < card; ++i) idx[i] = i;
        bool found = false;
        while (true) {
            check_capacity(++attempts < (1u << 22), "factor recombination attempt cap exceeded");
            ZPoly cand{1};
            for (auto i : idx) cand = zmul_mod(cand, pool[i], target);
            cand = zcenter(cand, target);
            ZPoly q;
            if (!cand.empty() && cand.back() == 1 && zdiv_monic(rest, cand, q)) {
                out.push_back(cand);
                rest = q;
                std::vector<ZPoly> np;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) np.push_back(pool[i]);
                pool = std::move(np);
                found = true;
                break;
            }
            // next combination
            long pos = static_cast<long>(card) - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == pool.size() - card + static_cast<std::size_t>(pos)) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++card;
    }
    if (zdeg(rest) >= 1) out.push_back(rest);
    return out;
}

} // namespace zf

struct RationalFactorization {
    Rational constant = 1;
    std::vector<std::pair<UniPoly<Rational>, int>> factors; // monic irreducible, multiplicity
};

namespace detail {

inline bool rational_poly_less(const UniPoly<Rational>& a, const UniPoly<Rational>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c.size(); i-- > 0;)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

// Monic squarefree rational polynomial -> monic irreducible rational factors.
inline std::vector<UniPoly<Rational>> factor_squarefree_q(UniPoly<Rational> g, int degree_cap) {
    std::vector<UniPoly<Rational>> out;
    if (g.degree() <= 0) return out;
    // factor of x
    if (g.c[0] == 0) {
        out.push_back(UniPoly<Rational>({Rational(0), Rational(1)}));
        g.c.erase(g.c.begin());
        g.normalize();
    }
    if (g.degree() >= 1) {
        // rational roots: write g with integer coefficients first
        Integer l = 1;
        for (auto& c : g.c) l = boost::multiprecision::lcm(l, den(c));
        std::vector<Integer> zc;
        for (auto& c : g.c) zc.push_back(num(c * Rational(l)));
        bool roots_done = false;
        while (!roots_done && g.degree() >= 1) {
            roots_done = true;
            zc.clear();
            l = 1;
            for (auto& c : g.c) l = boost::multiprecision::lcm(l, den(c));
            for (auto& c : g.c) zc.push_back(num(c * Rational(l)));
            std::vector<Rational> candidates;
            try {
                auto ps = positive_divisors(zc.front());
                auto qs = positive_divisors(zc.back());
                for (auto& pp : ps)
                    for (auto& qq : qs) {
                        candidates.push_back(Rational(pp, qq));
                        candidates.push_back(Rational(-pp, qq));
                    }
            } catch (const Error&) {
                candidates.clear(); // constants too large: leave roots to the modular path
            }
            for (auto& r : candidates) {
                if (g.evaluate_t(r) == 0) {
                    UniPoly<Rational> lin({-r, Rational(1)});
                    g = divrem(g, lin).first;
                    out.push_back(lin);
                    roots_done = false;
                    break;
                }
            }
        }
    }
    int d = g.degree();
    if (d <= 0) return out;
    if (d <= 3) { // no rational roots: quadratics and cubics are irreducible
        out.push_back(g);
        return out;
    }
    check_capacity(d <= degree_cap, "factorization degree cap (" + std::to_string(degree_cap) +
                                        ") exceeded by degree " + std::to_string(d));
    // monic integer model: H(y) = c^d * g(y/c)
    Integer c = 1;
    for (auto& a : g.c) c = boost::multiprecision::lcm(c, den(a));
    zf::ZPoly h(g.c.size());
    Integer ck = 1;
    for (std::size_t i = g.c.size(); i-- > 0;) {
        h[i] = num(g.c[i] * Rational(ck));
        ck *= c;
    }
    auto zfacs = zf::factor_monic_squarefree(h);
    for (auto& zfac : zfacs) {
        UniPoly<Rational> f;
        Rational cp = 1;
        for (std::size_t i = 0; i < zfac.size(); ++i) {
            f.c.push_back(Rational(zfac[i]) * cp);
            cp *= Rational(c);
        }
        f.normalize();
        f = f.scaled(Rational(1) / f.lc());
        out.push_back(f);
    }
    return out;
}

} // namespace detail

inline RationalFactorization factor_rationals(const UniPoly<Rational>& f, int degree_cap = 64) {
    check_input(!f.is_zero(), "factorization of the zero polynomial");
    RationalFactorization out;
    out.constant = f.lc();
    if (f.degree() == 0) return out;
    UniPoly<Rational> monic = f.scaled(Rational(1) / f.lc());
    auto parts = squarefree_decomposition(monic);
    for (auto& [g, mult] : parts) {
        auto irr = detail::factor_squarefree_q(g, degree_cap);
        for (auto& fac : irr) out.factors.emplace_back(fac, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return detail::rational_poly_less(a.first, b.first);
    });
    return out;
}

} // namespace germlab
