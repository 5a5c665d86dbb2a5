// rational.hpp -- exact arbitrary-precision rationals and small integer helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "germlab/errors.hpp"

namespace germlab {

using Integer = boost::multiprecision::cpp_int;
// cpp_rational keeps gcd(num,den)=1 and den>0 after every operation.
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

inline Integer ipow(Integer b, unsigned e) {
    Integer r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rational rpow(const Rational& b, long e) {
    if (e == 0) return Rational(1);
    Rational p = e > 0 ? b : Rational(1) / b;
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational r = 1;
    while (k) {
        if (k & 1) r *= p;
        p *= p;
        k >>= 1;
    }
    return r;
}

inline std::string to_string(const Rational& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// All positive divisors of |n|; n must be nonzero.  Trial division, intended
// for the modest integers that appear in rational-root extraction.
inline std::vector<Integer> positive_divisors(Integer n, std::uint64_t trial_cap = 2'000'000) {
    if (n < 0) n = -n;
    check_input(n != 0, "divisors of zero requested");
    std::vector<std::pair<Integer, unsigned>> fac;
    Integer m = n;
    for (Integer p = 2; p * p <= m; ++p) {
        check_capacity(p <= trial_cap, "integer too large to factor by trial division");
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            fac.emplace_back(p, e);
        }
    }
    if (m > 1) fac.emplace_back(m, 1);
    std::vector<Integer> divs{1};
    for (auto& [p, e] : fac) {
        std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

} // namespace germlab
