// field_tower.hpp -- exact arithmetic in towers of simple algebraic extensions
// of Q.  A tower is a chain Q(g1)(g2)...(gk); each level stores the monic
// minimal polynomial of its generator over the levels below.  Elements carry
// dense coordinates in the product basis g1^e1 * ... * gk^ek.
//
// Towers are immutable and shared; extending produces a new tower into which
// old elements embed coordinate-wise.  The trivial tower (plain rationals) is
// represented by a null tower pointer so that rational constants are cheap.
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "germlab/errors.hpp"
#include "germlab/linalg.hpp"
#include "germlab/rational.hpp"

namespace germlab {

class FieldTower;
class FieldElement;
using TowerPtr = std::shared_ptr<const FieldTower>;

struct TowerLevel {
    std::string name;
    // Monic minimal polynomial of the generator over the prefix tower,
    // coefficients ascending; each coefficient is stored as flat coordinates
    // over the prefix (length = product of the degrees below this level).
    std::vector<std::vector<Rational>> min_poly_coords;
    int degree = 0;
    std::complex<double> root_approx{};
};

namespace detail {

// Flat product of two coordinate vectors over the first `level` levels.
inline std::vector<Rational> raw_mul(const std::vector<TowerLevel>& levels, std::size_t level,
                                     const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (level == 0) return {a[0] * b[0]};
    const TowerLevel& top = levels[level - 1];
    const std::size_t d = static_cast<std::size_t>(top.degree);
    const std::size_t stride = a.size() / d;
    auto block = [&](const std::vector<Rational>& v, std::size_t i) {
        return std::vector<Rational>(v.begin() + static_cast<long>(i * stride),
                                     v.begin() + static_cast<long>((i + 1) * stride));
    };
    auto add_into = [&](std::vector<Rational>& dst, const std::vector<Rational>& src) {
        for (std::size_t i = 0; i < stride; ++i) dst[i] += src[i];
    };
    auto is_zero_vec = [&](const std::vector<Rational>& v) {
        for (auto& x : v)
            if (x != 0) return false;
        return true;
    };
    std::vector<std::vector<Rational>> c(2 * d - 1, std::vector<Rational>(stride, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) {
        auto ai = block(a, i);
        if (is_zero_vec(ai)) continue;
        for (std::size_t j = 0; j < d; ++j) {
            auto bj = block(b, j);
            if (is_zero_vec(bj)) continue;
            add_into(c[i + j], raw_mul(levels, level - 1, ai, bj));
        }
    }
    for (std::size_t topdeg = 2 * d - 2; topdeg >= d && topdeg < c.size(); --topdeg) {
        if (is_zero_vec(c[topdeg])) continue;
        std::vector<Rational> lead = c[topdeg];
        for (std::size_t r = 0; r < d; ++r) {
            auto prod = raw_mul(levels, level - 1, lead, top.min_poly_coords[r]);
            for (std::size_t i = 0; i < stride; ++i) c[topdeg - d + r][i] -= prod[i];
        }
        for (auto& x : c[topdeg]) x = 0;
    }
    std::vector<Rational> out;
    out.reserve(d * stride);
    for (std::size_t i = 0; i < d; ++i) out.insert(out.end(), c[i].begin(), c[i].end());
    return out;
}

} // namespace detail

class FieldTower {
  public:
    static constexpr int kDefaultMaxDegree = 16;

    const std::vector<TowerLevel>& levels() const { return levels_; }
    int degree() const { return degree_; }
    std::size_t depth() const { return levels_.size(); }

    // Numeric value of the idx-th product basis element under the fixed
    // complex embedding chosen at construction time.
    std::complex<double> basis_approx(std::size_t idx) const { return basis_approx_[idx]; }

    const std::vector<Rational>& basis_product(std::size_t i, std::size_t j) const {
        return mul_table_[i * static_cast<std::size_t>(degree_) + j];
    }

    static bool same(const TowerPtr& a, const TowerPtr& b) {
        if (a.get() == b.get()) return true;
        if (!a || !b) return false;
        return structurally_equal(*a, *b, a->depth(), b->depth());
    }

    // True when `a` is a (possibly equal) prefix of `b`; a null tower is a
    // prefix of everything.
    static bool is_prefix(const TowerPtr& a, const TowerPtr& b) {
        if (!a) return true;
        if (!b) return false;
        if (a->depth() > b->depth()) return false;
        return structurally_equal(*a, *b, a->depth(), a->depth());
    }

    // Factory used by the factorization layer.  `min_poly` holds flat coords
    // over `prefix` (ascending, monic).  Irreducibility is the caller's
    // responsibility.
    static TowerPtr extend(const TowerPtr& prefix, std::string name,
                           std::vector<std::vector<Rational>> min_poly, int max_degree);

    static TowerPtr take_prefix(const TowerPtr& tower, std::size_t k) {
        if (k == 0) return nullptr;
        auto t = std::make_shared<FieldTower>();
        t->levels_.assign(tower->levels_.begin(), tower->levels_.begin() + static_cast<long>(k));
        t->finish();
        return t;
    }

    std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
        const std::size_t n = static_cast<std::size_t>(degree_);
        std::vector<Rational> out(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] == 0) continue;
                const auto& prod = basis_product(i, j);
                Rational f = a[i] * b[j];
                for (std::size_t k = 0; k < n; ++k)
                    if (prod[k] != 0) out[k] += f * prod[k];
            }
        }
        return out;
    }

    // Column-k of this matrix is (e * basis_k) in coordinates.
    QMatrix multiplication_matrix(const std::vector<Rational>& e) const {
        const std::size_t n = static_cast<std::size_t>(degree_);
        QMatrix m(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> col(n, Rational(0));
            for (std::size_t i = 0; i < n; ++i) {
                if (e[i] == 0) continue;
                const auto& prod = basis_product(i, j);
                for (std::size_t k = 0; k < n; ++k)
                    if (prod[k] != 0) col[k] += e[i] * prod[k];
            }
            for (std::size_t k = 0; k < n; ++k) m[k][j] = col[k];
        }
        return m;
    }

    std::vector<TowerLevel> levels_;

  private:
    int degree_ = 1;
    std::vector<std::vector<Rational>> mul_table_;
    std::vector<std::complex<double>> basis_approx_;

    static bool structurally_equal(const FieldTower& a, const FieldTower& b, std::size_t ka, std::size_t kb) {
        if (ka != kb) return false;
        for (std::size_t i = 0; i < ka; ++i) {
            if (a.levels_[i].degree != b.levels_[i].degree) return false;
            if (a.levels_[i].min_poly_coords != b.levels_[i].min_poly_coords) return false;
        }
        return true;
    }

    void finish();
    friend class FieldElement;
};

// Roots of a complex-coefficient polynomial (ascending coefficients, nonzero
// leading coefficient) by Durand-Kerner iteration.  Display quality only; no
// exact decision ever depends on these values.
inline std::vector<std::complex<double>> complex_roots(std::vector<std::complex<double>> c) {
    while (c.size() > 1 && std::abs(c.back()) < 1e-300) c.pop_back();
    const std::size_t n = c.size() - 1;
    if (n == 0) return {};
    for (auto& x : c) x /= c.back();
    std::vector<std::complex<double>> r(n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> p(1.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        p *= seed;
        r[i] = p;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> d(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) d *= (r[i] - r[j]);
            std::complex<double> delta = eval(r[i]) / d;
            r[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14) break;
    }
    return r;
}

// Canonical ordering of complex roots: ascending real part, then ascending
// imaginary part, with a small tolerance when comparing real parts.  This is
// the published tie-break used for reported root indices.
inline void sort_roots_canonically(std::vector<std::complex<double>>& r) {
    std::sort(r.begin(), r.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

class FieldElement {
  public:
    FieldElement() : coords_{Rational(0)} {}
    explicit FieldElement(Rational r) : coords_{std::move(r)} {}
    explicit FieldElement(long long n) : coords_{Rational(n)} {}
    FieldElement(TowerPtr tower, std::vector<Rational> coords)
        : tower_(std::move(tower)), coords_(std::move(coords)) {
        if (tower_ && coords_.size() != static_cast<std::size_t>(tower_->degree()))
            throw Error(ErrorKind::Input, "coordinate vector does not match tower degree");
    }

    static FieldElement zero() { return FieldElement(Rational(0)); }
    static FieldElement one() { return FieldElement(Rational(1)); }

    // The generator of the top level of `tower`.
    static FieldElement generator(const TowerPtr& tower) {
        std::vector<Rational> c(static_cast<std::size_t>(tower->degree()), Rational(0));
        std::size_t stride = static_cast<std::size_t>(tower->degree()) /
                             static_cast<std::size_t>(tower->levels().back().degree);
        c[stride] = 1;
        return FieldElement(tower, std::move(c));
    }

    const TowerPtr& tower() const { return tower_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const {
        for (auto& c : coords_)
            if (c != 0) return false;
        return true;
    }
    bool is_one() const {
        if (coords_[0] != 1) return false;
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        return true;
    }
    Rational as_rational() const {
        check_input(is_rational(), "field element is not rational");
        return coords_[0];
    }

    FieldElement promoted(const TowerPtr& to) const {
        if (FieldTower::same(tower_, to)) return *this;
        check_input(FieldTower::is_prefix(tower_, to), "incompatible coefficient fields");
        std::vector<Rational> c(static_cast<std::size_t>(to->degree()), Rational(0));
        for (std::size_t i = 0; i < coords_.size(); ++i) c[i] = coords_[i];
        return FieldElement(to, std::move(c));
    }

    // Restrict to a prefix tower when all higher coordinates vanish.
    bool fits_prefix(std::size_t prefix_degree) const {
        for (std::size_t i = prefix_degree; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        return true;
    }
    FieldElement restricted(const TowerPtr& prefix) const {
        std::size_t d = prefix ? static_cast<std::size_t>(prefix->degree()) : 1;
        check_input(fits_prefix(d), "element does not lie in the requested subfield");
        return FieldElement(prefix, std::vector<Rational>(coords_.begin(), coords_.begin() + static_cast<long>(d)));
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] += y.coords_[i];
        return x;
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] -= y.coords_[i];
        return x;
    }
    FieldElement operator-() const {
        FieldElement r = *this;
        for (auto& c : r.coords_) c = -c;
        return r;
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        auto [x, y] = align(a, b);
        if (!x.tower_) return FieldElement(x.coords_[0] * y.coords_[0]);
        return FieldElement(x.tower_, x.tower_->multiply(x.coords_, y.coords_));
    }
    FieldElement inverse() const {
        check_input(!is_zero(), "division by zero field element");
        if (!tower_) return FieldElement(Rational(1) / coords_[0]);
        QMatrix m = tower_->multiplication_matrix(coords_);
        std::vector<Rational> e0(coords_.size(), Rational(0));
        e0[0] = 1;
        auto sol = solve_linear(std::move(m), std::move(e0));
        check_input(sol.has_value(), "field element is a zero divisor; tower minimal polynomial not irreducible");
        return FieldElement(tower_, *sol);
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) { return (a - b).is_zero(); }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElement r = one(), b = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    std::complex<double> approx() const {
        if (!tower_) return {to_double(coords_[0]), 0.0};
        std::complex<double> v = 0;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i] != 0) v += to_double(coords_[i]) * tower_->basis_approx(i);
        return v;
    }

    // Monic characteristic polynomial of multiplication by this element on
    // the full tower over Q (ascending rational coefficients).  The minimal
    // polynomial over Q is its unique irreducible factor vanishing here.
    std::vector<Rational> char_poly_over_q() const {
        if (!tower_) return {-coords_[0], Rational(1)};
        return char_poly(tower_->multiplication_matrix(coords_));
    }

    std::string to_string() const;

  private:
    TowerPtr tower_;              // null = Q
    std::vector<Rational> coords_; // length tower degree (1 for Q)

    static std::pair<FieldElement, FieldElement> align(const FieldElement& a, const FieldElement& b) {
        if (FieldTower::same(a.tower_, b.tower_)) return {a, b};
        if (FieldTower::is_prefix(a.tower_, b.tower_)) return {a.promoted(b.tower_), b};
        if (FieldTower::is_prefix(b.tower_, a.tower_)) return {a, b.promoted(a.tower_)};
        throw Error(ErrorKind::Input, "incompatible coefficient fields");
    }
};

inline TowerPtr FieldTower::extend(const TowerPtr& prefix, std::string name,
                                   std::vector<std::vector<Rational>> min_poly, int max_degree) {
    auto t = std::make_shared<FieldTower>();
    if (prefix) t->levels_ = prefix->levels_;
    TowerLevel lvl;
    lvl.name = std::move(name);
    lvl.degree = static_cast<int>(min_poly.size()) - 1;
    check_input(lvl.degree >= 2, "tower extension must have degree >= 2");
    lvl.min_poly_coords = std::move(min_poly);
    lvl.min_poly_coords.pop_back(); // drop the monic leading 1; keep c0..c_{d-1}
    t->levels_.push_back(std::move(lvl));
    int total = 1;
    for (auto& l : t->levels_) total *= l.degree;
    check_capacity(total <= max_degree,
                   "tower degree cap exceeded (" + std::to_string(total) + " > " + std::to_string(max_degree) + ")");
    t->finish();
    return t;
}

inline void FieldTower::finish() {
    degree_ = 1;
    for (auto& l : levels_) degree_ *= l.degree;
    const std::size_t n = static_cast<std::size_t>(degree_);

    // Numeric embedding: each level picks the canonically-first root of its
    // minimal polynomial evaluated under the embedding of the levels below.
    basis_approx_.assign(n, {0.0, 0.0});
    std::vector<std::complex<double>> partial{1.0};
    for (std::size_t li = 0; li < levels_.size(); ++li) {
        TowerLevel& lvl = levels_[li];
        std::size_t sub = partial.size();
        std::vector<std::complex<double>> cs;
        for (auto& coeff : lvl.min_poly_coords) {
            std::complex<double> v = 0;
            for (std::size_t i = 0; i < coeff.size(); ++i)
                if (coeff[i] != 0) v += to_double(coeff[i]) * partial[i];
            cs.push_back(v);
        }
        cs.push_back({1.0, 0.0});
        auto roots = complex_roots(cs);
        sort_roots_canonically(roots);
        lvl.root_approx = roots.empty() ? std::complex<double>{0, 0} : roots.front();
        std::vector<std::complex<double>> next(sub * static_cast<std::size_t>(lvl.degree));
        std::complex<double> gp = 1.0;
        for (int e = 0; e < lvl.degree; ++e) {
            for (std::size_t i = 0; i < sub; ++i) next[static_cast<std::size_t>(e) * sub + i] = partial[i] * gp;
            gp *= lvl.root_approx;
        }
        partial = std::move(next);
    }
    basis_approx_ = partial;

    mul_table_.assign(n * n, {});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> ei(n, Rational(0));
        ei[i] = 1;
        for (std::size_t j = i; j < n; ++j) {
            std::vector<Rational> ej(n, Rational(0));
            ej[j] = 1;
            auto prod = detail::raw_mul(levels_, levels_.size(), ei, ej);
            mul_table_[i * n + j] = prod;
            mul_table_[j * n + i] = std::move(prod);
        }
    }
}

inline std::string FieldElement::to_string() const {
    if (!tower_) return germlab::to_string(coords_[0]);
    // Decompose the basis index into generator exponents.
    std::string out;
    const auto& lvls = tower_->levels();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        std::string term = germlab::to_string(coords_[i]);
        std::size_t rest = i;
        for (const auto& l : lvls) {
            std::size_t e = rest % static_cast<std::size_t>(l.degree);
            rest /= static_cast<std::size_t>(l.degree);
            if (e == 0) continue;
            term += "*" + l.name;
            if (e > 1) term += "^" + std::to_string(e);
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out.empty() ? "0" : out;
}

} // namespace germlab
