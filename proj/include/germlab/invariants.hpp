// invariants.hpp -- intersection multiplicities (resultant order and
// Zeuthen's rule), Milnor numbers, and equisingularity types of labeled
// curve collections.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "germlab/puiseux.hpp"

namespace germlab {

struct IntersectionNumber {
    bool infinite = false;
    long value = 0;

    static IntersectionNumber inf() { return {true, 0}; }
    static IntersectionNumber of(long v) { return {false, v}; }
    friend bool operator==(const IntersectionNumber& a, const IntersectionNumber& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

enum class I0Method { Both, Resultant, Zeuthen };

struct InvariantOptions {
    I0Method method = I0Method::Both;
    int shear_cap = 64;
    PuiseuxOptions popt;
};

// x -> x + c*y
inline MPoly sheared(const MPoly& f, long c) {
    if (c == 0) return f;
    MPoly inner = MPoly::variable(0) + MPoly::variable(1).scaled(FieldElement(Rational(c)));
    return f.substituted(0, inner);
}

namespace detail {

inline bool is_pure_y_power_times_const(const UniPoly<FieldElement>& p) {
    for (std::size_t i = 0; i + 1 < p.c.size(); ++i)
        if (!p.c[i].is_zero()) return false;
    return true;
}

inline UniPoly<FieldElement> restrict_x0(const MPoly& f) { // f(0, y)
    UniPoly<FieldElement> r;
    for (auto& [e, c] : f.t) {
        if (e[0] != 0) continue;
        std::size_t j = static_cast<std::size_t>(e[1]);
        if (r.c.size() <= j) r.c.resize(j + 1, FieldElement());
        r.c[j] = c;
    }
    r.normalize();
    return r;
}

// A shear is accepted when, for both germs: f(0,y) is nonzero, the leading
// y-coefficient is a nonzero constant, and the only common root of the two
// restrictions to x = 0 is y = 0 (so the resultant order counts the origin
// alone).
inline long find_shear(const MPoly& f, const MPoly& g, int cap) {
    for (long c = 0; c <= cap; ++c) {
        MPoly fc = sheared(f, c), gc = sheared(g, c);
        auto f0 = restrict_x0(fc), g0 = restrict_x0(gc);
        if (f0.is_zero() || g0.is_zero()) continue;
        auto fy = as_unipoly(fc, 1);
        auto gy = as_unipoly(gc, 1);
        if (!fy.lc().is_constant() || !gy.lc().is_constant()) continue;
        auto common = gcd_field(f0, g0);
        if (!is_pure_y_power_times_const(common)) continue;
        return c;
    }
    throw Error(ErrorKind::Capacity, "shear sequence exhausted without reaching y-generality");
}

inline IntersectionNumber i0_resultant(const MPoly& f, const MPoly& g, const InvariantOptions& opt) {
    long c = find_shear(f, g, opt.shear_cap);
    MPoly fc = sheared(f, c), gc = sheared(g, c);
    MPoly res = resultant(as_unipoly(fc, 1), as_unipoly(gc, 1));
    if (res.is_zero()) return IntersectionNumber::inf();
    return IntersectionNumber::of(res.order(0));
}

inline IntersectionNumber i0_zeuthen(const MPoly& f, const MPoly& g, const InvariantOptions& opt) {
    // sum over branches of g of ord_t f(parametrization), weighted
    PuiseuxOptions popt = opt.popt;
    for (int attempt = 0; attempt < 6; ++attempt) {
        auto branches = puiseux_expand(g, popt);
        long total = 0;
        bool precise = true;
        for (auto& b : branches) {
            UniSeries val = evaluate_on_param(f, b.x_series(), b.y_series());
            int o = val.order();
            if (o >= val.prec) {
                precise = false;
                break;
            }
            total += static_cast<long>(o) * b.multiplicity * b.conjugacy;
        }
        if (precise) return IntersectionNumber::of(total);
        popt.x_depth *= 2;
        popt.terms *= 2;
    }
    throw Error(ErrorKind::Capacity, "Zeuthen evaluation failed to certify the order");
}

} // namespace detail

inline IntersectionNumber intersection_multiplicity(const MPoly& f, const MPoly& g,
                                                    const InvariantOptions& opt = {}) {
    check_input(!f.is_zero() && !g.is_zero(), "intersection number of a zero germ");
    if (f.is_unit_germ() || g.is_unit_germ()) return IntersectionNumber::of(0);
    MPoly common = mpoly_gcd(f, g);
    if (!common.is_constant() && common.constant_term().is_zero()) return IntersectionNumber::inf();
    switch (opt.method) {
        case I0Method::Resultant:
            return detail::i0_resultant(f, g, opt);
        case I0Method::Zeuthen:
            return detail::i0_zeuthen(f, g, opt);
        case I0Method::Both:
        default: {
            IntersectionNumber a = detail::i0_resultant(f, g, opt);
            IntersectionNumber b = detail::i0_zeuthen(f, g, opt);
            check_consistent(a == b, "resultant-order and Zeuthen intersection numbers disagree: " +
                                         a.to_string() + " vs " + b.to_string());
            return a;
        }
    }
}

// i0 with the first argument only known as a truncated series: Zeuthen over
// the polynomial argument's branches, with the certified-order bound.
inline IntersectionNumber intersection_with_series(const TruncSeries& d, const MPoly& h,
                                                   TowerPtr base = nullptr,
                                                   const InvariantOptions& opt = {}) {
    check_input(!d.is_zero(), "intersection with an all-unknown series");
    if (d.body.is_unit_germ() || h.is_unit_germ()) return IntersectionNumber::of(0);
    PuiseuxOptions popt = opt.popt;
    for (int attempt = 0; attempt < 6; ++attempt) {
        auto branches = puiseux_expand(h, popt, base);
        long total = 0;
        bool precise = true;
        for (auto& b : branches) {
            UniSeries val = evaluate_trunc_on_param(d, b.x_series(), b.y_series());
            int o = val.order();
            if (o >= val.prec) {
                precise = false;
                break;
            }
            total += static_cast<long>(o) * b.multiplicity * b.conjugacy;
        }
        if (precise) return IntersectionNumber::of(total);
        popt.x_depth *= 2;
    }
    throw Error(ErrorKind::Capacity,
                "series precision too low to certify the intersection number; recompute the series deeper");
}

inline long milnor_number(const MPoly& h, const InvariantOptions& opt_in = {}) {
    check_input(!h.is_zero(), "Milnor number of the zero germ");
    MPoly hx = h.derivative(0), hy = h.derivative(1);
    if (hx.is_zero() && hy.is_zero()) throw Error(ErrorKind::Input, "constant germ has no Milnor number");
    if ((!hx.is_zero() && hx.is_unit_germ()) || (!hy.is_zero() && hy.is_unit_germ())) return 0; // smooth
    check_input(!hx.is_zero() && !hy.is_zero(),
                "non-isolated singularity: a partial derivative vanishes identically");
    MPoly common = mpoly_gcd(hx, hy);
    if (!common.is_constant() && common.constant_term().is_zero())
        throw Error(ErrorKind::Input,
                    "non-isolated singularity: partials share the factor " + common.to_string());
    InvariantOptions opt = opt_in;
    if (opt.method == I0Method::Both) opt.method = I0Method::Resultant;
    IntersectionNumber mu = intersection_multiplicity(hx, hy, opt);
    check_consistent(!mu.infinite, "isolatedness check passed but the intersection is infinite");
    return mu.value;
}

// --- equisingularity types ---

struct LabeledBranch {
    std::string label;
    Semigroup semigroup;
    int multiplicity = 1;
    // conjugate parametrization over the shared tower
    int m = 1;
    UniSeries tail;
    bool swapped = false;
};

struct EquisingularityType {
    std::vector<LabeledBranch> branches;
    std::vector<std::vector<IntersectionNumber>> matrix; // symmetric, diagonal unused
};

namespace detail {

inline FieldElement apply_embedding_coords(const FieldElement& c, const TowerPtr& src,
                                           const std::vector<FieldElement>& gen_images,
                                           const TowerPtr& dst) {
    if (!src) return FieldElement(c.as_rational());
    const auto& co = c.coords();
    FieldElement acc = FieldElement::zero();
    for (std::size_t i = 0; i < co.size(); ++i) {
        if (co[i] == 0) continue;
        FieldElement term(co[i]);
        std::size_t rest = i;
        for (std::size_t lvl = 0; lvl < src->depth(); ++lvl) {
            std::size_t d = static_cast<std::size_t>(src->levels()[lvl].degree);
            std::size_t e = rest % d;
            rest /= d;
            if (e) term = term * gen_images[lvl].pow(static_cast<long>(e));
        }
        acc = acc + term.promoted(dst);
    }
    return acc;
}

// All embeddings of `src` into (an extension of) `dst`; `dst` grows as needed
// so that every level's minimal polynomial splits.  Each embedding lists the
// images of the src generators.
inline std::vector<std::vector<FieldElement>> all_embeddings(const TowerPtr& src, TowerPtr& dst,
                                                             const FactorOptions& fopt) {
    std::vector<std::vector<FieldElement>> embs{{}};
    if (!src) return embs;
    for (std::size_t lvl = 0; lvl < src->depth(); ++lvl) {
        const TowerLevel& level = src->levels()[lvl];
        TowerPtr prefix = FieldTower::take_prefix(src, lvl);
        std::vector<std::vector<FieldElement>> next;
        for (auto& emb : embs) {
            // map the minimal polynomial through the embedding
            UniPoly<FieldElement> m;
            for (auto& co : level.min_poly_coords) {
                FieldElement c = prefix ? FieldElement(prefix, co) : FieldElement(co[0]);
                m.c.push_back(apply_embedding_coords(c, prefix, emb, dst));
            }
            m.c.push_back(FieldElement::one());
            m.normalize();
            for (int guard = 0;; ++guard) {
                check_capacity(guard < 32, "embedding enumeration failed to split a level");
                auto fac = uni_factor(promote_poly(m, dst), fopt);
                const UniPoly<FieldElement>* nonlinear = nullptr;
                for (auto& [g, mult] : fac.factors) {
                    (void)mult;
                    if (g.degree() >= 2) {
                        nonlinear = &g;
                        break;
                    }
                }
                if (!nonlinear) {
                    for (auto& [g, mult] : fac.factors) {
                        (void)mult;
                        std::vector<FieldElement> e2 = emb;
                        e2.push_back((-g.c[0]).promoted(dst));
                        next.push_back(std::move(e2));
                    }
                    break;
                }
                auto [ext, root] = adjoin_root(dst, *nonlinear, fopt);
                (void)root;
                dst = ext;
                // promote existing embeddings and rerun the factorization
                for (auto& e2 : next)
                    for (auto& v : e2) v = v.promoted(dst);
                for (auto& v : emb) v = v.promoted(dst);
            }
        }
        embs = std::move(next);
    }
    return embs;
}

} // namespace detail

// Expanded conjugate parametrizations of a stored branch over a shared tower.
struct ConjugateParam {
    int m = 1;
    UniSeries tail;
    bool swapped = false;
    TruncSeries sheet_eq; // sheet product over the shared tower (not normed)
};

inline std::vector<ConjugateParam> enumerate_conjugates(const Branch& b, TowerPtr& shared,
                                                        const FactorOptions& fopt) {
    std::vector<ConjugateParam> out;
    auto embs = detail::all_embeddings(b.tower, shared, fopt);
    for (auto& emb : embs) {
        ConjugateParam cp;
        cp.m = b.m;
        cp.swapped = b.swapped;
        std::vector<FieldElement> coeffs;
        for (auto& c : b.tail.c)
            coeffs.push_back(detail::apply_embedding_coords(c.promoted(b.tower), b.tower, emb, shared));
        cp.tail = UniSeries(std::move(coeffs), b.tail.prec);
        cp.sheet_eq = puiseux_detail::sheet_product(cp.m, cp.tail, b.terminated);
        if (cp.swapped) cp.sheet_eq = puiseux_detail::swap_vars(cp.sheet_eq);
        bool dup = false;
        for (auto& prev : out) {
            int p = std::min(prev.sheet_eq.precision, cp.sheet_eq.precision);
            if (prev.sheet_eq.body.truncated_total(p) == cp.sheet_eq.body.truncated_total(p)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(cp));
    }
    check_consistent(static_cast<int>(out.size()) == b.conjugacy,
                     "conjugate enumeration found " + std::to_string(out.size()) + " branches, expected " +
                         std::to_string(b.conjugacy));
    return out;
}

inline UniSeries conj_x_series(const ConjugateParam& cp) {
    if (cp.swapped) return cp.tail;
    return UniSeries::t_power(cp.m, std::max(cp.tail.prec, cp.m + 1));
}
inline UniSeries conj_y_series(const ConjugateParam& cp) {
    if (!cp.swapped) return cp.tail;
    return UniSeries::t_power(cp.m, std::max(cp.tail.prec, cp.m + 1));
}

inline EquisingularityType equisingularity_type(const std::vector<std::pair<std::string, MPoly>>& germs,
                                                const InvariantOptions& opt = {}) {
    EquisingularityType et;
    TowerPtr shared = nullptr;
    std::vector<ConjugateParam> params;
    for (auto& [label, germ] : germs) {
        check_input(!germ.is_zero() && !germ.is_unit_germ(), "equisingularity type needs germs vanishing at 0");
        auto branches = puiseux_expand(germ, opt.popt);
        for (auto& b : branches) {
            Semigroup sg = b.is_axis() ? Semigroup{{1}} : semigroup_of(b);
            auto conjs = enumerate_conjugates(b, shared, opt.popt.fopt);
            for (auto& cp : conjs) {
                LabeledBranch lb;
                lb.label = label;
                lb.semigroup = sg;
                lb.multiplicity = b.multiplicity;
                lb.m = cp.m;
                lb.tail = cp.tail;
                lb.swapped = cp.swapped;
                et.branches.push_back(lb);
                params.push_back(cp);
            }
        }
    }
    check_capacity(et.branches.size() <= 64, "equisingularity comparison capped at 64 branches");
    // promote all stored sheet equations and tails to the final shared tower
    for (auto& cp : params) {
        for (auto& c : cp.tail.c) c = c.promoted(shared);
        MPoly nb;
        for (auto& [e, c] : cp.sheet_eq.body.t) nb.add_term(e, c.promoted(shared));
        cp.sheet_eq.body = nb;
    }
    const std::size_t n = params.size();
    et.matrix.assign(n, std::vector<IntersectionNumber>(n, IntersectionNumber::of(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            UniSeries val =
                evaluate_trunc_on_param(params[j].sheet_eq, conj_x_series(params[i]), conj_y_series(params[i]));
            int o = val.order();
            check_capacity(o < val.prec,
                           "branch tails too short to certify a pairwise intersection number");
            et.matrix[i][j] = et.matrix[j][i] = IntersectionNumber::of(o);
        }
    return et;
}

struct EquisingularVerdict {
    bool equisingular = false;
    std::vector<int> matching; // image of each branch of `a` in `b`
};

inline EquisingularVerdict equisingular(const EquisingularityType& a, const EquisingularityType& b) {
    EquisingularVerdict v;
    if (a.branches.size() != b.branches.size()) return v;
    const std::size_t n = a.branches.size();
    // count labels
    std::map<std::string, int> la, lb;
    for (auto& x : a.branches) ++la[x.label];
    for (auto& x : b.branches) ++lb[x.label];
    if (la != lb) return v;
    std::vector<int> match(n, -1);
    std::vector<bool> used(n, false);
    auto compatible = [&](std::size_t i, std::size_t j) {
        if (a.branches[i].label != b.branches[j].label) return false;
        if (!(a.branches[i].semigroup == b.branches[j].semigroup)) return false;
        if (a.branches[i].multiplicity != b.branches[j].multiplicity) return false;
        for (std::size_t k = 0; k < i; ++k)
            if (!(a.matrix[i][k] == b.matrix[static_cast<std::size_t>(match[k])][j])) return false;
        return true;
    };
    struct Rec {
        const EquisingularityType& a;
        const EquisingularityType& b;
        std::vector<int>& match;
        std::vector<bool>& used;
        std::size_t n;
        const std::function<bool(std::size_t, std::size_t)>& compatible;
        bool run(std::size_t i) {
            if (i == n) return true;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j] || !compatible(i, j)) continue;
                used[j] = true;
                match[i] = static_cast<int>(j);
                if (run(i + 1)) return true;
                used[j] = false;
                match[i] = -1;
            }
            return false;
        }
    };
    std::function<bool(std::size_t, std::size_t)> comp = compatible;
    Rec rec{a, b, match, used, n, comp};
    if (rec.run(0)) {
        v.equisingular = true;
        v.matching = match;
    }
    return v;
}

} // namespace germlab
