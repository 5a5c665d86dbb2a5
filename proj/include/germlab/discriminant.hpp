// discriminant.hpp -- Jacobian curves, direct images of curves under finite
// map germs, discriminant curves, Jacobian Newton diagrams, and Hironaka
// factorization data.
//
// The direct image is computed branchwise: push each source parametrization
// through the map, divide out the covering degree, re-normalize the image
// parametrization, implicitize it, and descend the coefficient tower.  The
// projection formula validates the result, retrying at doubled precision.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "germlab/invariants.hpp"

namespace germlab {

struct MapGerm {
    MPoly f, g;

    MapGerm(MPoly ff, MPoly gg) : f(std::move(ff)), g(std::move(gg)) {
        check_input(!f.is_zero() && !g.is_zero(), "map components must be nonzero");
        check_input(f.constant_term().is_zero() && g.constant_term().is_zero(),
                    "map components must vanish at the origin");
        MPoly common = mpoly_gcd(f, g);
        check_input(common.is_constant() || !common.constant_term().is_zero(),
                    "map components share a component through the origin (no isolated zero)");
    }
};

inline MPoly jacobian(const MapGerm& phi) {
    MPoly j = phi.f.derivative(0) * phi.g.derivative(1) - phi.f.derivative(1) * phi.g.derivative(0);
    check_input(!j.is_zero(), "identically-zero Jacobian: the components are analytically dependent");
    return j;
}

struct BranchImage {
    bool into_u_axis = false; // image is {u = 0}
    bool into_v_axis = false; // image is {v = 0}
    long ord_f = 0;           // M = i0(f, single branch); meaningful unless into_u_axis
    long ord_g = 0;           // K = i0(g, single branch); meaningful unless into_v_axis
    int degree = 1;           // topological degree of the restriction per branch
    int conjugacy = 1;
    int multiplicity = 1;
    long exponent = 1;        // total power of `factor` in the direct image
    TruncSeries factor;       // reduced image equation (monic in v) or axis variable
};

struct DirectImage {
    TruncSeries equation; // normalized: product of monic-in-v factors and axis powers
    std::vector<BranchImage> ledger;
    bool unit = false; // source curve empty (used by the unit-discriminant case)
};

namespace detail {

// Rewrites an image parametrization (u(t), v(t)) with M = ord u in Newton
// normal form (s^M, V(s)); may extend the coefficient tower by a root of the
// leading coefficient.
inline std::pair<UniSeries, int> image_normal_form(const UniSeries& u, const UniSeries& v,
                                                   const FactorOptions& fopt) {
    int m2 = u.order();
    FieldElement c0 = u.coeff(m2);
    TowerPtr k = nullptr;
    for (auto& c : u.c) k = deeper_tower(k, c.tower());
    for (auto& c : v.c) k = deeper_tower(k, c.tower());
    auto [k1, croot] = nth_root(k, c0, m2, fopt);
    UniSeries unit(std::vector<FieldElement>(u.c.begin() + m2, u.c.end()), u.prec - m2);
    unit = unit.scaled(c0.inverse());
    for (auto& c : unit.c) c = c.promoted(k1);
    UniSeries sigma = unit_series_root(unit, m2).scaled(croot).shifted_up(1);
    UniSeries tau = series_reverse(sigma);
    UniSeries big_v = series_compose(v, tau);
    return {big_v, m2};
}

} // namespace detail

// Direct image of the curve h = 0 under phi, computed to (at least) the
// requested total-degree precision when possible.
inline DirectImage direct_image(const MPoly& h, const MapGerm& phi, int precision,
                                const InvariantOptions& opt = {}) {
    check_input(!h.is_zero(), "direct image of the zero curve");
    check_input(h.constant_term().is_zero(), "direct image needs a curve through the origin");
    PuiseuxOptions popt = opt.popt;
    popt.x_depth = std::max(popt.x_depth, 2 * precision + 4);
    TowerPtr base = nullptr; // rational maps; towers grow per branch as needed
    for (int attempt = 0; attempt < 7; ++attempt, popt.x_depth *= 2) {
        auto branches = puiseux_expand(h, popt, base);
        DirectImage out;
        out.equation = exact_series(MPoly::one());
        bool precise = true;
        for (auto& b : branches) {
            UniSeries u = evaluate_on_param(phi.f, b.x_series(), b.y_series());
            UniSeries v = evaluate_on_param(phi.g, b.x_series(), b.y_series());
            BranchImage img;
            img.conjugacy = b.conjugacy;
            img.multiplicity = b.multiplicity;
            if (u.known_zero() || v.known_zero()) {
                // a branch inside f=0 (or g=0) maps onto a coordinate axis;
                // exact for terminated tails, certified by gcd otherwise
                bool u_zero = u.known_zero();
                const MPoly& comp = u_zero ? phi.f : phi.g;
                if (!b.terminated) {
                    MPoly shared = mpoly_gcd(comp, h);
                    if (shared.is_constant() || !shared.constant_term().is_zero()) {
                        precise = false; // high-order but nonzero: expand deeper
                        break;
                    }
                }
                const UniSeries& other = u_zero ? v : u;
                check_consistent(!other.known_zero(), "branch maps into both axes");
                long o = other.order();
                if (o >= other.prec) {
                    precise = false;
                    break;
                }
                img.into_u_axis = u_zero;
                img.into_v_axis = !u_zero;
                (u_zero ? img.ord_g : img.ord_f) = o;
                img.degree = static_cast<int>(o);
                img.exponent = o * static_cast<long>(b.conjugacy) * b.multiplicity;
                img.factor = exact_series(MPoly::variable(u_zero ? 0 : 1));
                out.equation = out.equation * TruncSeries(MPoly::variable(u_zero ? 0 : 1).pow(
                                                              static_cast<unsigned>(img.exponent)),
                                                          TruncSeries::kExactPrecision);
                out.ledger.push_back(img);
                continue;
            }
            long m = u.order(), k0 = v.order();
            if (m >= u.prec || k0 >= v.prec) {
                precise = false;
                break;
            }
            img.ord_f = m;
            img.ord_g = k0;
            // covering degree: gcd of all visible exponents of both series
            int d = 0;
            for (std::size_t i = 0; i < u.c.size(); ++i)
                if (!u.c[i].is_zero()) d = std::gcd(d, static_cast<int>(i));
            for (std::size_t i = 0; i < v.c.size(); ++i)
                if (!v.c[i].is_zero()) d = std::gcd(d, static_cast<int>(i));
            img.degree = d;
            // compress t -> t^(1/d)
            auto compress = [&](const UniSeries& s) {
                std::vector<FieldElement> cc;
                for (std::size_t i = 0; i < s.c.size(); i += static_cast<std::size_t>(d))
                    cc.push_back(s.c[i]);
                return UniSeries(std::move(cc), (s.prec + d - 1) / d);
            };
            UniSeries u2 = compress(u), v2 = compress(v);
            // cap the working precision; the sheet product only needs the
            // image tail to s-order about (precision + 3) * m2
            {
                int m2_exp = static_cast<int>(m) / d;
                int cap = (precision + 4) * std::max(m2_exp, 1) + 2;
                u2 = u2.truncated(cap);
                v2 = v2.truncated(cap);
            }
            auto [big_v, m2] = detail::image_normal_form(u2, v2, opt.popt.fopt);
            TruncSeries sheet = puiseux_detail::sheet_product(m2, big_v, false);
            TruncSeries reduced = puiseux_detail::norm_descend(sheet, base ? base->depth() : 0);
            auto [factor, collapse] = puiseux_detail::max_power_root(reduced);
            (void)collapse;
            int dv = factor.body.degree(1);
            long num = static_cast<long>(b.conjugacy) * m2 * d * b.multiplicity;
            if (dv <= 0 || num % dv != 0) {
                precise = false;
                break;
            }
            img.exponent = num / dv;
            img.factor = factor;
            if (factor.precision <= precision) {
                precise = false;
                break;
            }
            out.equation = out.equation * factor.pow(static_cast<unsigned>(img.exponent));
            out.ledger.push_back(img);
        }
        if (!precise) continue;
        if (out.equation.precision <= precision && out.equation.precision < TruncSeries::kExactPrecision)
            continue;
        return out;
    }
    throw Error(ErrorKind::Capacity, "direct image did not reach the requested precision");
}

// i0 of a coordinate axis with a truncated series (certified by precision).
inline IntersectionNumber axis_order(const TruncSeries& d, int axis_var) {
    // substitute the other variable by 0 and read the order
    int keep = axis_var == 0 ? 1 : 0;
    int best = -1;
    for (auto& [e, c] : d.body.t) {
        if (e[static_cast<std::size_t>(axis_var)] != 0) continue;
        int o = e[static_cast<std::size_t>(keep)];
        if (best < 0 || o < best) best = o;
    }
    if (best < 0) return IntersectionNumber::inf(); // divisible by the axis variable (to precision)
    check_capacity(best < d.precision, "series precision too low to certify an axis order");
    return IntersectionNumber::of(best);
}

struct Discriminant {
    DirectImage image;
    MPoly jacobian_curve;
    long i0_f_j = -1; // -1 encodes infinity
    long i0_g_j = -1;
    bool unit = false; // empty discriminant (Jacobian is a unit)
};

inline Discriminant discriminant(const MapGerm& phi, int requested_precision = 0,
                                 const InvariantOptions& opt = {}) {
    Discriminant out;
    out.jacobian_curve = jacobian(phi);
    if (!out.jacobian_curve.constant_term().is_zero()) {
        out.unit = true;
        out.image.unit = true;
        out.image.equation = exact_series(MPoly::one());
        return out;
    }
    InvariantOptions ro = opt;
    ro.method = I0Method::Resultant;
    IntersectionNumber a = intersection_multiplicity(phi.f, out.jacobian_curve, ro);
    IntersectionNumber b = intersection_multiplicity(phi.g, out.jacobian_curve, ro);
    out.i0_f_j = a.infinite ? -1 : a.value;
    out.i0_g_j = b.infinite ? -1 : b.value;
    int prec = requested_precision;
    if (prec <= 0) {
        long box = (a.infinite ? 0 : a.value) + (b.infinite ? 0 : b.value);
        prec = static_cast<int>(box) + 2;
    }
    const int initial = prec;
    while (true) {
        DirectImage img = direct_image(out.jacobian_curve, phi, prec, opt);
        IntersectionNumber iu = axis_order(img.equation, 0); // i0(u, D) = ord_v D(0, v)
        IntersectionNumber iv = axis_order(img.equation, 1);
        bool ok_u = a.infinite ? iu.infinite : (!iu.infinite && iu.value == a.value);
        bool ok_v = b.infinite ? iv.infinite : (!iv.infinite && iv.value == b.value);
        if (ok_u && ok_v) {
            out.image = img;
            return out;
        }
        check_capacity(prec <= 8 * initial,
                       "projection-formula validation kept failing at increased precision");
        prec *= 2;
    }
}

// Constant-rescaled canonical form: coefficient 1 at the lexicographically
// smallest support point of the initial Newton polynomial.
inline TruncSeries canonical_rescaled(const TruncSeries& d) {
    if (d.body.is_zero()) return d;
    MPoly init = initial_newton_polynomial(d);
    FieldElement c = init.t.begin()->second;
    return TruncSeries(d.body.scaled(c.inverse()), d.precision);
}

// Newton diagram of the discriminant, computed both from the truncated
// equation and from the per-branch ledger; the two must agree.
inline NewtonDiagram jacobian_newton_diagram(const Discriminant& disc) {
    check_input(!disc.unit, "unit discriminant has an empty Jacobian Newton diagram");
    NewtonDiagram from_eq = newton_diagram(disc.image.equation);
    // assemble from the ledger
    long u_off = 0, v_off = 0;
    std::vector<std::pair<LatticePoint, Rational>> vecs;
    long height = 0;
    for (auto& e : disc.image.ledger) {
        if (e.into_u_axis) {
            u_off += e.exponent;
        } else if (e.into_v_axis) {
            v_off += e.exponent;
        } else {
            long cm = static_cast<long>(e.conjugacy) * e.multiplicity;
            long dv = cm * e.ord_f; // vertical span
            long du = cm * e.ord_g; // horizontal span
            vecs.push_back({{static_cast<int>(du), -static_cast<int>(dv)},
                            Rational(du, dv)});
            height += dv;
        }
    }
    NewtonDiagram assembled = diagram_from_offset_and_edges(
        {static_cast<int>(u_off), static_cast<int>(v_off + height)}, std::move(vecs));
    check_consistent(assembled == from_eq,
                     "ledger-assembled diagram disagrees with the equation's diagram");
    return from_eq;
}

struct HironakaFactor {
    Rational quotient;            // i0(g,p)/i0(f,p) shared by the group's branches
    long total_f = 0, total_g = 0; // (i0(f, h_i), i0(g, h_i))
    bool axis_u = false, axis_v = false;
    std::vector<std::size_t> ledger_entries;
};

inline std::vector<HironakaFactor> hironaka_factorization(const DirectImage& img) {
    std::vector<HironakaFactor> out;
    auto find = [&](const Rational& q, bool au, bool av) -> HironakaFactor& {
        for (auto& h : out)
            if (h.quotient == q && h.axis_u == au && h.axis_v == av) return h;
        out.push_back({q, 0, 0, au, av, {}});
        return out.back();
    };
    for (std::size_t i = 0; i < img.ledger.size(); ++i) {
        const BranchImage& e = img.ledger[i];
        long cm = static_cast<long>(e.conjugacy) * e.multiplicity;
        if (e.into_u_axis) {
            HironakaFactor& h = find(Rational(0), true, false);
            h.total_g += cm * e.ord_g;
            h.ledger_entries.push_back(i);
        } else if (e.into_v_axis) {
            HironakaFactor& h = find(Rational(0), false, true);
            h.total_f += cm * e.ord_f;
            h.ledger_entries.push_back(i);
        } else {
            HironakaFactor& h = find(Rational(e.ord_g, e.ord_f), false, false);
            h.total_f += cm * e.ord_f;
            h.total_g += cm * e.ord_g;
            h.ledger_entries.push_back(i);
        }
    }
    std::sort(out.begin(), out.end(), [](const HironakaFactor& a, const HironakaFactor& b) {
        if (a.axis_u != b.axis_u) return a.axis_u;
        if (a.axis_v != b.axis_v) return b.axis_v;
        return a.quotient < b.quotient;
    });
    return out;
}

// Hironaka factorization of an arbitrary curve h through phi (the spec's
// general form; the discriminant case passes the stored direct image).
inline std::vector<HironakaFactor> hironaka_factorization(const MPoly& h, const MapGerm& phi,
                                                          int precision = 8,
                                                          const InvariantOptions& opt = {}) {
    DirectImage img = direct_image(h, phi, precision, opt);
    auto groups = hironaka_factorization(img);
    // reconstruction check: the groups determine the diagram of the image
    long u_off = 0, v_off = 0, height = 0;
    std::vector<std::pair<LatticePoint, Rational>> vecs;
    for (auto& g : groups) {
        if (g.axis_u) {
            u_off += g.total_g;
        } else if (g.axis_v) {
            v_off += g.total_f;
        } else {
            vecs.push_back({{static_cast<int>(g.total_g), -static_cast<int>(g.total_f)},
                            Rational(g.total_g, g.total_f)});
            height += g.total_f;
        }
    }
    NewtonDiagram assembled = diagram_from_offset_and_edges(
        {static_cast<int>(u_off), static_cast<int>(v_off + height)}, std::move(vecs));
    check_consistent(assembled == newton_diagram(img.equation),
                     "Hironaka totals fail to reconstruct the image diagram");
    return groups;
}

// H(f, g): simultaneous substitution of the two plane variables.
inline MPoly compose_with_map(const MPoly& h, const MapGerm& phi) {
    std::vector<MPoly> fp{MPoly::one()}, gp{MPoly::one()};
    MPoly r;
    for (auto& [e, c] : h.t) {
        check_input(e[2] == 0 && e[3] == 0, "composition expects a two-variable germ");
        while (static_cast<int>(fp.size()) <= e[0]) fp.push_back(fp.back() * phi.f);
        while (static_cast<int>(gp.size()) <= e[1]) gp.push_back(gp.back() * phi.g);
        r += (fp[static_cast<std::size_t>(e[0])] * gp[static_cast<std::size_t>(e[1])]).scaled(c);
    }
    return r;
}

struct CasasReport {
    long mu_h = 0, mu_big_h = 0, i0_fg = 0, i0_dh = 0;
    long lhs = 0, rhs = 0;
    bool holds = false;
};

// mu(h) - 1 = i0(f,g) [mu(H) - 1] + i0(D, H) with h = H(f,g).
inline CasasReport casas_check(const MapGerm& phi, const MPoly& big_h, const InvariantOptions& opt = {}) {
    check_input(!big_h.is_zero() && big_h.constant_term().is_zero(),
                "test curve H must be a nonzero germ through the origin");
    CasasReport rep;
    InvariantOptions ro = opt;
    ro.method = I0Method::Resultant;
    IntersectionNumber ifg = intersection_multiplicity(phi.f, phi.g, ro);
    check_input(!ifg.infinite, "map does not have an isolated zero");
    rep.i0_fg = ifg.value;
    MPoly h = compose_with_map(big_h, phi);
    rep.mu_h = milnor_number(h, ro);
    rep.mu_big_h = milnor_number(big_h, ro);
    Discriminant disc = discriminant(phi, 0, opt);
    if (disc.unit) {
        rep.i0_dh = 0;
    } else {
        int prec = 0;
        for (int attempt = 0;; ++attempt) {
            try {
                IntersectionNumber idh = intersection_with_series(disc.image.equation, big_h, nullptr, opt);
                check_input(!idh.infinite, "H shares a component with the discriminant");
                rep.i0_dh = idh.value;
                break;
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::Capacity || attempt >= 3) throw;
                prec = 2 * std::max(disc.image.equation.precision, 4);
                disc = discriminant(phi, prec, opt);
            }
        }
    }
    rep.lhs = rep.mu_h - 1;
    rep.rhs = rep.i0_fg * (rep.mu_big_h - 1) + rep.i0_dh;
    rep.holds = rep.lhs == rep.rhs;
    return rep;
}

} // namespace germlab
