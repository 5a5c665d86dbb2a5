// puiseux.hpp -- Newton-Puiseux expansion of plane germs with exact algebraic
// coefficients, branch objects, characteristic exponents, semigroups, and
// implicitization.
//
// The expansion tree adjoins edge-polynomial roots to the coefficient tower
// one irreducible factor at a time, so a stored parametrization stands for a
// whole conjugacy class of C-branches.  Leaves that cover sheets of the same
// branch are merged afterwards by comparing reduced equations, with a degree
// accounting check that forces deeper expansion when inconclusive.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "germlab/newton.hpp"
#include "germlab/series.hpp"

namespace germlab {

struct Branch {
    int m = 1;               // ramification: first coordinate = t^m
    UniSeries tail;          // second coordinate as a series in t
    bool terminated = false; // tail is exact, not a truncation
    int multiplicity = 1;    // multiplicity of this branch in the input germ
    bool swapped = false;    // parametrization written with x and y exchanged
    int conjugacy = 1;       // number of C-branches represented
    TowerPtr tower;          // coefficient field of the tail
    TruncSeries reduced_equation; // squarefree conjugate product, original coordinates

    bool is_axis() const { return m == 1 && tail.known_zero(); }

    UniSeries x_series() const {
        if (swapped) return tail;
        return UniSeries::t_power(m, terminated ? (1 << 28) : std::max(tail.prec, m + 1));
    }
    UniSeries y_series() const {
        if (!swapped) return tail;
        return UniSeries::t_power(m, terminated ? (1 << 28) : std::max(tail.prec, m + 1));
    }
};

struct PuiseuxOptions {
    int terms = 6;      // requested visible tail terms per branch (best effort)
    int x_depth = 6;    // initial expansion depth in powers of the base variable
    int max_doublings = 7;
    FactorOptions fopt;
};

namespace puiseux_detail {

struct PathStep {
    int q = 1, p = 1;
    FieldElement root;
};

struct Leaf {
    TowerPtr tower;
    std::vector<PathStep> path;
    bool terminated = false;
    bool separated = false;
};

inline MPoly promote_all(const MPoly& g, const TowerPtr& k) {
    if (!k) return g;
    MPoly r;
    for (auto& [e, c] : g.t) r.t.emplace(e, c.promoted(k));
    return r;
}

// g(x, y) -> g(x^q, x^p * (c + y)) / x^(x-content)
inline MPoly edge_transform(const MPoly& g, int q, int p, const FieldElement& c) {
    MPoly res;
    MPoly cy = MPoly(c) + MPoly::variable(1);
    std::vector<MPoly> cy_pows{MPoly::one()};
    for (auto& [e, coeff] : g.t) {
        while (static_cast<int>(cy_pows.size()) <= e[1]) cy_pows.push_back(cy_pows.back() * cy);
        res += cy_pows[static_cast<std::size_t>(e[1])].scaled(coeff) *
               MPoly::monomial(FieldElement::one(), exp2(q * e[0] + p * e[1], 0));
    }
    int xord = res.order(0);
    if (xord > 0) res = exact_div(res, MPoly::monomial(FieldElement::one(), exp2(xord, 0)));
    return res;
}

// Recursion on a squarefree germ with no x or y factor.  depth_left counts,
// in units of the node's own x variable, how much further we expand.
inline void expand_rec(const MPoly& g, const TowerPtr& k, long depth_left, std::vector<PathStep> path,
                       bool separated, std::vector<Leaf>& out, const FactorOptions& fopt, int guard) {
    check_capacity(guard < 512, "Puiseux recursion depth guard exceeded");
    MPoly cur = g;
    if (cur.order(1) >= 1) { // a branch terminating exactly here (y = 0 root)
        check_consistent(cur.order(1) == 1, "multiple y-factor in squarefree expansion");
        Leaf leaf;
        leaf.tower = k;
        leaf.path = path;
        leaf.terminated = true;
        leaf.separated = true;
        out.push_back(leaf);
        cur = exact_div(cur, MPoly::variable(1));
    }
    if (cur.is_constant() || cur.is_unit_germ()) return;
    if (depth_left <= 0) {
        Leaf leaf;
        leaf.tower = k;
        leaf.path = path;
        leaf.separated = separated;
        out.push_back(leaf);
        return;
    }
    NewtonDiagram d = newton_diagram(cur);
    check_consistent(d.x_mult == 0, "residual gained an x factor");
    for (auto& edge : d.edges) {
        int di = edge.to.first - edge.from.first;
        int dj = edge.from.second - edge.to.second;
        int g0 = std::gcd(di, dj);
        int p = di / g0, q = dj / g0;
        int steps = dj / q;
        // edge polynomial psi(tau) = sum_r a_(from + r*(p,-q)) tau^(steps - r)
        UniPoly<FieldElement> psi;
        psi.c.assign(static_cast<std::size_t>(steps) + 1, FieldElement::zero());
        for (int r = 0; r <= steps; ++r) {
            Exp e = exp2(edge.from.first + r * p, edge.from.second - r * q);
            auto it = cur.t.find(e);
            if (it != cur.t.end()) psi.c[static_cast<std::size_t>(steps - r)] = it->second;
        }
        psi.normalize();
        auto tau_factors = uni_factor(promote_poly(psi, k), fopt);
        for (auto& [phi, nu] : tau_factors.factors) {
            TowerPtr k1 = common_tower(phi, k);
            FieldElement tau0;
            if (phi.degree() == 1) {
                tau0 = (-phi.c[0]).promoted(k1);
            } else {
                auto [ext, root] = adjoin_root(k1, phi, fopt);
                k1 = ext;
                tau0 = root;
            }
            UniPoly<FieldElement> cq =
                UniPoly<FieldElement>::monomial(FieldElement::one(), static_cast<std::size_t>(q)) -
                UniPoly<FieldElement>::constant(tau0);
            auto c_factors = uni_factor(promote_poly(cq, k1), fopt);
            for (auto& [chi, cmult] : c_factors.factors) {
                check_consistent(cmult == 1, "c^q = tau not squarefree although tau is nonzero");
                TowerPtr k2 = common_tower(chi, k1);
                FieldElement c0;
                if (chi.degree() == 1) {
                    c0 = (-chi.c[0]).promoted(k2);
                } else {
                    auto [ext, root] = adjoin_root(k2, chi, fopt);
                    k2 = ext;
                    c0 = root;
                }
                MPoly next = edge_transform(promote_all(cur, k2), q, p, c0);
                std::vector<PathStep> path2 = path;
                path2.push_back({q, p, c0});
                expand_rec(next, k2, depth_left * q - p, std::move(path2), separated || nu == 1, out,
                           fopt, guard + 1);
            }
        }
    }
}

// Determinant of a small matrix of truncated series; cofactor expansion with
// memoization over row subsets.  Zero entries still carry their precision.
inline TruncSeries series_det(const std::vector<std::vector<TruncSeries>>& a) {
    const std::size_t n = a.size();
    std::vector<std::optional<TruncSeries>> memo(std::size_t(1) << n);
    struct Rec {
        const std::vector<std::vector<TruncSeries>>& a;
        std::vector<std::optional<TruncSeries>>& memo;
        std::size_t n;
        TruncSeries run(std::size_t rows_mask, std::size_t col) {
            if (col == n) return exact_series(MPoly::one());
            if (memo[rows_mask]) return *memo[rows_mask];
            TruncSeries acc(MPoly::zero(), 1 << 28);
            int sign = 1;
            for (std::size_t i = 0; i < n; ++i) {
                if (!(rows_mask & (std::size_t(1) << i))) continue;
                TruncSeries term = a[i][col] * run(rows_mask & ~(std::size_t(1) << i), col + 1);
                acc = (sign > 0) ? acc + term : acc - term;
                sign = -sign;
            }
            memo[rows_mask] = acc;
            return acc;
        }
    } rec{a, memo, n};
    return rec.run((std::size_t(1) << n) - 1, 0);
}

// Monic-in-y polynomial of degree m over truncated series in x whose roots
// are the m sheets of (t^m, tail(t)); coefficients stay in the tail's tower.
inline TruncSeries sheet_product(int m, const UniSeries& tail, bool exact) {
    const std::size_t um = static_cast<std::size_t>(m);
    check_capacity(m <= 24, "ramification too large for sheet-product determinant");
    int xprec = exact ? (1 << 28) : std::max(tail.prec / m, 1);
    std::vector<std::vector<MPoly>> mult(um, std::vector<MPoly>(um));
    for (std::size_t j = 0; j < um; ++j)
        for (std::size_t e = 0; e < tail.c.size(); ++e) {
            if (tail.c[e].is_zero()) continue;
            std::size_t tot = e + j;
            mult[tot % um][j] += MPoly::monomial(tail.c[e], exp2(static_cast<int>(tot / um), 0));
        }
    std::vector<std::vector<TruncSeries>> a(um, std::vector<TruncSeries>(um));
    MPoly y = MPoly::variable(1);
    for (std::size_t i = 0; i < um; ++i)
        for (std::size_t j = 0; j < um; ++j)
            a[i][j] = TruncSeries((i == j ? y : MPoly::zero()) - mult[i][j], xprec);
    return series_det(a);
}

// Norm of a truncated-series polynomial from its coefficient tower down to
// the given base depth.  Prefix restriction is preferred whenever possible so
// collapse powers appear only where genuinely forced.
inline TruncSeries norm_descend(TruncSeries f, std::size_t base_depth) {
    for (int guard = 0; guard < 64; ++guard) {
        TowerPtr k = f.body.tower();
        if (!k || k->depth() <= base_depth) return f;
        const std::size_t d = static_cast<std::size_t>(k->levels().back().degree);
        const std::size_t stride = static_cast<std::size_t>(k->degree()) / d;
        TowerPtr k0 = FieldTower::take_prefix(k, k->depth() - 1);
        std::vector<MPoly> layers(d);
        bool fits_prefix = true;
        for (auto& [e, c] : f.body.t) {
            FieldElement cc = c.promoted(k);
            const auto& co = cc.coords();
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<Rational> block(co.begin() + static_cast<long>(j * stride),
                                            co.begin() + static_cast<long>((j + 1) * stride));
                FieldElement cj = k0 ? FieldElement(k0, std::move(block)) : FieldElement(block[0]);
                if (!cj.is_zero()) {
                    if (j > 0) fits_prefix = false;
                    layers[j].add_term(e, cj);
                }
            }
        }
        if (fits_prefix) {
            f = TruncSeries(layers[0], f.precision);
            continue;
        }
        std::vector<FieldElement> mp; // minimal polynomial coefficients over k0
        for (auto& co : k->levels().back().min_poly_coords)
            mp.push_back(k0 ? FieldElement(k0, co) : FieldElement(co[0]));
        std::vector<std::vector<TruncSeries>> a(d, std::vector<TruncSeries>(d));
        for (std::size_t j = 0; j < d; ++j) { // column j: z^j * G(z) mod m(z)
            std::vector<MPoly> col(2 * d);
            for (std::size_t i = 0; i < d; ++i) col[i + j] = layers[i];
            for (std::size_t top = 2 * d - 1; top >= d; --top) {
                if (col[top].is_zero()) continue;
                MPoly lead = col[top];
                for (std::size_t r = 0; r < d; ++r) col[top - d + r] -= lead.scaled(mp[r]);
                col[top] = MPoly();
            }
            for (std::size_t i = 0; i < d; ++i) a[i][j] = TruncSeries(col[i], f.precision);
        }
        f = series_det(a);
    }
    throw Error(ErrorKind::Capacity, "norm descent failed to reach the base field");
}

// Maximal e with g = root^e for a monic-in-y truncated polynomial.
inline std::pair<TruncSeries, int> max_power_root(const TruncSeries& g) {
    int dy = g.body.degree(1);
    if (dy <= 0) return {g, 1};
    auto gy = as_unipoly(g.body, 1);
    if (!(gy.lc() == MPoly::one())) return {g, 1};
    for (int e = dy; e >= 2; --e) {
        if (dy % e != 0) continue;
        int d = dy / e;
        UniPoly<MPoly> root;
        root.c.assign(static_cast<std::size_t>(d) + 1, MPoly());
        root.c[static_cast<std::size_t>(d)] = MPoly::one();
        for (int k2 = 1; k2 <= d; ++k2) {
            UniPoly<MPoly> partial = root.pow(static_cast<unsigned>(e));
            MPoly delta = gy.coeff(static_cast<std::size_t>(dy - k2)) -
                          partial.coeff(static_cast<std::size_t>(dy - k2));
            root.c[static_cast<std::size_t>(d - k2)] = delta.scaled(FieldElement(Rational(1, e)));
        }
        TruncSeries cand(from_unipoly(root, 1), g.precision);
        if ((cand.pow(static_cast<unsigned>(e)) - TruncSeries(g.body, g.precision)).is_zero())
            return {cand, e};
    }
    return {TruncSeries(g.body, g.precision), 1};
}

inline TruncSeries swap_vars(const TruncSeries& s) {
    MPoly r;
    for (auto& [e, c] : s.body.t) r.add_term(Exp{e[1], e[0], e[2], e[3]}, c);
    return TruncSeries(r, s.precision);
}

// Rewrite a branch tangent to the first axis (ord tail < m) with the
// coordinates exchanged, so invariants read off the standard form.
inline Branch swap_normalize(const Branch& b, int work_prec, const FactorOptions& fopt) {
    int o = b.tail.order();
    FieldElement c0 = b.tail.coeff(o);
    auto [k1, croot] = nth_root(b.tower, c0, o, fopt);
    int prec = std::min(b.tail.prec - o, work_prec);
    UniSeries unit(std::vector<FieldElement>(b.tail.c.begin() + o, b.tail.c.end()), prec);
    unit = unit.scaled(c0.inverse());
    for (auto& c : unit.c) c = c.promoted(k1);
    UniSeries sigma = unit_series_root(unit, o).scaled(croot).shifted_up(1); // c0^(1/o) t (1+w)^(1/o)
    UniSeries tau = series_reverse(sigma);
    Branch nb;
    nb.m = o;
    nb.tail = tau.pow(static_cast<unsigned>(b.m));
    nb.terminated = false;
    nb.multiplicity = b.multiplicity;
    nb.swapped = true;
    nb.tower = common_tower(UniPoly<FieldElement>(nb.tail.c), k1);
    return nb;
}

} // namespace puiseux_detail

// Reduced equation of the branch orbit over the base field (monic in the
// second original coordinate, degree m * conjugacy) plus the collapse power
// that was removed from the norm.
inline std::pair<TruncSeries, int> implicitize_with_collapse(const Branch& b, std::size_t base_depth = 0) {
    using namespace puiseux_detail;
    if (b.is_axis())
        return {exact_series(MPoly::variable(b.swapped ? 0 : 1)), 1};
    TruncSeries f = sheet_product(b.m, b.tail, b.terminated);
    f = norm_descend(f, base_depth);
    auto [root, e] = max_power_root(f);
    if (b.swapped) root = swap_vars(root);
    return {root, e};
}

inline TruncSeries implicitize(const Branch& b) {
    auto r = implicitize_with_collapse(b).first;
    check_consistent(r.body.is_rational(), "implicit equation of a rational germ must be rational");
    return r;
}

// --- the expansion driver ---

inline std::vector<Branch> puiseux_expand(const MPoly& f, const PuiseuxOptions& opt = {},
                                          TowerPtr base = nullptr) {
    using namespace puiseux_detail;
    check_input(!f.is_zero(), "Puiseux expansion of the zero germ");
    check_input(!f.is_unit_germ(), "Puiseux expansion of a unit germ (no branch through the origin)");
    auto parts = squarefree_decomposition(promote_all(f, base));
    const std::size_t base_depth = base ? base->depth() : 0;
    const int base_degree = base ? base->degree() : 1;
    long depth = opt.x_depth;
    for (int attempt = 0;; ++attempt) {
        check_capacity(attempt <= opt.max_doublings,
                       "Puiseux expansion failed to stabilize within the depth cap");
        bool retry = false;
        std::vector<Branch> raw;
        for (auto& [part, mult] : parts) {
            MPoly p = part;
            if (p.order(0) >= 1) { // component x = 0
                Branch axis;
                axis.tail = UniSeries::zero(1 << 28);
                axis.terminated = true;
                axis.multiplicity = mult;
                axis.swapped = true;
                axis.tower = base;
                axis.reduced_equation = exact_series(MPoly::variable(0));
                raw.push_back(axis);
                p = exact_div(p, MPoly::monomial(FieldElement::one(), exp2(p.order(0), 0)));
            }
            if (p.order(1) >= 1) { // component y = 0
                Branch axis;
                axis.tail = UniSeries::zero(1 << 28);
                axis.terminated = true;
                axis.multiplicity = mult;
                axis.tower = base;
                axis.reduced_equation = exact_series(MPoly::variable(1));
                raw.push_back(axis);
                p = exact_div(p, MPoly::monomial(FieldElement::one(), exp2(0, p.order(1))));
            }
            if (p.is_constant() || p.is_unit_germ()) continue;
            std::vector<Leaf> leaves;
            expand_rec(p, base, depth, {}, false, leaves, opt.fopt, 0);
            for (auto& leaf : leaves) {
                if (!leaf.separated) {
                    retry = true;
                    break;
                }
                Branch b;
                b.tower = leaf.tower;
                b.multiplicity = mult;
                b.terminated = leaf.terminated;
                int m = 1;
                for (auto& st : leaf.path) m *= st.q;
                b.m = m;
                std::vector<FieldElement> tail;
                long acc = 0, rem = m;
                for (auto& st : leaf.path) {
                    rem /= st.q;
                    acc += static_cast<long>(st.p) * rem;
                    if (static_cast<long>(tail.size()) <= acc)
                        tail.resize(static_cast<std::size_t>(acc) + 1, FieldElement::zero());
                    tail[static_cast<std::size_t>(acc)] =
                        tail[static_cast<std::size_t>(acc)] + st.root.promoted(leaf.tower);
                }
                b.tail = leaf.terminated ? UniSeries(std::move(tail), 1 << 28)
                                         : UniSeries(std::move(tail), static_cast<int>(depth) * m);
                raw.push_back(std::move(b));
            }
            if (retry) break;
        }
        if (retry) {
            depth *= 2;
            continue;
        }
        // leaf weight: number of y(x) root series a leaf covers, relative to
        // the base field; recorded before any coordinate swap
        std::vector<int> weight;
        for (auto& b : raw) weight.push_back((b.tower ? b.tower->degree() : 1) / base_degree);
        // normalize branches tangent to the x axis
        for (auto& b : raw) {
            if (b.swapped || b.is_axis() || b.tail.known_zero()) continue;
            if (b.tail.order() < b.m)
                b = swap_normalize(b, std::max(static_cast<int>(depth) * b.m, 8), opt.fopt);
        }
        // primitivity: gcd of m and visible exponents must reach 1
        bool prim_fail = false;
        for (auto& b : raw) {
            int g = b.m;
            for (std::size_t i = 0; i < b.tail.c.size() && g > 1; ++i)
                if (!b.tail.c[i].is_zero()) g = std::gcd(g, static_cast<int>(i));
            if (g != 1) {
                check_consistent(!b.terminated, "terminated branch is imprimitive");
                prim_fail = true;
            }
        }
        if (prim_fail) {
            depth *= 2;
            continue;
        }
        // implicitize, then merge leaves that cover sheets of one branch
        struct Group {
            Branch rep;
            int rep_weight = 0;
            int weight_sum = 0;
        };
        std::vector<Group> groups;
        bool merge_fail = false;
        for (std::size_t bi = 0; bi < raw.size(); ++bi) {
            Branch nb = raw[bi];
            nb.reduced_equation = implicitize_with_collapse(nb, base_depth).first;
            bool found = false;
            for (auto& g : groups) {
                if (g.rep.swapped != nb.swapped || g.rep.multiplicity != nb.multiplicity ||
                    g.rep.m != nb.m)
                    continue;
                int cp = std::min(g.rep.reduced_equation.precision, nb.reduced_equation.precision);
                if (g.rep.reduced_equation.body.truncated_total(cp) ==
                    nb.reduced_equation.body.truncated_total(cp)) {
                    g.weight_sum += weight[bi];
                    if (weight[bi] < g.rep_weight) {
                        g.rep = nb;
                        g.rep_weight = weight[bi];
                    }
                    found = true;
                    break;
                }
            }
            if (!found) groups.push_back({nb, weight[bi], weight[bi]});
        }
        std::vector<Branch> out;
        for (auto& g : groups) {
            Branch b = g.rep;
            if (b.is_axis()) {
                b.conjugacy = 1;
                check_consistent(g.weight_sum == 1, "axis branch accounting failed");
                out.push_back(b);
                continue;
            }
            // weight accounting always counts y(x) root series: deg_y of the
            // reduced equation in the original orientation
            int dy_account = b.reduced_equation.body.degree(1);
            int d_main = b.reduced_equation.body.degree(b.swapped ? 0 : 1);
            if (dy_account <= 0 || d_main <= 0 || d_main % b.m != 0 || g.weight_sum != dy_account) {
                merge_fail = true;
                break;
            }
            b.conjugacy = d_main / b.m;
            out.push_back(b);
        }
        if (merge_fail) {
            depth *= 2;
            continue;
        }
        // best-effort number of visible terms
        bool need_terms = false;
        for (auto& b : out) {
            if (b.terminated) continue;
            int visible = 0;
            for (auto& c : b.tail.c)
                if (!c.is_zero()) ++visible;
            if (visible < opt.terms) need_terms = true;
        }
        if (need_terms && attempt < opt.max_doublings) {
            depth *= 2;
            continue;
        }
        return out;
    }
}

// --- characteristic exponents and semigroups ---

struct CharSequence {
    std::vector<long> beta;    // beta_0 = m, then the characteristic exponents
    std::vector<long> e_chain; // gcd chain e_0 >= ... >= 1
};

inline CharSequence characteristic_data(const Branch& b) {
    CharSequence cs;
    cs.beta.push_back(b.m);
    long e = b.m;
    cs.e_chain.push_back(e);
    for (std::size_t i = 0; i < b.tail.c.size() && e > 1; ++i) {
        if (b.tail.c[i].is_zero()) continue;
        long g = std::gcd(e, static_cast<long>(i));
        if (g < e) {
            cs.beta.push_back(static_cast<long>(i));
            e = g;
            cs.e_chain.push_back(e);
        }
    }
    check_capacity(e == 1, "tail precision too low to complete the characteristic sequence");
    return cs;
}

struct Semigroup {
    std::vector<long> generators;
    friend bool operator==(const Semigroup& a, const Semigroup& b) { return a.generators == b.generators; }
    friend bool operator<(const Semigroup& a, const Semigroup& b) { return a.generators < b.generators; }
};

inline Semigroup semigroup_of(const CharSequence& cs) {
    Semigroup s;
    if (cs.beta.size() == 1) {
        s.generators = {1};
        return s;
    }
    std::vector<long> bar(cs.beta.size());
    bar[0] = cs.beta[0];
    bar[1] = cs.beta[1];
    for (std::size_t q = 1; q + 1 < cs.beta.size(); ++q)
        bar[q + 1] = (cs.e_chain[q - 1] / cs.e_chain[q]) * bar[q] + cs.beta[q + 1] - cs.beta[q];
    s.generators = bar;
    return s;
}

inline Semigroup semigroup_of(const Branch& b) { return semigroup_of(characteristic_data(b)); }

} // namespace germlab
