// newton.hpp -- Newton diagrams of plane germs, initial Newton polynomials,
// weighted initial forms and their factorization, rescaling equivalence.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "germlab/mpoly.hpp"

namespace germlab {

using LatticePoint = std::pair<int, int>;

struct DiagramEdge {
    LatticePoint from, to;    // from has the smaller first coordinate
    Rational inclination;     // (horizontal span) / (vertical span) > 0
};

struct NewtonDiagram {
    std::vector<LatticePoint> vertices; // strictly convex, increasing first coordinate
    std::vector<DiagramEdge> edges;
    int x_mult = 0; // exponent of the pure-x monomial factor (min i over support)
    int y_mult = 0; // exponent of the pure-y monomial factor (min j)

    friend bool operator==(const NewtonDiagram& a, const NewtonDiagram& b) { return a.vertices == b.vertices; }
};

struct WeightVector {
    int k = 1, l = 1;
    WeightVector() = default;
    WeightVector(int kk, int ll) : k(kk), l(ll) {
        check_input(k >= 1 && l >= 1, "weights must be positive");
        check_input(std::gcd(k, l) == 1, "weights must be coprime");
    }
    long wdeg(int i, int j) const { return static_cast<long>(i) * k + static_cast<long>(j) * l; }
};

namespace detail {
inline std::vector<LatticePoint> support_points(const MPoly& f) {
    std::vector<LatticePoint> pts;
    for (auto& [e, c] : f.t) {
        check_input(e[2] == 0 && e[3] == 0, "germ must involve only the two plane variables");
        pts.emplace_back(e[0], e[1]);
    }
    return pts;
}

inline long cross(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    return static_cast<long>(b.first - a.first) * (c.second - b.second) -
           static_cast<long>(b.second - a.second) * (c.first - b.first);
}
} // namespace detail

inline NewtonDiagram newton_diagram(const MPoly& f) {
    check_input(!f.is_zero(), "Newton diagram of the zero germ");
    auto pts = detail::support_points(f);
    std::sort(pts.begin(), pts.end());
    // staircase filter: for each i keep the smallest j, then strictly decreasing j
    std::vector<LatticePoint> stairs;
    for (std::size_t i = 0; i < pts.size();) {
        std::size_t j = i;
        while (j + 1 < pts.size() && pts[j + 1].first == pts[i].first) ++j;
        LatticePoint best = pts[i]; // smallest j at this i (sorted pairs)
        if (stairs.empty() || best.second < stairs.back().second) stairs.push_back(best);
        i = j + 1;
    }
    // lower-left convex chain
    std::vector<LatticePoint> hull;
    for (auto& p : stairs) {
        while (hull.size() >= 2 && detail::cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }
    NewtonDiagram d;
    d.vertices = hull;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        DiagramEdge e;
        e.from = hull[i];
        e.to = hull[i + 1];
        e.inclination = Rational(e.to.first - e.from.first, e.from.second - e.to.second);
        d.edges.push_back(e);
    }
    int mi = pts.front().first, mj = pts.front().second;
    for (auto& p : pts) {
        mi = std::min(mi, p.first);
        mj = std::min(mj, p.second);
    }
    d.x_mult = mi;
    d.y_mult = mj;
    return d;
}

inline NewtonDiagram newton_diagram(const TruncSeries& f) {
    check_input(!f.is_zero(), "Newton diagram of a series with no visible terms");
    NewtonDiagram d = newton_diagram(f.body);
    for (auto& v : d.vertices)
        check_capacity(v.first + v.second < f.precision,
                       "series precision too low to certify the Newton diagram");
    return d;
}

inline bool point_on_compact_boundary(const NewtonDiagram& d, int i, int j) {
    if (d.edges.empty()) return d.vertices.size() == 1 && d.vertices[0] == LatticePoint{i, j};
    LatticePoint p{i, j};
    for (auto& e : d.edges) {
        if (i < e.from.first || i > e.to.first) continue;
        if (detail::cross(e.from, e.to, p) == 0) return true;
    }
    return false;
}

inline MPoly initial_newton_polynomial(const MPoly& f) {
    NewtonDiagram d = newton_diagram(f);
    MPoly r;
    for (auto& [e, c] : f.t)
        if (point_on_compact_boundary(d, e[0], e[1])) r.add_term(e, c);
    return r;
}

inline MPoly initial_newton_polynomial(const TruncSeries& f) {
    NewtonDiagram d = newton_diagram(f); // certifies vertices against precision
    MPoly r;
    for (auto& [e, c] : f.body.t)
        if (point_on_compact_boundary(d, e[0], e[1])) r.add_term(e, c);
    return r;
}

inline MPoly weighted_initial_form(const MPoly& f, const WeightVector& w) {
    check_input(!f.is_zero(), "weighted initial form of zero");
    long m = -1;
    for (auto& [e, c] : f.t) {
        long wd = w.wdeg(e[0], e[1]);
        if (m < 0 || wd < m) m = wd;
    }
    MPoly r;
    for (auto& [e, c] : f.t)
        if (w.wdeg(e[0], e[1]) == m) r.add_term(e, c);
    return r;
}

inline MPoly weighted_initial_form(const TruncSeries& f, const WeightVector& w) {
    check_input(!f.is_zero(), "weighted initial form of a series with no visible terms");
    MPoly r = weighted_initial_form(f.body, w);
    long m = w.wdeg(r.t.begin()->first[0], r.t.begin()->first[1]);
    long unseen = static_cast<long>(f.precision) * std::min(w.k, w.l);
    check_capacity(m < unseen, "series precision too low to certify the weighted initial form");
    return r;
}

inline bool is_quasi_homogeneous(const MPoly& p, const WeightVector& w) {
    if (p.is_zero()) return true;
    long m = w.wdeg(p.t.begin()->first[0], p.t.begin()->first[1]);
    for (auto& [e, c] : p.t)
        if (w.wdeg(e[0], e[1]) != m) return false;
    return true;
}

// Factorization of a quasi-homogeneous polynomial as
//   C * u^nu0 * v^nu_last * prod (v^k - t_i u^l)^{nu_i},
// with nonzero pairwise-distinct t_i (tower extended as needed to split the
// edge polynomial completely).
struct QuasiHomogFactorization {
    FieldElement constant;
    int nu0 = 0;     // exponent of the first variable
    int nu_last = 0; // exponent of the second variable
    std::vector<std::pair<FieldElement, int>> roots; // (t_i, nu_i)
    WeightVector weight;

    MPoly reconstruct() const {
        MPoly r = MPoly::monomial(constant, exp2(nu0, nu_last));
        MPoly vk = MPoly::monomial(FieldElement::one(), exp2(0, weight.k));
        MPoly ul = MPoly::monomial(FieldElement::one(), exp2(weight.l, 0));
        for (auto& [t, nu] : roots) r = r * (vk - ul.scaled(t)).pow(static_cast<unsigned>(nu));
        return r;
    }
};

// Splits a univariate polynomial into linear factors, extending the tower as
// needed; returns the roots with multiplicities.
inline std::vector<std::pair<FieldElement, int>> split_completely(UniPoly<FieldElement> p,
                                                                  const FactorOptions& opt = {}) {
    std::vector<std::pair<FieldElement, int>> roots;
    for (int guard = 0; guard < 64; ++guard) {
        auto fac = uni_factor(p, opt);
        const UniPoly<FieldElement>* pending = nullptr;
        for (auto& [g, mult] : fac.factors) {
            (void)mult;
            if (g.degree() >= 2) {
                pending = &g;
                break;
            }
        }
        if (!pending) {
            for (auto& [g, mult] : fac.factors) roots.emplace_back(-g.c[0], mult);
            return roots;
        }
        auto [ext, root] = adjoin_root(common_tower(p), *pending, opt);
        (void)root;
        p = promote_poly(p, ext);
    }
    throw Error(ErrorKind::Capacity, "edge polynomial did not split within the tower depth guard");
}

inline QuasiHomogFactorization factor_edge(const MPoly& p, const WeightVector& w,
                                           const FactorOptions& opt = {}) {
    check_input(!p.is_zero(), "edge factorization of zero");
    check_input(is_quasi_homogeneous(p, w), "polynomial is not quasi-homogeneous for the given weights");
    QuasiHomogFactorization out;
    out.weight = w;
    out.nu0 = p.order(0);
    out.nu_last = p.order(1);
    MPoly core = exact_div(p, MPoly::monomial(FieldElement::one(), exp2(out.nu0, out.nu_last)));
    // core = C * prod (v^k - t_i u^l)^{nu_i}; as a polynomial in S = v^k at u=1
    int total_v = core.degree(1);
    check_input(total_v % w.k == 0, "quasi-homogeneous core has unexpected v-degree");
    int n_roots_total = total_v / w.k;
    UniPoly<FieldElement> edge_poly;
    edge_poly.c.assign(static_cast<std::size_t>(n_roots_total) + 1, FieldElement::zero());
    for (auto& [e, c] : core.t) {
        check_input(e[1] % w.k == 0 && e[0] % w.l == 0, "core support off the weighted lattice");
        edge_poly.c[static_cast<std::size_t>(e[1] / w.k)] = c;
    }
    edge_poly.normalize();
    out.constant = edge_poly.lc();
    UniPoly<FieldElement> monic = edge_poly.scaled(out.constant.inverse());
    if (monic.degree() > 0) {
        auto roots = split_completely(monic, opt);
        for (auto& [r, mult] : roots) {
            check_consistent(!r.is_zero(), "edge polynomial produced a zero root");
            out.roots.emplace_back(r, mult);
        }
    }
    check_consistent(out.reconstruct() == p, "edge factorization failed to reconstruct its input");
    return out;
}

// --- rescaling equivalence ---

struct RescaleWitness {
    bool solvable = false;
    std::optional<std::pair<FieldElement, FieldElement>> witness;
    std::optional<std::vector<long long>> obstruction; // failing lattice relation (per support point)
    std::string note;
};

inline MPoly rescaled(const MPoly& p, const FieldElement& a, const FieldElement& b) {
    MPoly r;
    for (auto& [e, c] : p.t) r.add_term(e, c * a.pow(e[0]) * b.pow(e[1]));
    return r;
}

inline FieldElement character_power(const FieldElement& base, long long e) {
    return base.pow(static_cast<long>(e));
}

// Decides whether q(x,y) = p(ax, by) for some nonzero constants a, b.
inline RescaleWitness rescale_equal(const MPoly& p, const MPoly& q, const FactorOptions& opt = {}) {
    check_input(!p.is_zero() && !q.is_zero(), "rescaling comparison with a zero germ");
    RescaleWitness out;
    std::vector<IVec2> pts;
    std::vector<FieldElement> ratios;
    {
        auto it = p.t.begin();
        auto jt = q.t.begin();
        for (; it != p.t.end() && jt != q.t.end(); ++it, ++jt) {
            if (it->first != jt->first) {
                out.note = "supports differ";
                return out;
            }
            pts.push_back({it->first[0], it->first[1]});
            ratios.push_back(jt->second / it->second);
        }
        if (it != p.t.end() || jt != q.t.end()) {
            out.note = "supports differ";
            return out;
        }
    }
    // character consistency on the relation lattice
    auto kernel = integer_kernel(pts);
    for (auto& rel : kernel) {
        FieldElement prod = FieldElement::one();
        bool nontrivial = false;
        for (std::size_t i = 0; i < rel.size(); ++i) {
            if (rel[i] == 0) continue;
            nontrivial = true;
            prod = prod * character_power(ratios[i], rel[i]);
        }
        if (nontrivial && !prod.is_one()) {
            out.obstruction = rel;
            out.note = "coefficient-ratio character violates a support relation";
            return out;
        }
    }
    out.solvable = true;
    // witness from a triangular lattice basis
    auto basis = lattice_basis(pts);
    auto char_of = [&](const std::vector<long long>& comb) {
        FieldElement v = FieldElement::one();
        for (std::size_t i = 0; i < comb.size(); ++i)
            if (comb[i] != 0) v = v * character_power(ratios[i], comb[i]);
        return v;
    };
    try {
        FieldElement a = FieldElement::one(), b = FieldElement::one();
        TowerPtr k = nullptr;
        for (auto& r : ratios) k = deeper_tower(k, r.tower());
        if (basis.rank == 2) {
            // g1=(p1,q1), g2=(0,q2): solve b^q2 = v2, then a^p1 = v1 * b^-q1
            FieldElement v2 = char_of(basis.comb2);
            check_consistent(basis.g2.a == 0 && basis.g2.b != 0, "unexpected lattice triangularization");
            long long q2 = basis.g2.b;
            FieldElement target2 = q2 > 0 ? v2 : v2.inverse();
            auto [k1, broot] = nth_root(k, target2, static_cast<int>(std::llabs(q2)), opt);
            b = broot;
            k = k1;
            FieldElement v1 = char_of(basis.comb1);
            check_consistent(basis.g1.a != 0, "unexpected lattice triangularization");
            FieldElement rhs = v1 * b.pow(-basis.g1.b);
            FieldElement target1 = basis.g1.a > 0 ? rhs : rhs.inverse();
            auto [k2, aroot] = nth_root(k, target1, static_cast<int>(std::llabs(basis.g1.a)), opt);
            a = aroot;
            k = k2;
        } else if (basis.rank == 1) {
            FieldElement v1 = char_of(basis.comb1);
            if (basis.g1.a != 0) {
                FieldElement target = basis.g1.a > 0 ? v1 : v1.inverse();
                auto [k1, aroot] = nth_root(k, target, static_cast<int>(std::llabs(basis.g1.a)), opt);
                a = aroot;
                k = k1;
            } else {
                FieldElement target = basis.g1.b > 0 ? v1 : v1.inverse();
                auto [k1, broot] = nth_root(k, target, static_cast<int>(std::llabs(basis.g1.b)), opt);
                b = broot;
                k = k1;
            }
        }
        check_consistent(rescaled(p, a, b) == q, "rescaling witness failed verification");
        out.witness = std::make_pair(a, b);
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::Capacity) throw;
        out.note = "solvable; witness omitted (tower degree cap)";
    }
    return out;
}

// --- Minkowski sum of diagrams (used by tests and the ledger cross-check) ---

inline NewtonDiagram diagram_from_offset_and_edges(LatticePoint start,
                                                   std::vector<std::pair<LatticePoint, Rational>> vecs) {
    std::sort(vecs.begin(), vecs.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    NewtonDiagram d;
    d.vertices.push_back(start);
    // merge equal inclinations
    std::size_t i = 0;
    while (i < vecs.size()) {
        LatticePoint v = vecs[i].first;
        std::size_t j = i + 1;
        while (j < vecs.size() && vecs[j].second == vecs[i].second) {
            v.first += vecs[j].first.first;
            v.second += vecs[j].first.second;
            ++j;
        }
        LatticePoint last = d.vertices.back();
        LatticePoint next{last.first + v.first, last.second + v.second};
        DiagramEdge e;
        e.from = last;
        e.to = next;
        e.inclination = vecs[i].second;
        d.edges.push_back(e);
        d.vertices.push_back(next);
        i = j;
    }
    d.x_mult = start.first;
    d.y_mult = d.vertices.back().second;
    return d;
}

inline NewtonDiagram minkowski_sum(const NewtonDiagram& a, const NewtonDiagram& b) {
    LatticePoint start{a.vertices.front().first + b.vertices.front().first,
                       a.vertices.front().second + b.vertices.front().second};
    std::vector<std::pair<LatticePoint, Rational>> vecs;
    for (auto& e : a.edges)
        vecs.push_back({{e.to.first - e.from.first, e.to.second - e.from.second}, e.inclination});
    for (auto& e : b.edges)
        vecs.push_back({{e.to.first - e.from.first, e.to.second - e.from.second}, e.inclination});
    return diagram_from_offset_and_edges(start, std::move(vecs));
}

// Tangent cone (lowest total-degree form) of a germ or series body.
inline MPoly tangent_cone(const MPoly& f) {
    check_input(!f.is_zero(), "tangent cone of zero");
    int m = f.order();
    MPoly r;
    for (auto& [e, c] : f.t)
        if (e[0] + e[1] == m) r.add_term(e, c);
    return r;
}

// Compares tangent directions: squarefree parts of the two cones must agree
// up to a nonzero constant.
inline bool same_tangent_directions(const MPoly& cone1, const MPoly& cone2) {
    MPoly s1 = squarefree_part(cone1);
    MPoly s2 = squarefree_part(cone2);
    return s1 == s2; // both lex-monic by construction
}

// Equality up to a nonzero constant factor.
inline bool equal_up_to_constant(const MPoly& p, const MPoly& q) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    if (p.t.size() != q.t.size()) return false;
    FieldElement ratio = q.t.begin()->second / p.t.begin()->second;
    auto it = p.t.begin();
    auto jt = q.t.begin();
    for (; it != p.t.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (jt->second != it->second * ratio) return false;
    }
    return true;
}

} // namespace germlab
