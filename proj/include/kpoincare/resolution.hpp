#ifndef KPOINCARE_RESOLUTION_HPP
#define KPOINCARE_RESOLUTION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <kpoincare/errors.hpp>
#include <kpoincare/exactfield.hpp>
#include <kpoincare/linalg.hpp>
#include <kpoincare/poly.hpp>
#include <kpoincare/series.hpp>

namespace kpoincare
{

// ---------------------------------------------------------------------------
// Parametrizations
// ---------------------------------------------------------------------------

// A germ of curve given by polynomials x(tau), y(tau) vanishing at 0,
// coefficient of tau^i at index i.
template <typename R>
struct plane_param {
    R zero;
    std::vector<R> x;
    std::vector<R> y;

    std::size_t degree() const
    {
        std::size_t d = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!is_zero(x[i])) {
                d = std::max(d, i);
            }
        }
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (!is_zero(y[i])) {
                d = std::max(d, i);
            }
        }
        return d;
    }
};

// One term c * tau^exp of y(tau). An empty coefficient is the generic
// (transcendental) marker.
struct branch_term {
    int exp;
    std::optional<alg_num> coeff;
};

// Puiseux-type parametrization x = tau^m, y = sum c_i tau^i.
struct branch_param {
    field_ptr field;
    int x_order = 1;
    std::vector<branch_term> y_terms;

    bool has_generic() const
    {
        return std::any_of(y_terms.begin(), y_terms.end(), [](const branch_term &t) { return !t.coeff; });
    }

    int max_exponent() const
    {
        int e = x_order;
        for (const auto &t : y_terms) {
            e = std::max(e, t.exp);
        }
        return e;
    }

    // Generic coefficients are replaced by `indeterminate`.
    template <typename R>
    plane_param<R> to_plane(const R &indeterminate) const
    {
        const R zero = lift<R>::from(alg_num::zero(field));
        plane_param<R> p{zero, std::vector<R>(static_cast<std::size_t>(x_order) + 1, zero), {}};
        p.x.back() = lift<R>::from(alg_num::one(field));
        p.y.assign(static_cast<std::size_t>(max_exponent()) + 1, zero);
        for (const auto &t : y_terms) {
            p.y[static_cast<std::size_t>(t.exp)] = t.coeff ? lift<R>::from(*t.coeff) : indeterminate;
        }
        return p;
    }

    plane_param<alg_num> to_plane() const
    {
        if (has_generic()) {
            throw generic_center("branch has a generic coefficient");
        }
        return to_plane<alg_num>(alg_num::zero(field));
    }
};

// Drops zero terms, orders so that ord x <= ord y and checks that the
// parametrization is primitive (gcd of m and the support is 1).
inline branch_param normalize(branch_param p)
{
    if (p.x_order <= 0) {
        throw not_irreducible_param("x order must be positive");
    }
    std::vector<branch_term> terms;
    int prev = 0;
    for (auto &t : p.y_terms) {
        if (t.exp <= prev) {
            throw not_irreducible_param("y exponents must be positive and strictly increasing");
        }
        prev = t.exp;
        if (!t.coeff || !t.coeff->is_zero()) {
            terms.push_back(std::move(t));
        }
    }
    p.y_terms = std::move(terms);
    if (!p.y_terms.empty() && p.y_terms.front().exp < p.x_order) {
        const auto &lead = p.y_terms.front();
        if (p.y_terms.size() != 1 || !lead.coeff || !(*lead.coeff == alg_num::one(p.field))) {
            throw not_irreducible_param("ord y < ord x and y is not a monic monomial; swap the coordinates");
        }
        const int n = lead.exp;
        p.y_terms = {branch_term{p.x_order, alg_num::one(p.field)}};
        p.x_order = n;
    }
    int g = p.x_order;
    for (const auto &t : p.y_terms) {
        g = std::gcd(g, t.exp);
    }
    if (g != 1) {
        throw not_irreducible_param("gcd of x order and y exponents is " + std::to_string(g));
    }
    return p;
}

// Applies z -> root_image to every coefficient.
inline branch_param conjugate_param(const branch_param &p, const alg_num &root_image)
{
    if (!evaluate(p.field->min_poly(), root_image).is_zero()) {
        throw not_a_root("image is not a root of the defining polynomial");
    }
    branch_param out = p;
    for (auto &t : out.y_terms) {
        if (t.coeff) {
            t.coeff = evaluate(t.coeff->coords(), root_image);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Single blow-up in standard charts
// ---------------------------------------------------------------------------

// Strict transform in a standard chart (u, w) of the last exceptional
// component {u = 0}; the point lies at (0, w(0)).
template <typename F>
struct chart_local {
    trunc_series<F> u;
    trunc_series<F> w;
};

namespace detail
{

// Certified comparison of the orders of two truncated series.
template <typename F>
std::strong_ordering compare_orders(const trunc_series<F> &a, const trunc_series<F> &b)
{
    const auto oa = a.order();
    const auto ob = b.order();
    if (oa && ob) {
        return *oa <=> *ob;
    }
    if (oa && b.precision() > *oa) {
        return std::strong_ordering::less;
    }
    if (ob && a.precision() > *ob) {
        return std::strong_ordering::greater;
    }
    throw truncation_too_short("cannot compare orders at this precision");
}

template <typename F>
std::size_t min_order(const trunc_series<F> &a, const trunc_series<F> &b)
{
    return compare_orders(a, b) <= 0 ? *a.order() : *b.order();
}

// Chart 1: (u, (w - a)/u). Chart 2: (w - a, u/(w - a)).
template <typename F>
chart_local<F> apply_chart(const chart_local<F> &s, const F &a, int chart)
{
    trunc_series<F> wt = s.w.minus_constant(a);
    if (chart == 1) {
        return {s.u, wt / s.u};
    }
    return {wt, s.u / wt};
}

template <typename F>
int preferred_chart(const trunc_series<F> &u, const trunc_series<F> &wt)
{
    return compare_orders(u, wt) <= 0 ? 1 : 2;
}

// Whether a carrier may follow the reference into `chart` (otherwise its
// next point is at infinity of that chart, away from the reference point).
template <typename F>
bool chart_compatible(const trunc_series<F> &u, const trunc_series<F> &wt, int chart)
{
    const auto c = compare_orders(u, wt);
    return chart == 1 ? c <= 0 : c >= 0;
}

template <typename F>
chart_local<F> start_chart(const plane_param<F> &p, std::size_t precision)
{
    chart_local<F> s{trunc_series<F>::from_poly(p.x, p.zero, precision),
                     trunc_series<F>::from_poly(p.y, p.zero, precision)};
    if (!is_zero(s.u[0]) || !is_zero(s.w[0])) {
        throw math_error("parametrization does not pass through the origin");
    }
    return s;
}

// Runs `f(precision)` with growing precision until no truncation shortfall.
template <typename Fn>
auto with_precision(std::size_t start, Fn &&f)
{
    constexpr std::size_t cap = std::size_t(1) << 13;
    for (std::size_t p = std::max<std::size_t>(start, 16);; p *= 2) {
        try {
            return f(p);
        } catch (const truncation_too_short &) {
            if (p >= cap) {
                throw;
            }
        }
    }
}

} // namespace detail

template <typename F>
struct blow_up_result {
    F center; // coordinate of the strict transform's point on the new component
    chart_local<F> next;
    std::size_t mult;
    int chart;
};

// Blows up the point (0, w(0)) of the chart. Throws generic_center when
// the coordinate on the new component depends on a generic coefficient.
template <typename F>
blow_up_result<F> blow_up_once(const chart_local<F> &s)
{
    const F a = s.w[0];
    const trunc_series<F> wt = s.w.minus_constant(a);
    const int chart = detail::preferred_chart(s.u, wt);
    const std::size_t mult = detail::min_order(s.u, wt);
    chart_local<F> next = detail::apply_chart(s, a, chart);
    if (next.w.precision() == 0) {
        throw truncation_too_short("no coefficients left after blow-up");
    }
    F center = next.w[0];
    if (!lift<F>::constant(center)) {
        throw generic_center("center depends on a generic coefficient");
    }
    return {std::move(center), std::move(next), mult, chart};
}

// ---------------------------------------------------------------------------
// Infinitely near points and the quotient dual graph
// ---------------------------------------------------------------------------

// Point p_k of the chain. p_0 is the origin; p_k (k >= 1) lies on the
// component E_k created by blowing up p_{k-1}.
struct inf_near_record {
    int step = 0;
    std::optional<alg_num> center; // coordinate on E_k; empty for a generic center
    int branch_mult = 0;
    int chart = 0;                 // chart used to blow p_k up, 0 when it is not blown up
    subfield field_after;          // field generated by the centers up to this one
    std::vector<int> host_components;
    int zero_neighbor = 0;         // component meeting E_k at coordinate 0 (0: none)
    std::size_t contact = 0;       // intersection multiplicity of the strict transform with E_k
};

enum class valuation_case { I, III };

struct vertex_tag {
    enum class kind { initial, dead_end, rupture, splitting, plain, delta };
    kind k;
    int index = 0;

    friend bool operator==(const vertex_tag &, const vertex_tag &) = default;
};

struct graph_vertex {
    int id = 0;
    std::vector<vertex_tag> tags;
    int self_int = 0;
    std::size_t field_dim = 1;

    bool has(vertex_tag::kind k) const
    {
        return std::any_of(tags.begin(), tags.end(), [k](const vertex_tag &t) { return t.k == k; });
    }
};

struct splitting_vertex {
    int vertex;
    std::size_t ell;
};

struct quotient_graph {
    std::vector<graph_vertex> vertices; // vertex id i is at position i - 1
    std::vector<std::pair<int, int>> edges;
    std::vector<int> geodesic;          // sigma_0 ... delta
    std::vector<int> dead_ends;         // sigma_0 ... sigma_g
    std::vector<int> ruptures;          // tau_1 ... tau_g
    std::vector<splitting_vertex> splittings; // rho_1 ... rho_s
    valuation_case kind = valuation_case::I;
    std::optional<int> n_case3;

    std::size_t size() const
    {
        return vertices.size();
    }
    const graph_vertex &vertex(int id) const
    {
        return vertices.at(static_cast<std::size_t>(id - 1));
    }
    int delta() const
    {
        return geodesic.back();
    }
    bool adjacent(int a, int b) const
    {
        const auto e = std::minmax(a, b);
        return std::binary_search(edges.begin(), edges.end(), std::pair<int, int>(e.first, e.second));
    }
};

// Builds the dual graph of the components E_1..E_n created by blowing up
// records[0..n-1], and reads off dead ends, ruptures and splittings.
inline quotient_graph build_graph(const std::vector<inf_near_record> &records, std::size_t n)
{
    if (n == 0 || records.size() < n) {
        throw math_error("graph needs at least one blown-up point");
    }
    quotient_graph g;
    std::set<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < n; ++k) {
        const int id = static_cast<int>(k) + 1;
        graph_vertex v;
        v.id = id;
        v.self_int = -1;
        v.field_dim = records[k].field_after.dim();
        g.vertices.push_back(v);
        const auto &hosts = records[k].host_components;
        for (int h : hosts) {
            g.vertices[static_cast<std::size_t>(h - 1)].self_int -= 1;
            edges.insert(std::minmax(h, id));
        }
        if (hosts.size() == 2) {
            edges.erase(std::minmax(hosts[0], hosts[1]));
        }
    }
    g.edges.assign(edges.begin(), edges.end());

    std::vector<std::vector<int>> adj(n + 1);
    for (const auto &[a, b] : g.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    // Path from E_1 to E_n.
    std::vector<int> parent(n + 1, 0);
    std::queue<int> q;
    q.push(1);
    parent[1] = -1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (parent[static_cast<std::size_t>(w)] == 0) {
                parent[static_cast<std::size_t>(w)] = v;
                q.push(w);
            }
        }
    }
    for (int v = static_cast<int>(n); v != -1; v = parent[static_cast<std::size_t>(v)]) {
        g.geodesic.push_back(v);
    }
    std::reverse(g.geodesic.begin(), g.geodesic.end());
    std::map<int, std::size_t> position;
    for (std::size_t i = 0; i < g.geodesic.size(); ++i) {
        position[g.geodesic[i]] = i;
    }

    // Leaves off the geodesic, keyed by the geodesic vertex their chain hangs from.
    std::vector<std::pair<std::size_t, int>> leaves;
    for (int v = 2; v <= static_cast<int>(n); ++v) {
        if (adj[static_cast<std::size_t>(v)].size() != 1 || position.count(v)) {
            continue;
        }
        int prev = v;
        int cur = adj[static_cast<std::size_t>(v)][0];
        while (!position.count(cur)) {
            const auto &nb = adj[static_cast<std::size_t>(cur)];
            const int nxt = nb[0] == prev ? nb[1] : nb[0];
            prev = cur;
            cur = nxt;
        }
        leaves.emplace_back(position[cur], v);
    }
    std::sort(leaves.begin(), leaves.end());

    auto tag = [&g](int id, vertex_tag::kind k, int idx) {
        g.vertices[static_cast<std::size_t>(id - 1)].tags.push_back({k, idx});
    };
    tag(1, vertex_tag::kind::initial, 0);
    tag(1, vertex_tag::kind::dead_end, 0);
    g.dead_ends.push_back(1);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const int leaf = leaves[i].second;
        const int rupture = g.geodesic[leaves[i].first];
        tag(leaf, vertex_tag::kind::dead_end, static_cast<int>(i) + 1);
        tag(rupture, vertex_tag::kind::rupture, static_cast<int>(i) + 1);
        g.dead_ends.push_back(leaf);
        g.ruptures.push_back(rupture);
    }
    // E_k is a splitting vertex when the center it hosts leaves K_{E_k}.
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t before = records[k - 1].field_after.dim();
        const std::size_t after = records[k].field_after.dim();
        if (after != before) {
            g.splittings.push_back({static_cast<int>(k), after / before});
            tag(static_cast<int>(k), vertex_tag::kind::splitting, static_cast<int>(g.splittings.size()));
        }
    }
    tag(static_cast<int>(n), vertex_tag::kind::delta, 0);
    for (auto &v : g.vertices) {
        if (v.tags.empty()) {
            v.tags.push_back({vertex_tag::kind::plain, 0});
        }
    }
    return g;
}

struct resolution {
    field_ptr field;
    branch_param branch;
    std::vector<inf_near_record> records; // p_0 .. p_n, E_n the last component
    quotient_graph graph;
    valuation_case kind = valuation_case::I;
    int delta_curve = 0; // delta_C in Case I, delta_nu in Case III
    std::optional<int> n_case3;

    std::size_t components() const
    {
        return records.size() - 1;
    }
};

namespace detail
{

template <typename F>
struct raw_point {
    F center;
    std::size_t mult;
    int chart;
    std::vector<int> hosts;
    int zero_neighbor;
    std::size_t contact; // ord u: intersection multiplicity with the last component
    bool free_transverse;
};

// Walks the chain of infinitely near points of one parametrization,
// recording chart data and host components.
template <typename F>
class chain_walker
{
public:
    chain_walker(const plane_param<F> &p, std::size_t precision) : m_state(start_chart(p, precision)) {}

    // Analyses the current point without blowing it up.
    raw_point<F> inspect() const
    {
        const F a = m_points.empty() ? m_state.w.zero() : m_state.w[0];
        const trunc_series<F> wt = m_state.w.minus_constant(a);
        raw_point<F> pt{a, min_order(m_state.u, wt), preferred_chart(m_state.u, wt), {}, m_zero, 0, false};
        if (m_last != 0) {
            pt.hosts.push_back(m_last);
            if (is_zero(a) && m_zero != 0) {
                pt.hosts.push_back(m_zero);
            }
            pt.contact = m_state.u.order_or_throw();
            pt.free_transverse = pt.contact == 1 && pt.hosts.size() == 1;
        }
        return pt;
    }

    // Blows up the current point in `chart`.
    void blow_up(const raw_point<F> &pt, int chart)
    {
        const bool satellite = pt.hosts.size() == 2;
        m_state = apply_chart(m_state, pt.center, chart);
        if (m_state.w.precision() == 0) {
            throw truncation_too_short("no coefficients left after blow-up");
        }
        m_zero = chart == 1 ? (satellite ? m_zero : 0) : m_last;
        m_last = static_cast<int>(m_points.size()) + 1;
        m_points.push_back(pt);
    }

    const chart_local<F> &state() const
    {
        return m_state;
    }
    std::size_t blown_up() const
    {
        return m_points.size();
    }

private:
    chart_local<F> m_state;
    int m_last = 0;
    int m_zero = 0;
    std::vector<raw_point<F>> m_points;
};

template <typename F>
struct raw_run {
    std::vector<raw_point<F>> points;
    std::optional<std::size_t> generic_at;
    std::optional<std::size_t> resolved_at;
};

// Follows the chain until `stop(points, resolved_at)` is satisfied or a
// generic center appears.
template <typename F, typename Stop>
raw_run<F> run_chain(const plane_param<F> &p, std::size_t precision, Stop &&stop)
{
    chain_walker<F> walker(p, precision);
    raw_run<F> run;
    for (;;) {
        raw_point<F> pt = walker.inspect();
        const std::size_t k = run.points.size();
        if (k >= 1 && !lift<F>::constant(pt.center)) {
            run.points.push_back(std::move(pt));
            run.generic_at = k;
            return run;
        }
        if (!run.resolved_at && pt.free_transverse) {
            run.resolved_at = k;
        }
        run.points.push_back(pt);
        if (stop(run)) {
            return run;
        }
        walker.blow_up(pt, pt.chart);
    }
}

template <typename F>
resolution resolve_impl(const branch_param &bp, const plane_param<F> &plane, int extra_steps, std::size_t precision)
{
    const std::size_t lookahead = static_cast<std::size_t>(bp.max_exponent()) + 2;
    const std::size_t step_cap = 64 * lookahead + 64;
    std::size_t target = 0; // index of the last point to record, once known
    std::optional<std::size_t> delta_c;

    auto compute_delta = [](const raw_run<F> &run, const field_ptr &f) {
        subfield k = subfield::rationals(f);
        std::size_t last_jump = 0;
        for (std::size_t i = 1; i < run.points.size(); ++i) {
            const alg_num a = *lift<F>::constant(run.points[i].center);
            if (!k.contains(a)) {
                k = span_close({a}, k);
                last_jump = i;
            }
        }
        return std::max(*run.resolved_at, last_jump + 1);
    };

    raw_run<F> run = run_chain(plane, precision, [&](const raw_run<F> &r) {
        const std::size_t k = r.points.size() - 1;
        if (k > step_cap) {
            throw math_error("resolution did not terminate");
        }
        if (!r.resolved_at || k < *r.resolved_at + lookahead) {
            return false;
        }
        if (bp.has_generic()) {
            throw math_error("generic coefficient never reached a blow-up center");
        }
        if (!delta_c) {
            delta_c = compute_delta(r, bp.field);
            target = *delta_c + static_cast<std::size_t>(extra_steps);
        }
        return k >= target;
    });

    resolution res;
    res.field = bp.field;
    res.branch = bp;
    std::size_t last;
    if (run.generic_at) {
        res.kind = valuation_case::III;
        last = *run.generic_at;
        res.n_case3 = static_cast<int>(run.points[last].contact);
        res.delta_curve = static_cast<int>(last);
    } else {
        res.delta_curve = static_cast<int>(*delta_c);
        last = target;
    }
    if (last == 0) {
        throw math_error("chain has no exceptional component");
    }

    subfield k = subfield::rationals(bp.field);
    for (std::size_t i = 0; i <= last; ++i) {
        const auto &pt = run.points[i];
        inf_near_record rec{static_cast<int>(i), std::nullopt, static_cast<int>(pt.mult), i < last ? pt.chart : 0,
                            k, pt.hosts, pt.zero_neighbor, pt.contact};
        if (i == 0) {
            rec.center = alg_num::zero(bp.field);
        } else if (auto c = lift<F>::constant(pt.center)) {
            rec.center = *c;
            if (!k.contains(*c)) {
                k = span_close({*c}, k);
            }
        }
        rec.field_after = k;
        res.records.push_back(std::move(rec));
    }
    res.graph = build_graph(res.records, last);
    res.graph.kind = res.kind;
    res.graph.n_case3 = res.n_case3;
    return res;
}

} // namespace detail

// Runs the blow-up process on a branch. In Case I the chain is followed to
// delta_C (the first component after the complex resolution and after the
// last field jump) and then `extra_steps` further free points. A generic
// coefficient stops the process at the component hosting the generic
// center (Case III).
inline resolution resolve(const branch_param &input, int extra_steps = 0)
{
    if (extra_steps < 0) {
        throw math_error("extra_steps must be non-negative");
    }
    const branch_param bp = normalize(input);
    const std::size_t start = 8 * static_cast<std::size_t>(bp.max_exponent() + extra_steps) + 32;
    if (bp.has_generic()) {
        const auto plane = bp.to_plane<rat_func>(rat_func::variable(bp.field));
        return detail::with_precision(start, [&](std::size_t p) {
            return detail::resolve_impl<rat_func>(bp, plane, extra_steps, p);
        });
    }
    const auto plane = bp.to_plane();
    return detail::with_precision(start, [&](std::size_t p) {
        return detail::resolve_impl<alg_num>(bp, plane, extra_steps, p);
    });
}

// The Case III reduction: the graph up to the component carrying the
// generic center and the contact n of the strict transform with it.
inline std::pair<quotient_graph, int> case_III_reduce(const branch_param &p)
{
    if (!normalize(p).has_generic()) {
        throw math_error("branch has no generic coefficient");
    }
    resolution r = resolve(p);
    return {r.graph, *r.n_case3};
}

// ---------------------------------------------------------------------------
// Curvettes and multiplicities
// ---------------------------------------------------------------------------

// Blow-down of the curve {u = tau, w = c} in the creation chart of E_k.
// Works over any coefficient ring so that c may be an indeterminate.
template <typename R>
plane_param<R> curvette_param_generic(const std::vector<inf_near_record> &records, int k, const R &c)
{
    if (k < 1 || static_cast<std::size_t>(k) >= records.size() || records[static_cast<std::size_t>(k - 1)].chart == 0) {
        throw index_out_of_range("no component E_" + std::to_string(k));
    }
    const R zero = zero_like(c);
    poly<R> u(zero, {zero, one_like(c)});
    poly<R> w(zero, {c});
    for (int i = k - 1; i >= 0; --i) {
        const auto &rec = records[static_cast<std::size_t>(i)];
        const poly<R> a = poly<R>(zero, {lift<R>::from(*rec.center)});
        if (rec.chart == 1) {
            w = a + u * w;
        } else {
            poly<R> nu = u * w;
            w = a + u;
            u = std::move(nu);
        }
    }
    return {zero, u.coeffs(), w.coeffs()};
}

inline subfield component_field(const std::vector<inf_near_record> &records, int k)
{
    return records.at(static_cast<std::size_t>(k - 1)).field_after;
}

// Coordinates on E_k a curvette must avoid: the chain's point on E_k and
// the intersection with the neighbour at 0.
inline std::vector<alg_num> special_points(const std::vector<inf_near_record> &records, int k)
{
    std::vector<alg_num> out;
    const auto &f = records.front().field_after.ambient();
    if (static_cast<std::size_t>(k) < records.size()) {
        const auto &rec = records[static_cast<std::size_t>(k)];
        if (rec.center) {
            out.push_back(*rec.center);
        }
        if (rec.zero_neighbor != 0) {
            out.push_back(alg_num::zero(f));
        }
    }
    return out;
}

inline plane_param<alg_num> curvette_param(const std::vector<inf_near_record> &records, int k, const alg_num &c)
{
    if (k < 1 || static_cast<std::size_t>(k) >= records.size() || records[static_cast<std::size_t>(k - 1)].chart == 0) {
        throw index_out_of_range("no component E_" + std::to_string(k));
    }
    if (!component_field(records, k).contains(c)) {
        throw bad_constant("curvette constant " + c.str() + " is not in the field of E_" + std::to_string(k));
    }
    for (const auto &s : special_points(records, k)) {
        if (s == c) {
            throw bad_constant("curvette constant " + c.str() + " hits a special point of E_" + std::to_string(k));
        }
    }
    return curvette_param_generic<alg_num>(records, k, c);
}

// Smallest positive integers avoiding the special points of E_k.
inline std::vector<alg_num> curvette_constants(const std::vector<inf_near_record> &records, int k, std::size_t count,
                                               const std::vector<alg_num> &also_avoid = {})
{
    const auto &f = records.front().field_after.ambient();
    std::vector<alg_num> avoid = special_points(records, k);
    avoid.insert(avoid.end(), also_avoid.begin(), also_avoid.end());
    std::vector<alg_num> out;
    for (long c = 1; out.size() < count; ++c) {
        const alg_num cand(f, rational(c));
        if (std::find(avoid.begin(), avoid.end(), cand) == avoid.end()) {
            out.push_back(cand);
        }
    }
    return out;
}

inline plane_param<alg_num> default_curvette(const std::vector<inf_near_record> &records, int k)
{
    return curvette_param(records, k, curvette_constants(records, k, 1).front());
}

using multiplicity_sequence = std::vector<int>;

namespace detail
{

template <typename F>
multiplicity_sequence strict_mults_impl(const plane_param<F> &carrier, const std::vector<inf_near_record> &records,
                                        std::size_t precision)
{
    multiplicity_sequence out(records.size(), 0);
    chart_local<F> s = start_chart(carrier, precision);
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto &rec = records[k];
        if (!rec.center) {
            break;
        }
        const F a = lift<F>::from(*rec.center);
        if (k > 0 && !(s.w[0] == a)) {
            break;
        }
        const trunc_series<F> wt = s.w.minus_constant(a);
        out[k] = static_cast<int>(min_order(s.u, wt));
        if (rec.chart == 0 || !chart_compatible(s.u, wt, rec.chart)) {
            break;
        }
        s = apply_chart(s, a, rec.chart);
        if (s.w.precision() == 0) {
            throw truncation_too_short("carrier ran out of coefficients");
        }
    }
    return out;
}

} // namespace detail

// Multiplicities of the carrier's strict transforms at the points of a
// reference chain; zero from the first point the carrier misses.
inline multiplicity_sequence strict_mults(const plane_param<alg_num> &carrier,
                                          const std::vector<inf_near_record> &records)
{
    const std::size_t start = 4 * (carrier.degree() + records.size()) + 16;
    return detail::with_precision(start, [&](std::size_t p) { return detail::strict_mults_impl(carrier, records, p); });
}

// Intersection multiplicity by Noether's formula; nullopt means the two
// parametrizations describe the same branch. For distinct branches the
// value is at most deg(a) * deg(b), which certifies the infinite case.
inline std::optional<long long> intersect_noether(const plane_param<alg_num> &a, const plane_param<alg_num> &b)
{
    const long long bound = static_cast<long long>(a.degree()) * static_cast<long long>(b.degree());
    const std::size_t start = 4 * static_cast<std::size_t>(bound + 1) + 4 * (a.degree() + b.degree()) + 16;
    return detail::with_precision(start, [&](std::size_t p) -> std::optional<long long> {
        detail::chain_walker<alg_num> wa(a, p);
        chart_local<alg_num> sb = detail::start_chart(b, p);
        long long sum = 0;
        for (std::size_t k = 0;; ++k) {
            const auto pa = wa.inspect();
            if (k > 0 && !(sb.w[0] == pa.center)) {
                return sum;
            }
            const trunc_series<alg_num> wt = sb.w.minus_constant(pa.center);
            sum += static_cast<long long>(pa.mult) * static_cast<long long>(detail::min_order(sb.u, wt));
            if (sum > bound) {
                return std::nullopt;
            }
            if (!detail::chart_compatible(sb.u, wt, pa.chart)) {
                return sum;
            }
            sb = detail::apply_chart(sb, pa.center, pa.chart);
            wa.blow_up(pa, pa.chart);
            if (sb.w.precision() == 0) {
                throw truncation_too_short("carrier ran out of coefficients");
            }
        }
    });
}

// m_sigma = C . C_sigma for every vertex, C_sigma the default curvette.
inline std::map<int, long long> m_values(const resolution &res)
{
    if (res.kind != valuation_case::I) {
        throw math_error("m values need a Case I resolution");
    }
    const auto branch = res.branch.to_plane();
    std::map<int, long long> out;
    for (const auto &v : res.graph.vertices) {
        const auto m = intersect_noether(branch, default_curvette(res.records, v.id));
        if (!m) {
            throw math_error("curvette coincides with the branch");
        }
        out[v.id] = *m;
    }
    return out;
}

inline imatrix intersection_matrix(const quotient_graph &g)
{
    const std::size_t n = g.size();
    imatrix e(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        e[i][i] = g.vertices[i].self_int;
    }
    for (const auto &[a, b] : g.edges) {
        e[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = 1;
        e[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] = 1;
    }
    return e;
}

inline qmatrix minus_inverse(const imatrix &e)
{
    qmatrix inv = inverse(to_qmatrix(e));
    for (auto &row : inv) {
        for (auto &x : row) {
            x = -x;
        }
    }
    return inv;
}

// Proximity equalities along the chain: the multiplicity at p_k equals
// the sum over the recorded points proximate to it (those lying on E_{k+1}).
inline bool proximity_check(const std::vector<inf_near_record> &records)
{
    for (std::size_t k = 0; k + 1 < records.size(); ++k) {
        const int created = static_cast<int>(k) + 1;
        long long sum = 0;
        for (std::size_t j = k + 1; j < records.size(); ++j) {
            const auto &h = records[j].host_components;
            if (std::find(h.begin(), h.end(), created) != h.end()) {
                sum += records[j].branch_mult;
            }
        }
        if (sum != records[k].branch_mult) {
            return false;
        }
    }
    return true;
}

} // namespace kpoincare

#endif
