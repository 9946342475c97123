#ifndef KPOINCARE_REPORT_HPP
#define KPOINCARE_REPORT_HPP

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <kpoincare/errors.hpp>
#include <kpoincare/oracle.hpp>
#include <kpoincare/poincare.hpp>
#include <kpoincare/resolution.hpp>

namespace kpoincare
{

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Values attached to the vertices of a graph
// ---------------------------------------------------------------------------

struct vertex_values {
    std::map<int, long long> m;
    std::map<int, long long> M;
    numerical_data nd;
};

// m_sigma = C . C_sigma and M_sigma for the branch of a Case I resolution.
inline vertex_values curve_values(const resolution &res)
{
    vertex_values out;
    out.m = m_values(res);
    out.M = big_M(res.graph, res.records, out.m);
    out.nd = assemble(res.graph, out.m, out.M);
    return out;
}

// Values of the divisorial valuation of the last component delta: the
// reference curve is a curvette at delta, and m_delta is its intersection
// with a second curvette at delta.
inline vertex_values divisorial_values(const resolution &res)
{
    const int delta = static_cast<int>(res.components());
    const auto consts = curvette_constants(res.records, delta, 2);
    const auto ref = curvette_param(res.records, delta, consts[0]);
    const auto alt = curvette_param(res.records, delta, consts[1]);
    vertex_values out;
    for (const auto &v : res.graph.vertices) {
        const auto other = v.id == delta ? alt : default_curvette(res.records, v.id);
        const auto m = intersect_noether(ref, other);
        if (!m) {
            throw math_error("curvettes at E_" + std::to_string(v.id) + " coincide");
        }
        out.m[v.id] = *m;
    }
    for (const auto &v : res.graph.vertices) {
        const auto phi = v.id == delta ? alt : default_curvette(res.records, v.id);
        out.M[v.id] = big_M_at(v.id, out.m.at(v.id), phi, res.records, res.graph, out.m);
    }
    out.nd = assemble(res.graph, out.m, out.M, out.M.at(delta));
    return out;
}

// ---------------------------------------------------------------------------
// Input documents
// ---------------------------------------------------------------------------

enum class input_mode { curve, divisorial, case2 };

struct input_doc {
    branch_param branch;
    input_mode mode = input_mode::curve;
    int extra_steps = 0;
    std::vector<splitting_datum> case2_splitting;
    std::optional<std::size_t> truncate;
    std::optional<std::vector<long long>> override_M_sigma;
};

namespace detail
{

inline rational json_rational(const ordered_json &j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return rational(j.get<long>());
    }
    throw parse_error("expected a rational as integer or \"p/q\" string");
}

inline long long json_int(const ordered_json &j, const std::string &what)
{
    if (!j.is_number_integer()) {
        throw parse_error(what + " must be an integer");
    }
    return j.get<long long>();
}

inline const ordered_json &member(const ordered_json &j, const std::string &key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw parse_error("missing field '" + key + "'");
    }
    return j.at(key);
}

} // namespace detail

inline input_doc parse_input(const ordered_json &j)
{
    if (!j.is_object()) {
        throw parse_error("input must be a JSON object");
    }
    input_doc doc;
    field_ptr field = ambient_field::rationals();
    if (j.contains("ambient")) {
        const auto &amb = j.at("ambient");
        qvec mp;
        const auto &list = detail::member(amb, "min_poly");
        if (!list.is_array()) {
            throw parse_error("min_poly must be a list");
        }
        for (const auto &c : list) {
            mp.push_back(detail::json_rational(c));
        }
        const std::string var = amb.contains("var") ? amb.at("var").get<std::string>() : "z";
        qvec trimmed = mp;
        qpoly::trim(trimmed);
        if (trimmed.size() < 2) {
            throw parse_error("min_poly must have positive degree");
        }
        field = ambient_field::make(mp, var);
    }
    doc.branch.field = field;
    const auto &br = detail::member(j, "branch");
    doc.branch.x_order = static_cast<int>(detail::json_int(detail::member(br, "x_order"), "x_order"));
    const auto &terms = detail::member(br, "y_terms");
    if (!terms.is_array()) {
        throw parse_error("y_terms must be a list");
    }
    for (const auto &t : terms) {
        branch_term bt{static_cast<int>(detail::json_int(detail::member(t, "exp"), "exp")), std::nullopt};
        const auto &c = detail::member(t, "coeff");
        if (c.is_string() && c.get<std::string>() == "generic") {
            doc.branch.y_terms.push_back(bt);
            continue;
        }
        qvec coords;
        if (c.is_array()) {
            for (const auto &x : c) {
                coords.push_back(detail::json_rational(x));
            }
        } else {
            coords.push_back(detail::json_rational(c));
        }
        if (c.is_array() && coords.size() != field->degree()) {
            throw parse_error("coefficient vector length " + std::to_string(coords.size())
                              + " differs from the field degree " + std::to_string(field->degree()));
        }
        coords.resize(field->degree());
        bt.coeff = alg_num(field, coords);
        doc.branch.y_terms.push_back(bt);
    }
    if (j.contains("mode")) {
        const auto &m = j.at("mode");
        if (m.is_string()) {
            if (m.get<std::string>() != "curve") {
                throw parse_error("unknown mode '" + m.get<std::string>() + "'");
            }
        } else if (m.is_object() && m.contains("divisorial")) {
            doc.mode = input_mode::divisorial;
            const auto &d = m.at("divisorial");
            doc.extra_steps = d.contains("extra_steps")
                                  ? static_cast<int>(detail::json_int(d.at("extra_steps"), "extra_steps"))
                                  : 0;
            if (doc.extra_steps < 0) {
                throw parse_error("extra_steps must be non-negative");
            }
        } else if (m.is_object() && m.contains("case2")) {
            doc.mode = input_mode::case2;
            for (const auto &s : detail::member(m.at("case2"), "splitting")) {
                doc.case2_splitting.push_back({detail::json_int(detail::member(s, "M_rho"), "M_rho"),
                                               detail::json_int(detail::member(s, "ell"), "ell"), 0});
            }
        } else {
            throw parse_error("mode must be \"curve\", {\"divisorial\": ...} or {\"case2\": ...}");
        }
    }
    if (j.contains("options") && j.at("options").contains("truncate")) {
        const long long n = detail::json_int(j.at("options").at("truncate"), "truncate");
        if (n < 0) {
            throw parse_error("truncate must be non-negative");
        }
        doc.truncate = static_cast<std::size_t>(n);
    }
    if (j.contains("overrides") && j.at("overrides").contains("M_sigma")) {
        std::vector<long long> ms;
        for (const auto &x : j.at("overrides").at("M_sigma")) {
            ms.push_back(detail::json_int(x, "M_sigma entry"));
        }
        doc.override_M_sigma = ms;
    }
    return doc;
}

inline input_doc parse_input_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open '" + path + "'");
    }
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    } catch (const std::exception &e) {
        throw parse_error(e.what());
    }
    try {
        return parse_input(j);
    } catch (const nlohmann::json::exception &e) {
        throw parse_error(std::string("malformed input: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

enum class series_kind { classical, divisorial };

struct analysis {
    input_doc input;
    resolution res;
    vertex_values values;
    series_product series;
    series_kind kind = series_kind::classical;
};

inline analysis analyze(const input_doc &doc)
{
    analysis a{doc, {}, {}, {}, series_kind::classical};
    const bool generic = normalize(doc.branch).has_generic();
    if (generic && doc.mode != input_mode::curve) {
        throw math_error("generic coefficients are only accepted in curve mode");
    }
    a.res = resolve(doc.branch, doc.mode == input_mode::divisorial ? doc.extra_steps : 0);
    if (a.res.kind == valuation_case::III || doc.mode == input_mode::divisorial) {
        a.values = divisorial_values(a.res);
        a.kind = series_kind::divisorial;
    } else {
        a.values = curve_values(a.res);
    }
    if (doc.mode == input_mode::case2) {
        a.values.nd = with_abstract_splittings(a.values.nd, doc.case2_splitting);
    }
    if (doc.override_M_sigma) {
        auto &nd = a.values.nd;
        if (doc.override_M_sigma->size() != nd.M_sigma.size()) {
            throw math_error("override M_sigma has the wrong length");
        }
        nd.M_sigma = *doc.override_M_sigma;
        for (std::size_t i = 0; i < nd.N.size(); ++i) {
            nd.M_tau[i] = nd.N[i] * nd.M_sigma[i + 1];
        }
    }
    a.series = a.kind == series_kind::divisorial ? divisorial_series(a.values.nd) : classical_series(a.values.nd);
    return a;
}

inline std::size_t default_truncation(const analysis &a)
{
    if (a.input.truncate) {
        return *a.input.truncate;
    }
    if (a.res.kind == valuation_case::I && a.input.mode == input_mode::curve) {
        return static_cast<std::size_t>(std::max<long long>(a.values.nd.Delta, 0)) + 10;
    }
    return 40;
}

struct verification {
    std::size_t max_order = 0;
    std::vector<long long> oracle_dims;
    std::vector<long long> series_coeffs;
    std::optional<std::size_t> first_mismatch;

    bool match() const
    {
        return !first_mismatch;
    }
};

// Compares the brute-force filtration dimensions with the series.
inline verification verify(const analysis &a, std::size_t V)
{
    if (a.input.mode == input_mode::case2) {
        throw math_error("abstract splitting data cannot be checked against a branch");
    }
    verification out;
    out.max_order = V;
    if (a.kind == series_kind::divisorial) {
        const int delta = static_cast<int>(a.res.components());
        out.oracle_dims = divisorial_filtration_dims(generic_curvette(a.res.records, delta), V).dims;
    } else {
        out.oracle_dims = filtration_dims(a.input.branch, V).dims;
    }
    out.series_coeffs = expand(a.series, V).coeffs;
    for (std::size_t v = 0; v <= V; ++v) {
        if (out.oracle_dims[v] != out.series_coeffs[v]) {
            out.first_mismatch = v;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string tag_name(const vertex_tag &t)
{
    switch (t.k) {
        case vertex_tag::kind::initial:
            return "INITIAL";
        case vertex_tag::kind::dead_end:
            return "DEAD_END(" + std::to_string(t.index) + ")";
        case vertex_tag::kind::rupture:
            return "RUPTURE(" + std::to_string(t.index) + ")";
        case vertex_tag::kind::splitting:
            return "SPLITTING(" + std::to_string(t.index) + ")";
        case vertex_tag::kind::plain:
            return "PLAIN";
        case vertex_tag::kind::delta:
            return "DELTA";
    }
    return "?";
}

inline std::string tag_list(const graph_vertex &v)
{
    std::string s;
    for (const auto &t : v.tags) {
        s += (s.empty() ? "" : ",") + tag_name(t);
    }
    return s;
}

inline std::string binomial_text(long long a)
{
    return a == 1 ? "(1 - t)" : "(1 - t^" + std::to_string(a) + ")";
}

// Human-readable product, numerator over denominator.
inline std::string formula(const series_product &sp)
{
    std::string num;
    std::string den;
    int den_count = 0;
    for (const auto &[a, s] : sp.factors) {
        std::string f = binomial_text(a);
        const long long p = s < 0 ? -s : s;
        if (p > 1) {
            f += "^" + std::to_string(p);
        }
        if (s > 0) {
            num += f;
        } else {
            den += f;
            ++den_count;
        }
    }
    if (num.empty()) {
        num = "1";
    }
    if (den.empty()) {
        return num;
    }
    if (den_count > 1 || den.find('^', den.rfind(')')) != std::string::npos) {
        den = "(" + den + ")";
    }
    return num + " / " + den;
}

inline std::string case_name(const analysis &a)
{
    if (a.input.mode == input_mode::case2) {
        return "II";
    }
    return a.res.kind == valuation_case::III ? "III" : "I";
}

inline std::string mode_name(input_mode m)
{
    switch (m) {
        case input_mode::curve:
            return "curve";
        case input_mode::divisorial:
            return "divisorial";
        case input_mode::case2:
            return "case2";
    }
    return "?";
}

inline ordered_json to_json(const verification &v)
{
    ordered_json j;
    j["max_order"] = v.max_order;
    j["oracle_dims"] = v.oracle_dims;
    j["series_coeffs"] = v.series_coeffs;
    j["match"] = v.match();
    if (v.first_mismatch) {
        const std::size_t k = *v.first_mismatch;
        j["first_mismatch"] = {{"v", k}, {"oracle", v.oracle_dims[k]}, {"series", v.series_coeffs[k]}};
    } else {
        j["first_mismatch"] = nullptr;
    }
    return j;
}

inline ordered_json report_json(const analysis &a, std::size_t truncate, const std::optional<verification> &ver)
{
    const auto &g = a.res.graph;
    const auto &nd = a.values.nd;
    ordered_json j;
    j["case"] = case_name(a);
    j["mode"] = mode_name(a.input.mode);
    if (a.res.n_case3) {
        j["n"] = *a.res.n_case3;
    }
    ordered_json field;
    field["var"] = a.res.field->var();
    std::vector<std::string> mp;
    for (const auto &c : a.res.field->min_poly()) {
        mp.push_back(to_string(c));
    }
    field["min_poly"] = mp;
    field["degree"] = a.res.field->degree();
    j["field"] = field;

    ordered_json graph;
    ordered_json verts = ordered_json::array();
    for (const auto &v : g.vertices) {
        ordered_json jv;
        jv["id"] = v.id;
        std::vector<std::string> kinds;
        for (const auto &t : v.tags) {
            kinds.push_back(tag_name(t));
        }
        jv["kinds"] = kinds;
        jv["self_int"] = v.self_int;
        jv["field_dim"] = v.field_dim;
        jv["m"] = a.values.m.at(v.id);
        jv["M"] = a.values.M.at(v.id);
        verts.push_back(jv);
    }
    graph["vertices"] = verts;
    ordered_json edges = ordered_json::array();
    for (const auto &[x, y] : g.edges) {
        edges.push_back({x, y});
    }
    graph["edges"] = edges;
    graph["geodesic"] = g.geodesic;
    graph["dead_ends"] = g.dead_ends;
    graph["ruptures"] = g.ruptures;
    graph["delta"] = g.delta();
    graph["delta_curve"] = a.res.delta_curve;
    j["graph"] = graph;

    ordered_json inv;
    inv["m_sigma"] = nd.m_sigma;
    inv["M_sigma"] = nd.M_sigma;
    inv["M_tau"] = nd.M_tau;
    inv["e"] = nd.e;
    inv["N"] = nd.N;
    ordered_json spl = ordered_json::array();
    for (const auto &s : nd.splitting) {
        ordered_json js;
        if (s.vertex != 0) {
            js["vertex"] = s.vertex;
        }
        js["M_rho"] = s.M_rho;
        js["ell"] = s.ell;
        spl.push_back(js);
    }
    inv["splitting"] = spl;
    inv["ell_total"] = nd.ell_total;
    inv["c"] = nd.c_conductor;
    inv["Delta"] = nd.Delta;
    if (nd.M_delta) {
        inv["M_delta"] = *nd.M_delta;
    }
    j["invariants"] = inv;

    const auto ex = expand(a.series, truncate);
    const auto fac = binomial_factorization(ex, &a.series);
    ordered_json ser;
    ser["kind"] = a.kind == series_kind::divisorial ? "divisorial" : "classical";
    ordered_json factors = ordered_json::array();
    for (const auto &[x, s] : a.series.factors) {
        factors.push_back({x, s});
    }
    ser["factors"] = factors;
    ser["partial"] = a.series.partial;
    ser["formula"] = formula(a.series);
    ser["truncate"] = truncate;
    ser["expansion"] = ex.coeffs;
    ordered_json recovered = ordered_json::array();
    for (const auto &[x, s] : fac.factors) {
        recovered.push_back({x, s});
    }
    ser["factorization"] = {{"factors", recovered},
                            {"verdict", fac.verdict == cyclotomic_verdict::cyclotomic ? "cyclotomic"
                                                                                      : "truncation_inconclusive"}};
    j["series"] = ser;

    ordered_json checks;
    if (a.res.kind == valuation_case::I && a.input.mode == input_mode::curve
        && truncate >= static_cast<std::size_t>(std::max<long long>(nd.Delta, 0))) {
        checks["symmetry"] = symmetry_check(ex, nd.Delta, nd.ell_total);
    } else {
        checks["symmetry"] = nullptr;
    }
    checks["minimal_generators"] = minimal_generator_check(nd.M_sigma, nd.N).ok;
    checks["proximity"] = proximity_check(a.res.records);
    j["checks"] = checks;

    j["verification"] = ver ? to_json(*ver) : ordered_json(nullptr);
    return j;
}

inline std::string report_text(const analysis &a, std::size_t truncate)
{
    const auto &nd = a.values.nd;
    std::ostringstream os;
    auto list = [&os](const char *name, const std::vector<long long> &v) {
        os << name << " = (";
        for (std::size_t i = 0; i < v.size(); ++i) {
            os << (i ? ", " : "") << v[i];
        }
        os << ")\n";
    };
    os << "case " << case_name(a) << ", mode " << mode_name(a.input.mode) << ", field degree "
       << a.res.field->degree() << "\n";
    if (a.res.n_case3) {
        os << "generic center on E" << a.res.delta_curve << ", n = " << *a.res.n_case3 << "\n";
    }
    os << "vertices:\n";
    for (const auto &v : a.res.graph.vertices) {
        os << "  E" << v.id << "  " << tag_list(v) << "  self-int " << v.self_int << "  [K:Q] " << v.field_dim
           << "  m " << a.values.m.at(v.id) << "  M " << a.values.M.at(v.id) << "\n";
    }
    list("m_sigma", nd.m_sigma);
    list("M_sigma", nd.M_sigma);
    list("M_tau", nd.M_tau);
    list("e", nd.e);
    list("N", nd.N);
    os << "splittings =";
    for (const auto &s : nd.splitting) {
        os << " (M_rho " << s.M_rho << ", ell " << s.ell << ")";
    }
    os << (nd.splitting.empty() ? " none\n" : "\n");
    os << "ell = " << nd.ell_total << ", c = " << nd.c_conductor << ", Delta = " << nd.Delta << "\n";
    if (nd.M_delta) {
        os << "M_delta = " << *nd.M_delta << "\n";
    }
    os << (a.kind == series_kind::divisorial ? "P_nu" : "P_C") << "(t) = " << formula(a.series)
       << (a.series.partial ? "  (partial product)" : "") << "\n";
    const auto ex = expand(a.series, truncate);
    os << "expansion to t^" << truncate << ":";
    for (long long c : ex.coeffs) {
        os << " " << c;
    }
    os << "\n";
    return os.str();
}

// One node per vertex, geodesic first and then the dead-end chains.
inline std::string dot_graph(const analysis &a)
{
    const auto &g = a.res.graph;
    std::vector<int> order = g.geodesic;
    std::vector<bool> seen(g.size() + 1, false);
    for (int v : order) {
        seen[static_cast<std::size_t>(v)] = true;
    }
    std::vector<std::vector<int>> adj(g.size() + 1);
    for (const auto &[x, y] : g.edges) {
        adj[static_cast<std::size_t>(x)].push_back(y);
        adj[static_cast<std::size_t>(y)].push_back(x);
    }
    for (std::size_t i = 1; i < g.dead_ends.size(); ++i) {
        // A dead-end chain is a path from the leaf to its rupture vertex.
        std::vector<int> chain;
        int prev = 0;
        int cur = g.dead_ends[i];
        while (cur != 0 && !seen[static_cast<std::size_t>(cur)]) {
            chain.push_back(cur);
            seen[static_cast<std::size_t>(cur)] = true;
            int next = 0;
            for (int w : adj[static_cast<std::size_t>(cur)]) {
                if (w != prev) {
                    next = w;
                }
            }
            prev = cur;
            cur = next;
        }
        std::reverse(chain.begin(), chain.end());
        order.insert(order.end(), chain.begin(), chain.end());
    }
    for (const auto &v : g.vertices) {
        if (!seen[static_cast<std::size_t>(v.id)]) {
            order.push_back(v.id);
        }
    }
    std::ostringstream os;
    os << "graph resolution {\n";
    os << "  node [shape=box];\n";
    for (int id : order) {
        const auto &v = g.vertex(id);
        os << "  E" << id << " [label=\"E" << id << " " << tag_list(v) << " | m=" << a.values.m.at(id)
           << " M=" << a.values.M.at(id) << " [K:Q]=" << v.field_dim;
        for (const auto &s : g.splittings) {
            if (s.vertex == id) {
                os << " l=" << s.ell;
            }
        }
        os << "\", xlabel=\"" << v.self_int << "\"];\n";
    }
    for (const auto &[x, y] : g.edges) {
        os << "  E" << x << " -- E" << y << ";\n";
    }
    if (a.kind == series_kind::classical || a.res.kind == valuation_case::III) {
        os << "  C [shape=none, label=\"C\"];\n";
        os << "  E" << g.delta() << " -- C [dir=forward, arrowhead=normal];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace kpoincare

#endif
