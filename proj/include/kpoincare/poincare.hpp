#ifndef KPOINCARE_POINCARE_HPP
#define KPOINCARE_POINCARE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <kpoincare/errors.hpp>
#include <kpoincare/resolution.hpp>

namespace kpoincare
{

struct splitting_datum {
    long long M_rho = 0;
    long long ell = 0;
    int vertex = 0; // 0 for abstract data
};

struct numerical_data {
    std::vector<long long> m_sigma; // sigma_0 .. sigma_g
    std::vector<long long> M_sigma;
    std::vector<long long> M_tau;   // tau_1 .. tau_g
    std::vector<long long> e;       // e_0 .. e_g
    std::vector<long long> N;       // N_1 .. N_g
    std::vector<splitting_datum> splitting;
    std::optional<long long> M_delta;
    long long ell_total = 1;
    long long Delta = 0;
    long long c_conductor = 0;
    bool partial = false;

    std::size_t g() const
    {
        return N.size();
    }
};

// prod (1 - t^a)^s over the factors (a, s).
struct series_product {
    std::vector<std::pair<long long, long long>> factors;
    bool partial = false;

    // Merges equal exponents in first-occurrence order and drops zero powers.
    series_product &normalize()
    {
        std::vector<std::pair<long long, long long>> out;
        for (const auto &[a, s] : factors) {
            auto it = std::find_if(out.begin(), out.end(), [a = a](const auto &f) { return f.first == a; });
            if (it == out.end()) {
                out.emplace_back(a, s);
            } else {
                it->second += s;
            }
        }
        std::erase_if(out, [](const auto &f) { return f.second == 0; });
        factors = std::move(out);
        return *this;
    }

    friend bool operator==(const series_product &, const series_product &) = default;
};

struct series_expansion {
    std::vector<long long> coeffs; // a_0 .. a_N
    std::size_t truncation() const
    {
        return coeffs.empty() ? 0 : coeffs.size() - 1;
    }
};

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

inline std::pair<std::vector<long long>, std::vector<long long>> char_invariants(const std::vector<long long> &m_sigma)
{
    if (m_sigma.empty()) {
        throw bad_semigroup_data("no dead-end values");
    }
    std::vector<long long> e{m_sigma[0]};
    std::vector<long long> n;
    for (std::size_t i = 1; i < m_sigma.size(); ++i) {
        e.push_back(std::gcd(e.back(), m_sigma[i]));
        n.push_back(e[i - 1] / e[i]);
    }
    if (e.back() != 1) {
        throw bad_semigroup_data("gcd of the generators is " + std::to_string(e.back()));
    }
    return {e, n};
}

// M_sigma = m_sigma + sum_j L^d_j e_{rho_j}(phi_sigma) m_{rho_j}, the sum over
// the splitting vertices created before sigma, with
// L^d_j = l_j ... l_d - l_{j+1} ... l_d.
inline long long big_M_at(int vertex, long long m_vertex, const plane_param<alg_num> &curvette,
                          const std::vector<inf_near_record> &records, const quotient_graph &g,
                          const std::map<int, long long> &m)
{
    std::vector<splitting_vertex> before;
    for (const auto &s : g.splittings) {
        if (s.vertex < vertex) {
            before.push_back(s);
        }
    }
    if (before.empty()) {
        return m_vertex;
    }
    const multiplicity_sequence e = strict_mults(curvette, records);
    const std::size_t d = before.size();
    long long total = m_vertex;
    for (std::size_t j = 0; j < d; ++j) {
        long long upper = 1;
        for (std::size_t i = j + 1; i < d; ++i) {
            upper *= static_cast<long long>(before[i].ell);
        }
        const long long L = static_cast<long long>(before[j].ell) * upper - upper;
        const int rho = before[j].vertex;
        total += L * e[static_cast<std::size_t>(rho - 1)] * m.at(rho);
    }
    return total;
}

inline std::map<int, long long> big_M(const quotient_graph &g, const std::vector<inf_near_record> &records,
                                      const std::map<int, long long> &m)
{
    std::map<int, long long> out;
    for (const auto &v : g.vertices) {
        out[v.id] = big_M_at(v.id, m.at(v.id), default_curvette(records, v.id), records, g, m);
    }
    return out;
}

// Conductor of the semigroup and the stabilization index Delta.
inline std::pair<long long, long long> conductor_delta(const numerical_data &nd)
{
    long long c = 1 - nd.M_sigma.at(0);
    for (std::size_t i = 0; i < nd.N.size(); ++i) {
        c += (nd.N[i] - 1) * nd.M_sigma[i + 1];
    }
    long long delta = c;
    for (const auto &s : nd.splitting) {
        delta += (s.ell - 1) * s.M_rho;
    }
    return {c, delta};
}

// Gathers the dead-end data of a graph. M_delta is set for divisorial data.
inline numerical_data assemble(const quotient_graph &g, const std::map<int, long long> &m,
                               const std::map<int, long long> &M, std::optional<long long> M_delta = std::nullopt)
{
    numerical_data nd;
    for (int v : g.dead_ends) {
        nd.m_sigma.push_back(m.at(v));
        nd.M_sigma.push_back(M.at(v));
    }
    std::tie(nd.e, nd.N) = char_invariants(nd.m_sigma);
    for (std::size_t i = 0; i < nd.N.size(); ++i) {
        nd.M_tau.push_back(nd.N[i] * nd.M_sigma[i + 1]);
    }
    for (const auto &s : g.splittings) {
        nd.splitting.push_back({M.at(s.vertex), static_cast<long long>(s.ell), s.vertex});
        nd.ell_total *= static_cast<long long>(s.ell);
    }
    nd.M_delta = M_delta;
    std::tie(nd.c_conductor, nd.Delta) = conductor_delta(nd);
    return nd;
}

// Abstract splitting data standing in for an infinite tower: only the given
// prefix is represented and every product built from it is partial.
inline numerical_data with_abstract_splittings(numerical_data nd, const std::vector<splitting_datum> &prefix)
{
    nd.splitting = prefix;
    nd.ell_total = 1;
    for (const auto &s : prefix) {
        if (s.M_rho <= 0 || s.ell < 2) {
            throw bad_semigroup_data("splitting data needs M_rho > 0 and ell >= 2");
        }
        nd.ell_total *= s.ell;
    }
    std::tie(nd.c_conductor, nd.Delta) = conductor_delta(nd);
    nd.partial = true;
    return nd;
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

inline series_product semigroup_series(const numerical_data &nd)
{
    series_product sp;
    for (long long a : nd.M_tau) {
        sp.factors.emplace_back(a, 1);
    }
    for (long long a : nd.M_sigma) {
        sp.factors.emplace_back(a, -1);
    }
    sp.normalize();
    return sp;
}

inline series_product partial_series(const numerical_data &nd, std::size_t j)
{
    if (j < 1 || j > nd.splitting.size() + 1) {
        throw index_out_of_range("partial series index " + std::to_string(j));
    }
    series_product sp = semigroup_series(nd);
    for (std::size_t i = 0; i + 1 < j; ++i) {
        const auto &s = nd.splitting[i];
        sp.factors.emplace_back(s.ell * s.M_rho, 1);
        sp.factors.emplace_back(s.M_rho, -1);
    }
    sp.partial = nd.partial;
    sp.normalize();
    return sp;
}

inline series_product classical_series(const numerical_data &nd)
{
    return partial_series(nd, nd.splitting.size() + 1);
}

inline series_product divisorial_series(const numerical_data &nd)
{
    if (!nd.M_delta) {
        throw missing_delta();
    }
    series_product sp = semigroup_series(nd);
    sp.factors.emplace_back(*nd.M_delta, -1);
    for (const auto &s : nd.splitting) {
        sp.factors.emplace_back(s.ell * s.M_rho, 1);
        sp.factors.emplace_back(s.M_rho, -1);
    }
    sp.partial = nd.partial;
    sp.normalize();
    return sp;
}

namespace detail
{

// In place: f *= (1 - t^a).
inline void times_binomial(std::vector<long long> &f, std::size_t a)
{
    for (std::size_t i = f.size(); i-- > a;) {
        f[i] -= f[i - a];
    }
}

// In place: f /= (1 - t^a).
inline void over_binomial(std::vector<long long> &f, std::size_t a)
{
    for (std::size_t i = a; i < f.size(); ++i) {
        f[i] += f[i - a];
    }
}

} // namespace detail

inline series_expansion expand(const series_product &sp, std::size_t n)
{
    std::vector<long long> f(n + 1, 0);
    f[0] = 1;
    for (const auto &[a, s] : sp.factors) {
        if (a <= 0) {
            throw math_error("factor exponent must be positive");
        }
        const auto ua = static_cast<std::size_t>(a);
        for (long long k = 0; k < (s < 0 ? -s : s); ++k) {
            if (s > 0) {
                detail::times_binomial(f, ua);
            } else {
                detail::over_binomial(f, ua);
            }
        }
    }
    return {f};
}

// a_v + a_{Delta-1-v} = l below Delta, a_v = l from Delta on, a_{Delta-1} < l.
inline bool symmetry_check(const series_expansion &se, long long delta, long long ell)
{
    if (delta < 0) {
        return false;
    }
    const auto d = static_cast<std::size_t>(delta);
    if (se.truncation() < d) {
        throw truncation_too_short("expansion shorter than Delta");
    }
    const auto &a = se.coeffs;
    for (std::size_t v = 0; v < d; ++v) {
        if (a[v] + a[d - 1 - v] != ell) {
            return false;
        }
    }
    for (std::size_t v = d; v < a.size(); ++v) {
        if (a[v] != ell) {
            return false;
        }
    }
    return d == 0 || a[d - 1] < ell;
}

// ---------------------------------------------------------------------------
// Semigroups
// ---------------------------------------------------------------------------

// Membership table of <gens> on [0, bound].
inline std::vector<bool> semigroup_table(const std::vector<long long> &gens, long long bound)
{
    std::vector<bool> in(static_cast<std::size_t>(std::max<long long>(bound, 0)) + 1, false);
    in[0] = true;
    for (std::size_t v = 1; v < in.size(); ++v) {
        for (long long g : gens) {
            if (g > 0 && static_cast<std::size_t>(g) <= v && in[v - static_cast<std::size_t>(g)]) {
                in[v] = true;
                break;
            }
        }
    }
    return in;
}

inline bool membership(const std::vector<long long> &gens, long long v)
{
    return v >= 0 && semigroup_table(gens, v)[static_cast<std::size_t>(v)];
}

inline std::vector<long long> gaps(const std::vector<long long> &gens, long long bound)
{
    const auto in = semigroup_table(gens, bound);
    std::vector<long long> out;
    for (std::size_t v = 0; v < in.size(); ++v) {
        if (!in[v]) {
            out.push_back(static_cast<long long>(v));
        }
    }
    return out;
}

struct check_result {
    bool ok = true;
    std::string witness;
};

inline check_result minimal_generator_check(const std::vector<long long> &M, const std::vector<long long> &N)
{
    if (N.size() + 1 != M.size()) {
        return {false, "N must have one entry less than M"};
    }
    for (std::size_t i = 1; i < M.size(); ++i) {
        const std::vector<long long> prefix(M.begin(), M.begin() + static_cast<long>(i));
        const long long n = N[i - 1];
        if (membership(prefix, (n - 1) * M[i])) {
            return {false, "(N_" + std::to_string(i) + " - 1) M_" + std::to_string(i) + " = "
                               + std::to_string((n - 1) * M[i]) + " lies in the previous semigroup"};
        }
        if (!membership(prefix, n * M[i])) {
            return {false, "N_" + std::to_string(i) + " M_" + std::to_string(i) + " = " + std::to_string(n * M[i])
                               + " is not in the previous semigroup"};
        }
        if (i >= 2 && N[i - 2] * M[i - 1] >= M[i]) {
            return {false, "N_" + std::to_string(i - 1) + " M_" + std::to_string(i - 1) + " >= M_" + std::to_string(i)};
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Binomial factorization
// ---------------------------------------------------------------------------

enum class cyclotomic_verdict { cyclotomic, truncation_inconclusive };

struct factorization {
    std::vector<std::pair<long long, long long>> factors; // (m, s_m), s_m != 0, m <= N
    cyclotomic_verdict verdict = cyclotomic_verdict::truncation_inconclusive;
};

// Recovers the unique s_m with sum a_v t^v = prod (1 - t^m)^{s_m} mod t^{N+1}.
// The closure is only confirmed against a known, complete source product
// whose exponents all fit in the window.
inline factorization binomial_factorization(const series_expansion &se, const series_product *source = nullptr)
{
    if (se.coeffs.empty() || se.coeffs[0] != 1) {
        throw math_error("expansion must start with 1");
    }
    std::vector<long long> g = se.coeffs;
    factorization out;
    for (std::size_t m = 1; m < g.size(); ++m) {
        const long long s = -g[m];
        if (s == 0) {
            continue;
        }
        out.factors.emplace_back(static_cast<long long>(m), s);
        for (long long k = 0; k < (s < 0 ? -s : s); ++k) {
            if (s > 0) {
                detail::over_binomial(g, m);
            } else {
                detail::times_binomial(g, m);
            }
        }
    }
    if (source && !source->partial) {
        series_product sorted = *source;
        sorted.normalize();
        std::sort(sorted.factors.begin(), sorted.factors.end());
        const bool fits = std::all_of(sorted.factors.begin(), sorted.factors.end(),
                                      [&](const auto &f) { return static_cast<std::size_t>(f.first) <= se.truncation(); });
        if (fits && sorted.factors == out.factors) {
            out.verdict = cyclotomic_verdict::cyclotomic;
        }
    }
    return out;
}

} // namespace kpoincare

#endif
