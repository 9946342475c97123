#ifndef KPOINCARE_ORACLE_HPP
#define KPOINCARE_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <kpoincare/errors.hpp>
#include <kpoincare/linalg.hpp>
#include <kpoincare/poly.hpp>
#include <kpoincare/resolution.hpp>

namespace kpoincare
{

struct xy_term {
    int i = 0;
    int j = 0;
    rational c;
};

// Polynomial in x, y with rational coefficients.
struct poly_xy {
    std::vector<xy_term> terms;

    int degree() const
    {
        int d = 0;
        for (const auto &t : terms) {
            if (t.c != 0) {
                d = std::max(d, t.i + t.j);
            }
        }
        return d;
    }
};

inline poly_xy operator*(const poly_xy &a, const poly_xy &b)
{
    std::map<std::pair<int, int>, rational> acc;
    for (const auto &s : a.terms) {
        for (const auto &t : b.terms) {
            acc[{s.i + t.i, s.j + t.j}] += s.c * t.c;
        }
    }
    poly_xy out;
    for (const auto &[k, c] : acc) {
        if (c != 0) {
            out.terms.push_back({k.first, k.second, c});
        }
    }
    return out;
}

inline poly_xy operator+(const poly_xy &a, const poly_xy &b)
{
    std::map<std::pair<int, int>, rational> acc;
    for (const auto &t : a.terms) {
        acc[{t.i, t.j}] += t.c;
    }
    for (const auto &t : b.terms) {
        acc[{t.i, t.j}] += t.c;
    }
    poly_xy out;
    for (const auto &[k, c] : acc) {
        if (c != 0) {
            out.terms.push_back({k.first, k.second, c});
        }
    }
    return out;
}

namespace detail
{

inline const field_ptr &base_field(const alg_num &a)
{
    return a.field();
}
inline const field_ptr &base_field(const poly<alg_num> &p)
{
    return p.zero().field();
}

// Number of L-slots needed to store an element as rational coordinates.
inline std::size_t slot_count(const alg_num &)
{
    return 1;
}
inline std::size_t slot_count(const poly<alg_num> &p)
{
    return static_cast<std::size_t>(std::max(p.degree(), 0)) + 1;
}
inline void append_slots(const alg_num &a, std::size_t, qvec &out)
{
    append_coords(a, out);
}
inline void append_slots(const poly<alg_num> &p, std::size_t slots, qvec &out)
{
    append_coords(p, slots, out);
}

// a * b modulo tau^len.
template <typename R>
std::vector<R> mul_trunc(const std::vector<R> &a, const std::vector<R> &b, std::size_t len, const R &zero)
{
    std::vector<R> r(std::min(len, a.size() + b.size()), zero);
    for (std::size_t i = 0; i < a.size() && i < r.size(); ++i) {
        if (is_zero(a[i])) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < r.size(); ++j) {
            if (!is_zero(b[j])) {
                r[i + j] = r[i + j] + a[i] * b[j];
            }
        }
    }
    return r;
}

template <typename R>
std::optional<std::size_t> order_of(const std::vector<R> &a)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!is_zero(a[i])) {
            return i;
        }
    }
    return std::nullopt;
}

// Powers p^0 .. p^k modulo tau^len.
template <typename R>
std::vector<std::vector<R>> powers(const std::vector<R> &p, int k, std::size_t len, const R &zero, const R &one)
{
    std::vector<std::vector<R>> out{{one}};
    for (int e = 1; e <= k; ++e) {
        out.push_back(mul_trunc(out.back(), p, len, zero));
    }
    return out;
}

} // namespace detail

template <typename R>
struct valuation_result {
    std::optional<std::size_t> value; // nullopt: infinity
    R leading;
};

// Order of f(x(tau), y(tau)). The composite is an exact polynomial, so a
// zero result is a certified infinity.
template <typename R>
valuation_result<R> value_of(const poly_xy &f, const plane_param<R> &p)
{
    const field_ptr &fld = detail::base_field(p.zero);
    const R one = one_like(p.zero);
    const std::size_t len = static_cast<std::size_t>(f.degree()) * (p.degree() + 1) + 1;
    int max_i = 0;
    int max_j = 0;
    for (const auto &t : f.terms) {
        max_i = std::max(max_i, t.i);
        max_j = std::max(max_j, t.j);
    }
    const auto xp = detail::powers(p.x, max_i, len, p.zero, one);
    const auto yp = detail::powers(p.y, max_j, len, p.zero, one);
    std::vector<R> acc(len, p.zero);
    for (const auto &t : f.terms) {
        if (t.c == 0) {
            continue;
        }
        const auto m = detail::mul_trunc(xp[static_cast<std::size_t>(t.i)], yp[static_cast<std::size_t>(t.j)], len, p.zero);
        const R c = lift<R>::from(alg_num(fld, t.c));
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (!is_zero(m[k])) {
                acc[k] = acc[k] + c * m[k];
            }
        }
    }
    const auto o = detail::order_of(acc);
    if (!o) {
        return {std::nullopt, p.zero};
    }
    return {o, acc[*o]};
}

enum class filtration_mode { curve, divisorial };

struct filtration_report {
    std::size_t V = 0;
    std::size_t D_used = 0;
    std::vector<long long> dims; // a_0 .. a_V
    filtration_mode mode = filtration_mode::curve;
};

// a_v = dim J(v)/J(v+1) for v <= V. Monomials of value > V lie in J(V+1)
// and are left out; this covers every monomial of total degree > V.
// a_v is the number of pivots in the tau^v block of a column echelon form
// of the images of the remaining monomials.
template <typename R>
filtration_report filtration_dims_of(const plane_param<R> &p, std::size_t V, filtration_mode mode)
{
    const std::size_t len = V + 1;
    const R one = one_like(p.zero);
    const auto vx = detail::order_of(p.x);
    const auto vy = detail::order_of(p.y);
    if (!vx && !vy) {
        throw math_error("parametrization is constant");
    }
    auto value = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        if ((i > 0 && !vx) || (j > 0 && !vy)) {
            return std::nullopt;
        }
        return i * vx.value_or(0) + j * vy.value_or(0);
    };
    std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> monomials;
    for (std::size_t i = 0; i <= V; ++i) {
        for (std::size_t j = 0; i + j <= V; ++j) {
            const auto v = value(i, j);
            if (v && *v <= V) {
                monomials.push_back({*v, {i, j}});
            }
        }
    }
    std::sort(monomials.begin(), monomials.end());
    int max_i = 0;
    int max_j = 0;
    for (const auto &m : monomials) {
        max_i = std::max(max_i, static_cast<int>(m.second.first));
        max_j = std::max(max_j, static_cast<int>(m.second.second));
    }
    const auto xp = detail::powers(p.x, max_i, len, p.zero, one);
    const auto yp = detail::powers(p.y, max_j, len, p.zero, one);
    std::vector<std::vector<R>> images;
    for (const auto &m : monomials) {
        auto img = detail::mul_trunc(xp[m.second.first], yp[m.second.second], len, p.zero);
        img.resize(len, p.zero);
        images.push_back(std::move(img));
    }
    std::vector<std::size_t> slots(len, 1);
    for (const auto &img : images) {
        for (std::size_t v = 0; v < len; ++v) {
            slots[v] = std::max(slots[v], detail::slot_count(img[v]));
        }
    }
    const std::size_t width = detail::base_field(p.zero)->degree();
    std::vector<std::size_t> block_start(len + 1, 0);
    for (std::size_t v = 0; v < len; ++v) {
        block_start[v + 1] = block_start[v] + slots[v] * width;
    }
    echelon_basis basis(block_start[len]);
    filtration_report rep{V, V, std::vector<long long>(len, 0), mode};
    for (const auto &img : images) {
        qvec flat;
        flat.reserve(block_start[len]);
        for (std::size_t v = 0; v < len; ++v) {
            detail::append_slots(img[v], slots[v], flat);
        }
        if (const auto piv = basis.insert(std::move(flat))) {
            const auto v = static_cast<std::size_t>(
                std::upper_bound(block_start.begin(), block_start.end(), *piv) - block_start.begin() - 1);
            ++rep.dims[v];
        }
    }
    return rep;
}

inline filtration_report filtration_dims(const branch_param &branch, std::size_t V)
{
    return filtration_dims_of(normalize(branch).to_plane(), V, filtration_mode::curve);
}

inline std::set<long long> observed_semigroup(const branch_param &branch, std::size_t V)
{
    const auto rep = filtration_dims(branch, V);
    std::set<long long> out;
    for (std::size_t v = 0; v < rep.dims.size(); ++v) {
        if (rep.dims[v] > 0) {
            out.insert(static_cast<long long>(v));
        }
    }
    return out;
}

// Curvette at E_k with an indeterminate constant c.
inline plane_param<poly<alg_num>> generic_curvette(const std::vector<inf_near_record> &records, int k)
{
    const auto &f = records.front().field_after.ambient();
    return curvette_param_generic<poly<alg_num>>(records, k, poly<alg_num>::variable(alg_num::zero(f)));
}

// The branch with its generic coefficients replaced by an indeterminate T.
inline plane_param<poly<alg_num>> generic_branch(const branch_param &branch)
{
    const branch_param bp = normalize(branch);
    return bp.to_plane<poly<alg_num>>(poly<alg_num>::variable(alg_num::zero(bp.field)));
}

// nu_delta(f): least tau-order whose coefficient is a nonzero polynomial in c.
inline std::optional<std::size_t> divisorial_value(const poly_xy &f, const plane_param<poly<alg_num>> &curvette)
{
    return value_of(f, curvette).value;
}

inline filtration_report divisorial_filtration_dims(const plane_param<poly<alg_num>> &curvette, std::size_t V)
{
    return filtration_dims_of(curvette, V, filtration_mode::divisorial);
}

} // namespace kpoincare

#endif
