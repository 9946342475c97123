#ifndef KPOINCARE_POLY_HPP
#define KPOINCARE_POLY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <kpoincare/errors.hpp>
#include <kpoincare/exactfield.hpp>

namespace kpoincare
{

// Uniform access to ring elements that need a context object (the field)
// to build a zero. Specialized below for alg_num and the types built on it.
inline bool is_zero(const alg_num &a)
{
    return a.is_zero();
}
inline alg_num zero_like(const alg_num &a)
{
    return alg_num::zero(a.field());
}
inline alg_num one_like(const alg_num &a)
{
    return alg_num::one(a.field());
}
inline alg_num inverse(const alg_num &a)
{
    return a.inv();
}

template <typename R>
class poly;
template <typename R>
bool is_zero(const poly<R> &p);

// Dense univariate polynomial in one indeterminate with coefficients in R,
// lowest degree first; the zero polynomial has no coefficients.
template <typename R>
class poly
{
public:
    explicit poly(R zero) : m_zero(std::move(zero)) {}
    poly(R zero, std::vector<R> coeffs) : m_zero(std::move(zero)), m_c(std::move(coeffs))
    {
        trim();
    }

    static poly constant(const R &c)
    {
        return poly(zero_like(c), {c});
    }
    // The indeterminate itself.
    static poly variable(const R &zero)
    {
        return poly(zero, {zero, one_like(zero)});
    }

    const R &zero() const
    {
        return m_zero;
    }
    const std::vector<R> &coeffs() const
    {
        return m_c;
    }
    int degree() const
    {
        return static_cast<int>(m_c.size()) - 1;
    }
    bool is_zero() const
    {
        return m_c.empty();
    }
    const R &lead() const
    {
        return m_c.back();
    }
    const R &coef(std::size_t i) const
    {
        return i < m_c.size() ? m_c[i] : m_zero;
    }

    friend poly operator+(const poly &a, const poly &b)
    {
        std::vector<R> r(std::max(a.m_c.size(), b.m_c.size()), a.m_zero);
        for (std::size_t i = 0; i < a.m_c.size(); ++i) {
            r[i] = a.m_c[i];
        }
        for (std::size_t i = 0; i < b.m_c.size(); ++i) {
            r[i] = r[i] + b.m_c[i];
        }
        return poly(a.m_zero, std::move(r));
    }
    friend poly operator-(const poly &a)
    {
        std::vector<R> r;
        for (const auto &c : a.m_c) {
            r.push_back(a.m_zero - c);
        }
        return poly(a.m_zero, std::move(r));
    }
    friend poly operator-(const poly &a, const poly &b)
    {
        return a + (-b);
    }
    friend poly operator*(const poly &a, const poly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return poly(a.m_zero);
        }
        std::vector<R> r(a.m_c.size() + b.m_c.size() - 1, a.m_zero);
        for (std::size_t i = 0; i < a.m_c.size(); ++i) {
            if (kpoincare::is_zero(a.m_c[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.m_c.size(); ++j) {
                r[i + j] = r[i + j] + a.m_c[i] * b.m_c[j];
            }
        }
        return poly(a.m_zero, std::move(r));
    }
    poly scaled(const R &s) const
    {
        std::vector<R> r;
        for (const auto &c : m_c) {
            r.push_back(c * s);
        }
        return poly(m_zero, std::move(r));
    }

    friend bool operator==(const poly &a, const poly &b)
    {
        return a.m_c == b.m_c;
    }

    // Division with remainder; needs R to be a field.
    friend std::pair<poly, poly> divmod(const poly &a, const poly &b)
    {
        if (b.is_zero()) {
            throw division_by_zero();
        }
        std::vector<R> rem = a.m_c;
        if (a.degree() < b.degree()) {
            return {poly(a.m_zero), a};
        }
        std::vector<R> q(a.m_c.size() - b.m_c.size() + 1, a.m_zero);
        const R lead_inv = inverse(b.lead());
        const int db = b.degree();
        for (int k = a.degree(); k >= db; --k) {
            if (kpoincare::is_zero(rem[k])) {
                continue;
            }
            const R c = rem[k] * lead_inv;
            q[k - db] = c;
            for (int j = 0; j <= db; ++j) {
                rem[k - db + j] = rem[k - db + j] - c * b.m_c[j];
            }
        }
        return {poly(a.m_zero, std::move(q)), poly(a.m_zero, std::move(rem))};
    }

    poly monic() const
    {
        return is_zero() ? *this : scaled(inverse(lead()));
    }

    friend poly gcd(poly a, poly b)
    {
        while (!b.is_zero()) {
            poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

private:
    void trim()
    {
        while (!m_c.empty() && kpoincare::is_zero(m_c.back())) {
            m_c.pop_back();
        }
    }

    R m_zero;
    std::vector<R> m_c;
};

template <typename R>
bool is_zero(const poly<R> &p)
{
    return p.is_zero();
}
template <typename R>
poly<R> zero_like(const poly<R> &p)
{
    return poly<R>(p.zero());
}
template <typename R>
poly<R> one_like(const poly<R> &p)
{
    return poly<R>(p.zero(), {one_like(p.zero())});
}

// Flattens a polynomial over L into rational coordinates: n_L entries per
// power of the indeterminate, `slots` powers (zero padded).
inline void append_coords(const alg_num &a, qvec &out)
{
    out.insert(out.end(), a.coords().begin(), a.coords().end());
}
inline void append_coords(const poly<alg_num> &p, std::size_t slots, qvec &out)
{
    for (std::size_t i = 0; i < slots; ++i) {
        append_coords(p.coef(i), out);
    }
}

// Element of the rational function field L(T), kept in lowest terms with
// a monic denominator.
class rat_func
{
public:
    using poly_t = poly<alg_num>;

    rat_func(poly_t num, poly_t den) : m_num(std::move(num)), m_den(std::move(den))
    {
        normalize();
    }
    explicit rat_func(const alg_num &c) : m_num(poly_t::constant(c)), m_den(poly_t::constant(one_like(c))) {}

    static rat_func variable(const field_ptr &f)
    {
        return rat_func(poly_t::variable(alg_num::zero(f)), poly_t::constant(alg_num::one(f)));
    }

    const poly_t &num() const
    {
        return m_num;
    }
    const poly_t &den() const
    {
        return m_den;
    }
    const alg_num &base_zero() const
    {
        return m_num.zero();
    }

    bool is_zero() const
    {
        return m_num.is_zero();
    }
    // Value in L when the function does not depend on T.
    std::optional<alg_num> constant_value() const
    {
        if (m_num.is_zero()) {
            return zero_like(m_num.zero());
        }
        if (m_num.degree() == 0 && m_den.degree() == 0) {
            return m_num.lead() * inverse(m_den.lead());
        }
        return std::nullopt;
    }

    friend rat_func operator+(const rat_func &a, const rat_func &b)
    {
        if (a.m_den == b.m_den) {
            return rat_func(a.m_num + b.m_num, a.m_den);
        }
        return rat_func(a.m_num * b.m_den + b.m_num * a.m_den, a.m_den * b.m_den);
    }
    friend rat_func operator-(const rat_func &a, const rat_func &b)
    {
        if (a.m_den == b.m_den) {
            return rat_func(a.m_num - b.m_num, a.m_den);
        }
        return rat_func(a.m_num * b.m_den - b.m_num * a.m_den, a.m_den * b.m_den);
    }
    friend rat_func operator*(const rat_func &a, const rat_func &b)
    {
        return rat_func(a.m_num * b.m_num, a.m_den * b.m_den);
    }
    rat_func inv() const
    {
        if (is_zero()) {
            throw division_by_zero();
        }
        return rat_func(m_den, m_num);
    }
    friend rat_func operator/(const rat_func &a, const rat_func &b)
    {
        return a * b.inv();
    }
    friend bool operator==(const rat_func &a, const rat_func &b)
    {
        return a.m_num == b.m_num && a.m_den == b.m_den;
    }

private:
    void normalize()
    {
        if (m_den.is_zero()) {
            throw division_by_zero();
        }
        if (m_num.is_zero()) {
            m_den = poly_t::constant(one_like(m_num.zero()));
            return;
        }
        if (m_den.degree() > 0) {
            const poly_t g = gcd(m_num, m_den);
            if (g.degree() > 0) {
                m_num = divmod(m_num, g).first;
                m_den = divmod(m_den, g).first;
            }
        }
        const alg_num li = inverse(m_den.lead());
        m_num = m_num.scaled(li);
        m_den = m_den.scaled(li);
    }

    poly_t m_num;
    poly_t m_den;
};

inline bool is_zero(const rat_func &a)
{
    return a.is_zero();
}
inline rat_func zero_like(const rat_func &a)
{
    return rat_func(zero_like(a.base_zero()));
}
inline rat_func one_like(const rat_func &a)
{
    return rat_func(one_like(a.base_zero()));
}
inline rat_func inverse(const rat_func &a)
{
    return a.inv();
}

// Lifts of constants of L into the coefficient rings used by the engines.
template <typename R>
struct lift;

template <>
struct lift<alg_num> {
    static alg_num from(const alg_num &a)
    {
        return a;
    }
    static std::optional<alg_num> constant(const alg_num &a)
    {
        return a;
    }
};

template <>
struct lift<rat_func> {
    static rat_func from(const alg_num &a)
    {
        return rat_func(a);
    }
    static std::optional<alg_num> constant(const rat_func &a)
    {
        return a.constant_value();
    }
};

template <>
struct lift<poly<alg_num>> {
    static poly<alg_num> from(const alg_num &a)
    {
        return poly<alg_num>::constant(a);
    }
    static std::optional<alg_num> constant(const poly<alg_num> &p)
    {
        if (p.degree() <= 0) {
            return p.coef(0);
        }
        return std::nullopt;
    }
};

} // namespace kpoincare

#endif
