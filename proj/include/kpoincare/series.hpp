#ifndef KPOINCARE_SERIES_HPP
#define KPOINCARE_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <kpoincare/errors.hpp>
#include <kpoincare/poly.hpp>

namespace kpoincare
{

// Power series in tau known modulo tau^precision. Coefficients past the
// precision are unknown, so an all-zero prefix only certifies a lower
// bound on the order.
template <typename F>
class trunc_series
{
public:
    trunc_series(F zero, std::size_t precision) : m_zero(std::move(zero)), m_c(precision, m_zero) {}

    // An exact polynomial viewed modulo tau^precision.
    static trunc_series from_poly(const std::vector<F> &coeffs, const F &zero, std::size_t precision)
    {
        trunc_series s(zero, precision);
        for (std::size_t i = 0; i < std::min(precision, coeffs.size()); ++i) {
            s.m_c[i] = coeffs[i];
        }
        return s;
    }

    std::size_t precision() const
    {
        return m_c.size();
    }
    const F &zero() const
    {
        return m_zero;
    }
    const F &operator[](std::size_t i) const
    {
        return m_c.at(i);
    }
    F &operator[](std::size_t i)
    {
        return m_c.at(i);
    }

    // Least exponent with a nonzero coefficient; nullopt when the whole
    // known prefix vanishes.
    std::optional<std::size_t> order() const
    {
        for (std::size_t i = 0; i < m_c.size(); ++i) {
            if (!is_zero(m_c[i])) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::size_t order_or_throw() const
    {
        const auto o = order();
        if (!o) {
            throw truncation_too_short("series vanishes up to tau^" + std::to_string(precision()));
        }
        return *o;
    }

    trunc_series minus_constant(const F &a) const
    {
        trunc_series r = *this;
        if (!r.m_c.empty()) {
            r.m_c[0] = r.m_c[0] - a;
        }
        return r;
    }

    friend trunc_series operator+(const trunc_series &a, const trunc_series &b)
    {
        trunc_series r(a.m_zero, std::min(a.precision(), b.precision()));
        for (std::size_t i = 0; i < r.precision(); ++i) {
            r.m_c[i] = a.m_c[i] + b.m_c[i];
        }
        return r;
    }
    friend trunc_series operator-(const trunc_series &a, const trunc_series &b)
    {
        trunc_series r(a.m_zero, std::min(a.precision(), b.precision()));
        for (std::size_t i = 0; i < r.precision(); ++i) {
            r.m_c[i] = a.m_c[i] - b.m_c[i];
        }
        return r;
    }
    friend trunc_series operator*(const trunc_series &a, const trunc_series &b)
    {
        const std::size_t n = std::min(a.precision(), b.precision());
        trunc_series r(a.m_zero, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (is_zero(a.m_c[i])) {
                continue;
            }
            for (std::size_t j = 0; i + j < n; ++j) {
                if (!is_zero(b.m_c[j])) {
                    r.m_c[i + j] = r.m_c[i + j] + a.m_c[i] * b.m_c[j];
                }
            }
        }
        return r;
    }

    // Exact quotient a / b. The order of a must be at least the order of b;
    // the result is known to precision min(prec a, prec b) - ord b.
    friend trunc_series operator/(const trunc_series &a, const trunc_series &b)
    {
        const std::size_t k = b.order_or_throw();
        const std::size_t n = std::min(a.precision(), b.precision());
        for (std::size_t i = 0; i < std::min(k, a.precision()); ++i) {
            if (!is_zero(a.m_c[i])) {
                throw math_error("series quotient is not a power series");
            }
        }
        trunc_series r(a.m_zero, n - k);
        const F lead_inv = inverse(b.m_c[k]);
        for (std::size_t i = 0; i < r.precision(); ++i) {
            F acc = a.m_c[i + k];
            for (std::size_t j = 1; j <= i; ++j) {
                if (!is_zero(b.m_c[k + j]) && !is_zero(r.m_c[i - j])) {
                    acc = acc - b.m_c[k + j] * r.m_c[i - j];
                }
            }
            r.m_c[i] = acc * lead_inv;
        }
        return r;
    }

private:
    F m_zero;
    std::vector<F> m_c;
};

// Certified order: nullopt stands for infinity. `exact_bound` is a bound
// known to the caller such that the series is either zero or has order at
// most the bound; a vanishing prefix longer than it certifies zero.
template <typename F>
std::optional<std::size_t> series_order(const trunc_series<F> &s, std::size_t exact_bound)
{
    if (const auto o = s.order()) {
        return *o;
    }
    if (s.precision() > exact_bound) {
        return std::nullopt;
    }
    throw truncation_too_short("order exceeds the certified bound");
}

} // namespace kpoincare

#endif
