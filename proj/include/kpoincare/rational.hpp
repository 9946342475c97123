#ifndef KPOINCARE_RATIONAL_HPP
#define KPOINCARE_RATIONAL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <kpoincare/errors.hpp>

namespace kpoincare
{

using rational = mpq_class;
using qvec = std::vector<rational>;

// Parses "p", "-p" or "p/q" into a canonical rational.
inline rational parse_rational(const std::string &s)
{
    if (s.empty()) {
        throw parse_error("empty rational");
    }
    rational r;
    if (r.set_str(s, 10) != 0) {
        throw parse_error("malformed rational '" + s + "'");
    }
    if (r.get_den() == 0) {
        throw parse_error("zero denominator in '" + s + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const rational &r)
{
    return r.get_str();
}

// Dense univariate polynomials over Q, lowest degree first. The zero
// polynomial is the empty vector.
namespace qpoly
{

inline void trim(qvec &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline int degree(const qvec &p)
{
    return static_cast<int>(p.size()) - 1;
}

inline qvec derivative(const qvec &p)
{
    qvec d;
    for (std::size_t i = 1; i < p.size(); ++i) {
        d.push_back(p[i] * static_cast<long>(i));
    }
    trim(d);
    return d;
}

inline qvec sub(qvec a, const qvec &b)
{
    if (a.size() < b.size()) {
        a.resize(b.size());
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] -= b[i];
    }
    trim(a);
    return a;
}

inline qvec mul(const qvec &a, const qvec &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    qvec r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

// Quotient and remainder; b must be nonzero.
inline std::pair<qvec, qvec> divmod(qvec a, const qvec &b)
{
    if (b.empty()) {
        throw division_by_zero();
    }
    trim(a);
    if (a.size() < b.size()) {
        return {{}, a};
    }
    qvec q(a.size() - b.size() + 1);
    const rational &lead = b.back();
    const int db = degree(b);
    for (int k = degree(a); k >= db; --k) {
        const rational c = a[k] / lead;
        q[k - db] = c;
        if (c != 0) {
            for (int j = 0; j <= db; ++j) {
                a[k - db + j] -= c * b[j];
            }
        }
    }
    trim(a);
    trim(q);
    return {q, a};
}

// Monic gcd.
inline qvec gcd(qvec a, qvec b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const rational lead = a.back();
        for (auto &c : a) {
            c /= lead;
        }
    }
    return a;
}

// Returns (g, s) with s*a == g (mod m), g the monic gcd of a and m.
inline std::pair<qvec, qvec> gcd_cofactor(qvec a, qvec m)
{
    trim(a);
    trim(m);
    qvec r0 = m, r1 = a;
    qvec s0, s1{rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        qvec s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const rational lead = r0.back();
    for (auto &c : r0) {
        c /= lead;
    }
    for (auto &c : s0) {
        c /= lead;
    }
    return {r0, s0};
}

} // namespace qpoly

} // namespace kpoincare

#endif
