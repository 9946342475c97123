#ifndef KPOINCARE_EXACTFIELD_HPP
#define KPOINCARE_EXACTFIELD_HPP

#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <kpoincare/errors.hpp>
#include <kpoincare/linalg.hpp>
#include <kpoincare/rational.hpp>

namespace kpoincare
{

// The ambient number field L = Q[z]/(p(z)). p is stored monic, lowest
// degree coefficient first. Square-freeness is checked on construction;
// irreducibility is not, a reducible p shows up later as a failed inversion.
class ambient_field
{
public:
    explicit ambient_field(qvec min_poly, std::string var = "z") : m_poly(std::move(min_poly)), m_var(std::move(var))
    {
        qpoly::trim(m_poly);
        if (m_poly.size() < 2) {
            throw math_error("defining polynomial must have positive degree");
        }
        const rational lead = m_poly.back();
        for (auto &c : m_poly) {
            c /= lead;
        }
        const qvec g = qpoly::gcd(m_poly, qpoly::derivative(m_poly));
        if (qpoly::degree(g) > 0) {
            throw reducible_polynomial("defining polynomial is not square-free");
        }
    }

    static std::shared_ptr<const ambient_field> make(qvec min_poly, std::string var = "z")
    {
        return std::make_shared<const ambient_field>(std::move(min_poly), std::move(var));
    }

    // Q itself, presented as Q[z]/(z).
    static std::shared_ptr<const ambient_field> rationals()
    {
        return make(qvec{rational(0), rational(1)});
    }

    std::size_t degree() const
    {
        return m_poly.size() - 1;
    }
    const qvec &min_poly() const
    {
        return m_poly;
    }
    const std::string &var() const
    {
        return m_var;
    }

    // Reduces a polynomial of arbitrary degree modulo p; the result has
    // exactly degree() coordinates.
    qvec reduce(qvec a) const
    {
        const std::size_t n = degree();
        for (std::size_t k = a.size(); k-- > n;) {
            const rational c = a[k];
            if (c == 0) {
                continue;
            }
            for (std::size_t j = 0; j <= n; ++j) {
                a[k - n + j] -= c * m_poly[j];
            }
        }
        a.resize(n);
        return a;
    }

private:
    qvec m_poly;
    std::string m_var;
};

using field_ptr = std::shared_ptr<const ambient_field>;

// Element of L in power-basis coordinates 1, z, ..., z^{n-1}.
class alg_num
{
public:
    alg_num(field_ptr f, qvec coords) : m_field(std::move(f)), m_c(std::move(coords))
    {
        if (m_c.size() != m_field->degree()) {
            m_c = m_field->reduce(std::move(m_c));
        }
    }
    alg_num(field_ptr f, const rational &q) : m_field(std::move(f)), m_c(m_field->degree())
    {
        m_c[0] = q;
    }

    static alg_num zero(const field_ptr &f)
    {
        return alg_num(f, rational(0));
    }
    static alg_num one(const field_ptr &f)
    {
        return alg_num(f, rational(1));
    }
    // The class of z.
    static alg_num generator(const field_ptr &f)
    {
        return alg_num(f, f->reduce(qvec{rational(0), rational(1)}));
    }

    const field_ptr &field() const
    {
        return m_field;
    }
    const qvec &coords() const
    {
        return m_c;
    }

    bool is_zero() const
    {
        for (const auto &c : m_c) {
            if (c != 0) {
                return false;
            }
        }
        return true;
    }
    bool is_rational() const
    {
        for (std::size_t i = 1; i < m_c.size(); ++i) {
            if (m_c[i] != 0) {
                return false;
            }
        }
        return true;
    }

    alg_num &operator+=(const alg_num &o)
    {
        for (std::size_t i = 0; i < m_c.size(); ++i) {
            m_c[i] += o.m_c[i];
        }
        return *this;
    }
    alg_num &operator-=(const alg_num &o)
    {
        for (std::size_t i = 0; i < m_c.size(); ++i) {
            m_c[i] -= o.m_c[i];
        }
        return *this;
    }
    friend alg_num operator+(alg_num a, const alg_num &b)
    {
        return a += b;
    }
    friend alg_num operator-(alg_num a, const alg_num &b)
    {
        return a -= b;
    }
    friend alg_num operator-(alg_num a)
    {
        for (auto &c : a.m_c) {
            c = -c;
        }
        return a;
    }
    friend alg_num operator*(const alg_num &a, const alg_num &b)
    {
        const std::size_t n = a.m_c.size();
        if (n == 1) {
            return alg_num(a.m_field, a.m_c[0] * b.m_c[0]);
        }
        qvec prod(2 * n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.m_c[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (b.m_c[j] != 0) {
                    prod[i + j] += a.m_c[i] * b.m_c[j];
                }
            }
        }
        return alg_num(a.m_field, a.m_field->reduce(std::move(prod)));
    }
    alg_num &operator*=(const alg_num &o)
    {
        return *this = *this * o;
    }

    // Multiplicative inverse via the extended Euclidean algorithm in Q[z].
    alg_num inv() const
    {
        if (is_zero()) {
            throw division_by_zero();
        }
        qvec a = m_c;
        qpoly::trim(a);
        auto [g, s] = qpoly::gcd_cofactor(a, m_field->min_poly());
        if (qpoly::degree(g) > 0) {
            throw reducible_polynomial("element shares a factor with the defining polynomial");
        }
        return alg_num(m_field, m_field->reduce(std::move(s)));
    }
    friend alg_num operator/(const alg_num &a, const alg_num &b)
    {
        return a * b.inv();
    }

    friend bool operator==(const alg_num &a, const alg_num &b)
    {
        return a.m_c == b.m_c;
    }

    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < m_c.size(); ++i) {
            if (m_c[i] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += m_c[i] > 0 ? " + " : " - ";
            } else if (m_c[i] < 0) {
                out += "-";
            }
            const rational mag = abs(m_c[i]);
            if (i == 0 || mag != 1) {
                out += mag.get_str();
                if (i > 0) {
                    out += "*";
                }
            }
            if (i > 0) {
                out += m_field->var();
                if (i > 1) {
                    out += "^" + std::to_string(i);
                }
            }
        }
        return out.empty() ? "0" : out;
    }

    friend std::ostream &operator<<(std::ostream &os, const alg_num &a)
    {
        return os << a.str();
    }

private:
    field_ptr m_field;
    qvec m_c;
};

enum class nf_op { add, sub, mul, inv };

inline alg_num nf_arith(const alg_num &a, const alg_num &b, nf_op op)
{
    switch (op) {
        case nf_op::add:
            return a + b;
        case nf_op::sub:
            return a - b;
        case nf_op::mul:
            return a * b;
        case nf_op::inv:
            break;
    }
    return a.inv();
}

// Evaluates a polynomial with rational coefficients at an element of L.
inline alg_num evaluate(const qvec &poly, const alg_num &at)
{
    alg_num acc = alg_num::zero(at.field());
    for (std::size_t k = poly.size(); k-- > 0;) {
        acc = acc * at + alg_num(at.field(), poly[k]);
    }
    return acc;
}

// A subfield of L, stored as a Q-basis in echelon form.
class subfield
{
public:
    static subfield rationals(const field_ptr &f)
    {
        subfield s(f);
        s.m_basis.insert(alg_num::one(f).coords());
        return s;
    }

    const field_ptr &ambient() const
    {
        return m_field;
    }
    std::size_t dim() const
    {
        return m_basis.rank();
    }

    std::vector<alg_num> basis() const
    {
        std::vector<alg_num> out;
        for (const auto &r : m_basis.rows()) {
            out.emplace_back(m_field, r);
        }
        return out;
    }

    bool contains(const alg_num &a) const
    {
        return m_basis.contains(a.coords());
    }

    // Same ambient field and same span.
    friend bool operator==(const subfield &a, const subfield &b)
    {
        if (a.dim() != b.dim()) {
            return false;
        }
        for (const auto &r : a.m_basis.rows()) {
            if (!b.m_basis.contains(r)) {
                return false;
            }
        }
        return true;
    }

    friend subfield span_close(const std::vector<alg_num> &gens, const subfield &base);

private:
    explicit subfield(field_ptr f) : m_field(std::move(f)), m_basis(m_field->degree()) {}

    field_ptr m_field;
    echelon_basis m_basis;
};

inline bool contains(const subfield &sub, const alg_num &a)
{
    return sub.contains(a);
}

// Smallest multiplicatively closed Q-subspace containing base and gens;
// a finite-dimensional domain that is closed under products is a field.
inline subfield span_close(const std::vector<alg_num> &gens, const subfield &base)
{
    subfield out = base;
    for (const auto &g : gens) {
        out.m_basis.insert(g.coords());
    }
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<alg_num> b = out.basis();
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = i; j < b.size(); ++j) {
                if (out.m_basis.insert((b[i] * b[j]).coords())) {
                    grew = true;
                }
            }
        }
    }
    return out;
}

inline std::size_t rel_degree(const subfield &inner, const subfield &outer)
{
    for (const auto &b : inner.basis()) {
        if (!outer.contains(b)) {
            throw not_a_subfield("inner field is not contained in outer field");
        }
    }
    if (outer.dim() % inner.dim() != 0) {
        throw non_integral_degree("dimension " + std::to_string(inner.dim()) + " does not divide "
                                  + std::to_string(outer.dim()));
    }
    return outer.dim() / inner.dim();
}

} // namespace kpoincare

#endif
