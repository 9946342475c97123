#ifndef KPOINCARE_LINALG_HPP
#define KPOINCARE_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <kpoincare/errors.hpp>
#include <kpoincare/rational.hpp>

namespace kpoincare
{

using qmatrix = std::vector<qvec>;
using imatrix = std::vector<std::vector<long long>>;

// Incrementally built echelon basis of a subspace of Q^n. Every stored
// vector has a distinct pivot (its first nonzero entry, normalized to 1)
// and is zero at the pivots of all vectors inserted before it, so a
// single sweep in insertion order reduces any vector.
class echelon_basis
{
public:
    explicit echelon_basis(std::size_t dim) : m_dim(dim) {}

    std::size_t dim() const
    {
        return m_dim;
    }
    std::size_t rank() const
    {
        return m_rows.size();
    }
    const std::vector<qvec> &rows() const
    {
        return m_rows;
    }
    const std::vector<std::size_t> &pivots() const
    {
        return m_pivots;
    }

    void reduce(qvec &v) const
    {
        for (std::size_t r = 0; r < m_rows.size(); ++r) {
            const std::size_t p = m_pivots[r];
            if (v[p] == 0) {
                continue;
            }
            const rational f = v[p];
            const qvec &row = m_rows[r];
            for (std::size_t j = p; j < m_dim; ++j) {
                if (row[j] != 0) {
                    v[j] -= f * row[j];
                }
            }
        }
    }

    bool contains(qvec v) const
    {
        reduce(v);
        for (const auto &c : v) {
            if (c != 0) {
                return false;
            }
        }
        return true;
    }

    // Adds v to the span. Returns the new pivot, or nullopt when v was
    // already dependent.
    std::optional<std::size_t> insert(qvec v)
    {
        reduce(v);
        std::size_t p = 0;
        while (p < m_dim && v[p] == 0) {
            ++p;
        }
        if (p == m_dim) {
            return std::nullopt;
        }
        const rational lead = v[p];
        for (std::size_t j = p; j < m_dim; ++j) {
            v[j] /= lead;
        }
        m_rows.push_back(std::move(v));
        m_pivots.push_back(p);
        return p;
    }

private:
    std::size_t m_dim;
    std::vector<qvec> m_rows;
    std::vector<std::size_t> m_pivots;
};

inline qmatrix to_qmatrix(const imatrix &a)
{
    qmatrix q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (long long v : a[i]) {
            q[i].emplace_back(static_cast<long>(v));
        }
    }
    return q;
}

inline rational determinant(qmatrix a)
{
    const std::size_t n = a.size();
    rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) {
            ++piv;
        }
        if (piv == n) {
            return 0;
        }
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) {
                continue;
            }
            const rational f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) {
                a[r][j] -= f * a[c][j];
            }
        }
    }
    return det;
}

inline qmatrix inverse(qmatrix a)
{
    const std::size_t n = a.size();
    qmatrix inv(n, qvec(n));
    for (std::size_t i = 0; i < n; ++i) {
        inv[i][i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) {
            ++piv;
        }
        if (piv == n) {
            throw singular_matrix();
        }
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        const rational d = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) {
                continue;
            }
            const rational f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// Sylvester's criterion: the k-th leading principal minor has sign (-1)^k.
inline bool is_negative_definite(const imatrix &e)
{
    const qmatrix q = to_qmatrix(e);
    for (std::size_t k = 1; k <= q.size(); ++k) {
        qmatrix minor(k);
        for (std::size_t i = 0; i < k; ++i) {
            minor[i].assign(q[i].begin(), q[i].begin() + static_cast<long>(k));
        }
        const int s = sgn(determinant(std::move(minor)));
        if (s != ((k % 2 == 0) ? 1 : -1)) {
            return false;
        }
    }
    return true;
}

} // namespace kpoincare

#endif
