// Branches shared by the unit tests and the acceptance run.
#ifndef KPOINCARE_TESTS_CORPUS_HPP
#define KPOINCARE_TESTS_CORPUS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <kpoincare/resolution.hpp>

namespace corpus
{

using kpoincare::alg_num;
using kpoincare::ambient_field;
using kpoincare::branch_param;
using kpoincare::field_ptr;
using kpoincare::qvec;
using kpoincare::rational;

struct field_entry {
    field_ptr field;
    // Images of z under the nontrivial embeddings of L into itself, as
    // coordinate vectors.
    std::vector<qvec> root_images;
};

inline qvec q(std::initializer_list<long> v)
{
    qvec out;
    for (long x : v) {
        out.emplace_back(x);
    }
    return out;
}

inline const field_entry &rationals()
{
    static const field_entry f{ambient_field::rationals(), {}};
    return f;
}
inline const field_entry &sqrt2()
{
    static const field_entry f{ambient_field::make(q({-2, 0, 1})), {q({0, -1})}};
    return f;
}
inline const field_entry &sqrt3()
{
    static const field_entry f{ambient_field::make(q({-3, 0, 1})), {q({0, -1})}};
    return f;
}
inline const field_entry &gaussian()
{
    static const field_entry f{ambient_field::make(q({1, 0, 1})), {q({0, -1})}};
    return f;
}
inline const field_entry &cbrt2()
{
    static const field_entry f{ambient_field::make(q({-2, 0, 0, 1})), {}};
    return f;
}
// z^3 - 3z + 1: cyclic cubic, every root is a polynomial in z.
inline const field_entry &cyclic_cubic()
{
    static const field_entry f{ambient_field::make(q({1, -3, 0, 1})), {q({-2, 0, 1}), q({2, -1, -1})}};
    return f;
}
inline const field_entry &fourth_root2()
{
    static const field_entry f{ambient_field::make(q({-2, 0, 0, 0, 1})), {q({0, -1, 0, 0})}};
    return f;
}
// z = sqrt2 + sqrt3, z^4 - 10 z^2 + 1.
inline const field_entry &biquadratic()
{
    static const field_entry f{ambient_field::make(q({1, 0, -10, 0, 1})),
                               {q({0, -1, 0, 0}), q({0, -10, 0, 1}), q({0, 10, 0, -1})}};
    return f;
}

struct entry {
    std::string name;
    const field_entry *field;
    branch_param branch;
};

// Term helper: coordinates in the power basis.
inline kpoincare::branch_term term(const field_entry &f, int exp, const qvec &coords)
{
    return {exp, alg_num(f.field, coords)};
}
inline kpoincare::branch_term generic(int exp)
{
    return {exp, std::nullopt};
}

inline entry make(std::string name, const field_entry &f, int m, std::vector<kpoincare::branch_term> terms)
{
    return {std::move(name), &f, branch_param{f.field, m, std::move(terms)}};
}

// Branches with rational coefficients.
inline std::vector<entry> rational_branches()
{
    const auto &Q = rationals();
    return {
        make("(t, 0)", Q, 1, {}),
        make("(t^2, t^3)", Q, 2, {term(Q, 3, q({1}))}),
        make("(t^4, t^6 + t^7)", Q, 4, {term(Q, 6, q({1})), term(Q, 7, q({1}))}),
        make("(t^3, t^4)", Q, 3, {term(Q, 4, q({1}))}),
        make("(t^2, t^5)", Q, 2, {term(Q, 5, q({1}))}),
        make("(t^3, t^5 + t^7)", Q, 3, {term(Q, 5, q({1})), term(Q, 7, q({1}))}),
        make("(t^4, t^6 + t^9)", Q, 4, {term(Q, 6, q({1})), term(Q, 9, q({1}))}),
        make("(t, t^2 + t^3)", Q, 1, {term(Q, 2, q({1})), term(Q, 3, q({1}))}),
        make("(t^2, 3/2 t^3 - t^4)", Q, 2, {{3, alg_num(Q.field, rational(3, 2))}, term(Q, 4, q({-1}))}),
    };
}

// Branches over quadratic, cubic and quartic fields.
inline std::vector<entry> field_branches()
{
    const auto &K2 = sqrt2();
    const auto &K3 = sqrt3();
    const auto &Ki = gaussian();
    const auto &C2 = cbrt2();
    const auto &Cc = cyclic_cubic();
    const auto &F2 = fourth_root2();
    const auto &B = biquadratic();
    return {
        make("(t, sqrt2 t)", K2, 1, {term(K2, 1, q({0, 1}))}),
        make("(t^2, sqrt2 t^3)", K2, 2, {term(K2, 3, q({0, 1}))}),
        make("(t^2, t^3 + sqrt2 t^4)", K2, 2, {term(K2, 3, q({1, 0})), term(K2, 4, q({0, 1}))}),
        make("(t, t + sqrt2 t^2)", K2, 1, {term(K2, 1, q({1, 0})), term(K2, 2, q({0, 1}))}),
        make("(t, sqrt2 t^3)", K2, 1, {term(K2, 3, q({0, 1}))}),
        make("(t^2, t^3 + sqrt2 t^5)", K2, 2, {term(K2, 3, q({1, 0})), term(K2, 5, q({0, 1}))}),
        make("(t^3, sqrt2 t^4)", K2, 3, {term(K2, 4, q({0, 1}))}),
        make("(t^4, t^6 + sqrt2 t^7)", K2, 4, {term(K2, 6, q({1, 0})), term(K2, 7, q({0, 1}))}),
        make("(t^2, (1 + sqrt2) t^3)", K2, 2, {term(K2, 3, q({1, 1}))}),
        make("(t, sqrt3 t^2 + t^3)", K3, 1, {term(K3, 2, q({0, 1})), term(K3, 3, q({1, 0}))}),
        make("(t^2, i t^3 + t^4)", Ki, 2, {term(Ki, 3, q({0, 1})), term(Ki, 4, q({1, 0}))}),
        make("(t, cbrt2 t)", C2, 1, {term(C2, 1, q({0, 1, 0}))}),
        make("(t^2, cbrt2 t^3)", C2, 2, {term(C2, 3, q({0, 1, 0}))}),
        make("(t, t + cbrt4 t^2)", C2, 1, {term(C2, 1, q({1, 0, 0})), term(C2, 2, q({0, 0, 1}))}),
        make("(t, w t^2), w^3 - 3w + 1 = 0", Cc, 1, {term(Cc, 2, q({0, 1, 0}))}),
        make("(t, z^2 t + z t^2), z^4 = 2", F2, 1, {term(F2, 1, q({0, 0, 1, 0})), term(F2, 2, q({0, 1, 0, 0}))}),
        make("(t, z t), z^4 = 2", F2, 1, {term(F2, 1, q({0, 1, 0, 0}))}),
        make("(t^2, t^3 + z t^5), z^4 = 2", F2, 2, {term(F2, 3, q({1, 0, 0, 0})), term(F2, 5, q({0, 1, 0, 0}))}),
        // sqrt2 = (z^3 - 9z)/2 and sqrt3 = (11z - z^3)/2.
        make("(t, sqrt2 t + sqrt3 t^2)", B, 1,
             {{1, alg_num(B.field, qvec{0, rational(-9, 2), 0, rational(1, 2)})},
              {2, alg_num(B.field, qvec{0, rational(11, 2), 0, rational(-1, 2)})}}),
        make("(t^2, sqrt2 t^3 + sqrt3 t^4)", B, 2,
             {{3, alg_num(B.field, qvec{0, rational(-9, 2), 0, rational(1, 2)})},
              {4, alg_num(B.field, qvec{0, rational(11, 2), 0, rational(-1, 2)})}}),
        make("(t, z t^2), z^4 - 10 z^2 + 1 = 0", B, 1, {term(B, 2, q({0, 1, 0, 0}))}),
    };
}

inline std::vector<entry> all_case_one()
{
    auto out = rational_branches();
    const auto more = field_branches();
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

// Branches whose resolution reaches a generic center.
inline std::vector<entry> generic_branches()
{
    const auto &Q = rationals();
    const auto &K2 = sqrt2();
    return {
        make("(t^2, t^3 + T t^5)", Q, 2, {term(Q, 3, q({1})), generic(5)}),
        make("(t, T t^2)", Q, 1, {generic(2)}),
        make("(t^4, t^6 + t^7 + T t^9)", Q, 4, {term(Q, 6, q({1})), term(Q, 7, q({1})), generic(9)}),
        make("(t^2, sqrt2 t^3 + T t^4)", K2, 2, {term(K2, 3, q({0, 1})), generic(4)}),
        make("(t^3, t^4 + T t^5)", Q, 3, {term(Q, 4, q({1})), generic(5)}),
    };
}

struct divisorial_target {
    std::string name;
    entry base;
    int extra_steps;
};

inline std::vector<divisorial_target> divisorial_targets()
{
    const auto &Q = rationals();
    const auto &K2 = sqrt2();
    const auto line = make("(t, 0)", Q, 1, {});
    const auto cusp = make("(t^2, t^3)", Q, 2, {term(Q, 3, q({1}))});
    return {
        {"first blow-up", line, 0},
        {"second blow-up along y = 0", line, 1},
        {"tau_1 of the cusp", cusp, 0},
        {"past the splitting of (t, sqrt2 t)", make("(t, sqrt2 t)", K2, 1, {term(K2, 1, q({0, 1}))}), 0},
        {"past the splitting of (t, t + sqrt2 t^2), one more step",
         make("(t, t + sqrt2 t^2)", K2, 1, {term(K2, 1, q({1, 0})), term(K2, 2, q({0, 1}))}), 1},
        {"cusp plus two free steps", cusp, 2},
        {"(t^2, t^3 + sqrt2 t^4) plus two steps",
         make("(t^2, t^3 + sqrt2 t^4)", K2, 2, {term(K2, 3, q({1, 0})), term(K2, 4, q({0, 1}))}), 2},
        {"(t^4, t^6 + t^7) at delta", make("(t^4, t^6 + t^7)", Q, 4, {term(Q, 6, q({1})), term(Q, 7, q({1}))}), 0},
    };
}

} // namespace corpus

#endif
