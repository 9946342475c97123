#ifndef KPOINCARE_ERRORS_HPP
#define KPOINCARE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kpoincare
{

// Root of every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input that is well formed but mathematically invalid (bad field,
// reducible parametrization, colliding curvette constant, ...).
struct math_error : error {
    using error::error;
};

struct division_by_zero : math_error {
    division_by_zero() : math_error("division by zero") {}
};

struct reducible_polynomial : math_error {
    explicit reducible_polynomial(const std::string &what) : math_error("reducible defining polynomial: " + what) {}
};

struct not_a_subfield : math_error {
    using math_error::math_error;
};

struct non_integral_degree : math_error {
    using math_error::math_error;
};

struct not_irreducible_param : math_error {
    using math_error::math_error;
};

struct bad_constant : math_error {
    using math_error::math_error;
};

struct not_a_root : math_error {
    using math_error::math_error;
};

struct singular_matrix : math_error {
    singular_matrix() : math_error("singular matrix") {}
};

struct bad_semigroup_data : math_error {
    using math_error::math_error;
};

struct missing_delta : math_error {
    missing_delta() : math_error("divisorial series requested without M_delta") {}
};

struct index_out_of_range : math_error {
    using math_error::math_error;
};

// A truncated series ran out of known coefficients before a decision
// could be certified. Callers holding exact inputs retry with more terms.
struct truncation_too_short : error {
    using error::error;
};

// Blow-up center depending on a transcendental (generic) coefficient.
struct generic_center : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

} // namespace kpoincare

#endif
