#pragma once

#include <gmpxx.h>

#include <json.hpp>

#include <cstdint>
#include <string>

#include "moduli/counting.hpp"
#include "moduli/effective.hpp"
#include "moduli/forms.hpp"
#include "moduli/heights.hpp"
#include "moduli/modular_j.hpp"

namespace moduli::report {

using nlohmann::json;

/// {"value", "decimal", "error_bound"}; magnitudes >= 2^53 go out as strings.
json real_field(const Real& value, const Real& error_bound);
/// An outward-rounded upper bound: the double itself is the certified value.
json bound_field(double upper);
json exact_field(std::uint64_t n);
json exact_field(std::int64_t n);
json exact_field(const mpz_class& n);
json exact_field(const mpq_class& q);
/// {"log_value", "decimal", "error_bound"} for quantities too large to print.
json log_field(const Real& log_value, const Real& error_bound);
json complex_field(const Complex& z, const Real& error_bound);
json point_field(const UHPoint& p);

json to_json(const FactoredDiscriminant& d);
json to_json(const QuadraticForm& q);
json to_json(const NeighborhoodQuery& q, const CountReport& r);
json to_json(const HeightEstimate& h);
json to_json(const SeparationData& s);
json to_json(const AlphaProfile& p);
json to_json(const BoundReport& b);
json to_json(const Section4Report& s);

}  // namespace moduli::report
