#pragma once

#include <string>

#include "json.hpp"
#include "psol/counting.hpp"
#include "psol/density.hpp"
#include "psol/forms.hpp"
#include "psol/hensel.hpp"

namespace psol {

using Json = nlohmann::ordered_json;

/// Reads {"degree": d, "variables": s, "forms": [[{"exponents": [...],
/// "coefficient": "..."}, ...], ...]}. Coefficients may also be JSON integers.
/// Monomials are merged and sorted. Throws ParseError naming the offending
/// form and monomial.
FormSystem parse_form_system(const Json& doc);
FormSystem parse_form_system_text(const std::string& text);
FormSystem load_form_system(const std::string& path);

Json to_json(const FormSystem& fs);
/// The expanded components as a form system in m*s variables plus J.
Json to_json(const MultilinearSystem& system);
Json to_json(const IntMatrix& matrix);
Json to_json(const Rational& q);
Json to_json(const SeedPoint& seed);
Json to_json(const PAdicPoint& point);
Json to_json(const RankCheck& check);
Json to_json(const CountReport& report, bool with_timing = false);
Json to_json(const LiftingBoundReport& report);
Json to_json(const DensityTrace& trace);
Json to_json(const ExpSumResult& result);
Json to_json(const BoundsSheet& sheet);

SeedPoint parse_seed(const Json& doc);

Json integers_to_json(std::span<const Integer> values);
IntVector integers_from_json(const Json& values);

}  // namespace psol
