#include "psol/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "psol/errors.hpp"

namespace psol {

namespace {

Integer integer_from(const Json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_integer(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Integer(std::to_string(v.get<std::uint64_t>()))
                                  : Integer(std::to_string(v.get<std::int64_t>()));
  }
  throw ParseError(where + ": expected an integer or a decimal string");
}

std::uint64_t count_from(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const Json& v = doc.at(key);
  if (!v.is_number_unsigned()) {
    throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Json monomials_to_json(const Polynomial& poly) {
  Json out = Json::array();
  for (const auto& m : poly.terms()) {
    out.push_back({{"exponents", m.exponents}, {"coefficient", to_string(m.coefficient)}});
  }
  return out;
}

}  // namespace

FormSystem parse_form_system(const Json& doc) {
  if (!doc.is_object()) throw ParseError("form system document must be a JSON object");
  const std::uint64_t degree = count_from(doc, "degree");
  const std::uint64_t s = count_from(doc, "variables");
  if (degree < 1) throw ParseError("degree must be at least 1");
  if (s < 1) throw ParseError("variables must be at least 1");
  if (!doc.contains("forms") || !doc.at("forms").is_array()) throw ParseError("missing array field \"forms\"");
  const Json& forms = doc.at("forms");
  if (forms.empty()) throw ParseError("a form system needs at least one form");

  std::vector<Polynomial> polys;
  for (std::size_t rho = 0; rho < forms.size(); ++rho) {
    const Json& form = forms[rho];
    if (!form.is_array()) throw ParseError("form " + std::to_string(rho) + " must be an array of monomials");
    std::map<Exponents, Integer> terms;
    for (std::size_t k = 0; k < form.size(); ++k) {
      const std::string where = "form " + std::to_string(rho) + ", monomial " + std::to_string(k);
      const Json& mono = form[k];
      if (!mono.is_object() || !mono.contains("exponents") || !mono.contains("coefficient")) {
        throw ParseError(where + ": expected {\"exponents\": [...], \"coefficient\": ...}");
      }
      const Json& ex = mono.at("exponents");
      if (!ex.is_array()) throw ParseError(where + ": exponents must be an array");
      if (ex.size() != s) {
        throw ParseError(where + ": exponent vector has length " + std::to_string(ex.size()) + ", expected " +
                         std::to_string(s));
      }
      Exponents e;
      std::uint64_t total = 0;
      for (const auto& v : ex) {
        if (!v.is_number_unsigned()) throw ParseError(where + ": exponents must be non-negative integers");
        e.push_back(v.get<unsigned>());
        total += e.back();
      }
      if (total != degree) {
        throw ParseError(where + ": total degree " + std::to_string(total) + " differs from the system degree " +
                         std::to_string(degree));
      }
      terms[e] += integer_from(mono.at("coefficient"), where);
    }
    polys.emplace_back(s, terms);
  }
  return FormSystem(static_cast<unsigned>(degree), s, std::move(polys));
}

FormSystem parse_form_system_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_form_system(doc);
}

FormSystem load_form_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_form_system_text(buffer.str());
}

Json to_json(const FormSystem& fs) {
  Json forms = Json::array();
  for (const auto& f : fs.forms()) forms.push_back(monomials_to_json(f));
  return {{"degree", fs.degree()}, {"variables", fs.variables()}, {"forms", forms}};
}

Json to_json(const MultilinearSystem& system) {
  Json indices = Json::array();
  for (const auto& j : system.indices()) {
    indices.push_back({{"entries", j.entries}, {"factor", to_string(j.factor)}});
  }
  Json forms = Json::array();
  for (const auto& c : system.components()) forms.push_back(monomials_to_json(c));
  return {{"blocks", system.blocks()},
          {"source_variables", system.variables()},
          {"form_count", system.form_count()},
          {"r", system.index_count()},
          {"indices", indices},
          {"degree", system.degree()},
          {"variables", system.unknown_count()},
          {"forms", forms}};
}

Json integers_to_json(std::span<const Integer> values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

IntVector integers_from_json(const Json& values) {
  if (!values.is_array()) throw ParseError("expected an array of integers");
  IntVector out;
  for (std::size_t k = 0; k < values.size(); ++k) out.push_back(integer_from(values[k], "entry " + std::to_string(k)));
  return out;
}

Json to_json(const IntMatrix& matrix) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < matrix.cols(); ++c) row.push_back(to_string(matrix(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return {{"num", to_string(c.get_num())}, {"den", to_string(c.get_den())}};
}

namespace {

Json prime_to_json(const Integer& p) {
  if (p.fits_ulong_p()) return p.get_ui();
  return to_string(p);
}

}  // namespace

Json to_json(const SeedPoint& seed) {
  return {{"p", prime_to_json(seed.p)},
          {"sigma", seed.sigma},
          {"precision", seed.precision()},
          {"residues", integers_to_json(seed.residues)},
          {"minor_columns", seed.minor_columns}};
}

Json to_json(const PAdicPoint& point) {
  return {{"p", prime_to_json(point.p)},
          {"sigma", point.sigma},
          {"precision", point.precision},
          {"residues", integers_to_json(point.residues)},
          {"minor_columns", point.minor_columns},
          {"seed_residues", integers_to_json(point.seed.residues)}};
}

SeedPoint parse_seed(const Json& doc) {
  if (!doc.is_object()) throw ParseError("seed must be a JSON object");
  for (const char* key : {"p", "sigma", "residues", "minor_columns"}) {
    if (!doc.contains(key)) throw ParseError(std::string("seed is missing \"") + key + "\"");
  }
  SeedPoint seed;
  seed.p = integer_from(doc.at("p"), "seed p");
  seed.sigma = static_cast<unsigned>(count_from(doc, "sigma"));
  seed.residues = integers_from_json(doc.at("residues"));
  if (!doc.at("minor_columns").is_array()) throw ParseError("minor_columns must be an array");
  for (const auto& c : doc.at("minor_columns")) {
    if (!c.is_number_unsigned()) throw ParseError("minor_columns entries must be non-negative integers");
    seed.minor_columns.push_back(c.get<std::size_t>());
  }
  if (doc.contains("precision") && count_from(doc, "precision") != seed.precision()) {
    throw ParseError("seed precision must equal 2*sigma - 1");
  }
  return seed;
}

Json to_json(const RankCheck& check) {
  Json out = {{"singular", check.singular}, {"rank", check.rank}, {"required", check.required}};
  if (!check.note.empty()) out["note"] = check.note;
  return out;
}

Json to_json(const CountReport& report, bool with_timing) {
  Json out = {{"quantity", report.quantity},
              {"parameters", report.parameters},
              {"count", to_string(report.count)},
              {"states", to_string(report.states)}};
  if (with_timing) out["wall_seconds"] = report.wall_seconds;
  return out;
}

Json to_json(const LiftingBoundReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"nu", r.nu}, {"M", to_string(r.count)}, {"bound", to_string(r.bound)}, {"holds", r.holds}});
  }
  Json out = {{"p", prime_to_json(report.p)},
              {"sigma", report.sigma},
              {"minor_columns", report.minor_columns},
              {"rows", rows},
              {"holds", report.holds},
              {"truncated", report.truncated}};
  if (report.truncated) out["truncation_reason"] = report.truncation_reason;
  return out;
}

Json to_json(const DensityTrace& trace) {
  Json values = Json::array();
  for (const auto& v : trace.values) values.push_back(to_json(v));
  Json out = {{"p", prime_to_json(trace.p)},
              {"m", trace.m},
              {"gamma", integers_to_json(trace.gamma)},
              {"values", values},
              {"converged", trace.converged},
              {"truncated", trace.truncated}};
  if (trace.truncated) out["truncation_reason"] = trace.truncation_reason;
  return out;
}

Json to_json(const ExpSumResult& result) {
  Json out = {{"p", prime_to_json(result.p)},
              {"m", result.m},
              {"L", result.levels},
              {"mode", result.mode == ExpSumMode::exact ? "exact" : "float"}};
  if (result.mode == ExpSumMode::exact) {
    Json terms = Json::array();
    for (const auto& t : result.exact_terms) terms.push_back(to_json(t));
    out["terms"] = terms;
    out["value"] = to_json(result.exact_value);
  } else {
    out["terms"] = result.float_terms;
    out["value"] = result.float_value;
    out["tolerance"] = result.tolerance;
  }
  out["states"] = to_string(result.states);
  return out;
}

Json to_json(const BoundsSheet& sheet) {
  Json known = Json::array();
  for (const auto& k : sheet.known) {
    known.push_back({{"key", k.key}, {"description", k.description}, {"d", k.d}, {"R", k.R},
                     {"upper", k.upper.get_ui()}, {"applies", k.d == sheet.d && k.R == sheet.R}});
  }
  Json out = {{"d", sheet.d},
              {"R", sheet.R},
              {"m", sheet.m},
              {"r", to_string(sheet.r)},
              {"birch_H_d_R", to_string(sheet.birch)},
              {"linear_space_H_d_R_m", to_string(sheet.linear_spaces)},
              {"wooley_gamma", to_string(sheet.wooley)},
              {"schmidt_factor", to_string(sheet.schmidt_factor)},
              {"schmidt_comparison", to_string(sheet.schmidt_comparison)}};
  if (sheet.schmidt_comparison_known) out["schmidt_comparison_known"] = to_string(*sheet.schmidt_comparison_known);
  for (const auto& k : sheet.known) out[k.key] = k.upper.get_ui();
  out["known_constants"] = known;
  return out;
}

}  // namespace psol
