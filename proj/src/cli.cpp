#include "psol/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "psol/errors.hpp"
#include "psol/io.hpp"

namespace psol::cli {

namespace {

struct Common {
  std::string input;
  std::string output;
  std::string format = "json";
  std::size_t m = 1;
  std::string p = "2";
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
  bool timing = false;
};

IntVector parse_list(const std::string& text) {
  IntVector out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first == std::string::npos) throw DomainError("empty entry in list '" + text + "'");
    try {
      out.push_back(parse_integer(item.substr(first, last - first + 1)));
    } catch (const ParseError&) {
      throw DomainError("invalid integer '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

std::vector<std::size_t> parse_columns(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& v : parse_list(text)) {
    if (v < 0 || !v.fits_ulong_p()) throw DomainError("column index out of range: " + to_string(v));
    out.push_back(v.get_ui());
  }
  return out;
}

IntMatrix parse_basis(const std::string& text) {
  std::vector<IntVector> rows;
  std::stringstream in(text);
  std::string row;
  while (std::getline(in, row, ';')) rows.push_back(parse_list(row));
  if (rows.empty()) throw DomainError("empty basis");
  IntMatrix out(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != out.cols()) throw DomainError("basis rows have different lengths");
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = rows[r][c];
  }
  return out;
}

Integer parse_prime(const std::string& text) {
  Integer p;
  try {
    p = parse_integer(text);
  } catch (const ParseError&) {
    throw DomainError("--p must be an integer, got '" + text + "'");
  }
  if (!is_prime(p)) throw DomainError("--p must be prime, got " + text);
  return p;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact p-adic solubility toolkit for systems of integer forms", "psol"};
    app.require_subcommand(1);
    register_commands(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInput;
    }

    try {
      if (common_.format != "json") throw DomainError("only --format json is supported");
      const Json doc = action_();
      emit(doc);
      return kExitOk;
    } catch (const ParseError& e) {
      err_ << "input error: " << e.what() << "\n";
      return kExitInput;
    } catch (const DomainError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitDomain;
    } catch (const InternalError& e) {
      err_ << "internal error: " << e.what() << "\n";
      return kExitDomain;
    }
  }

 private:
  void emit(const Json& doc) {
    const std::string text = doc.dump(2) + "\n";
    if (common_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(common_.output);
    if (!file) throw ParseError("cannot write " + common_.output);
    file << text;
  }

  EnumerationOptions enumeration() const { return {common_.budget, common_.workers}; }

  FormSystem system() const { return load_form_system(common_.input); }

  void progress(const std::string& what, const CountReport& r) {
    err_ << "psol: " << what << " enumerated " << to_string(r.states) << " states in " << r.wall_seconds << " s\n";
  }

  CLI::App* command(CLI::App& app, const std::string& name, const std::string& help, bool needs_input,
                    bool uses_m, bool uses_p, std::function<Json()> action) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (needs_input) sub->add_option("input", common_.input, "form system JSON file")->required();
    if (uses_m) sub->add_option("--m", common_.m, "linear space dimension m")->check(CLI::PositiveNumber);
    if (uses_p) sub->add_option("--p", common_.p, "prime p");
    sub->add_option("-o,--output", common_.output, "write the report here instead of stdout");
    sub->add_option("--format", common_.format, "output format (json)");
    sub->add_option("--budget", common_.budget, "maximum enumerated states");
    sub->add_option("--workers", common_.workers, "enumeration threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", common_.timing, "include wall time in count reports");
    sub->callback([this, action] { action_ = action; });
    return sub;
  }

  void register_commands(CLI::App& app) {
    auto* expand = command(app, "expand", "expand into the multilinear system", true, true, false, [this] {
      return to_json(expand_multilinear(system(), common_.m, {term_cap_}));
    });
    expand->add_option("--term-cap", term_cap_, "maximum monomials per expanded form");

    auto* eval = command(app, "eval", "evaluate the expanded system at a point", true, true, false, [this] {
      const auto sys = expand_multilinear(system(), common_.m);
      return Json{{"point", integers_to_json(parse_list(point_))},
                  {"values", integers_to_json(sys.evaluate(parse_list(point_)))}};
    });
    eval->add_option("--point", point_, "comma-separated integers, length m*s")->required();

    auto* jac = command(app, "jacobian", "Jacobian matrix of the expanded system", true, true, true, [this] {
      const auto sys = expand_multilinear(system(), common_.m);
      const IntVector point = parse_list(point_);
      const auto j = jacobian_at(sys, point);
      Json doc = {{"point", integers_to_json(point)},
                  {"rows", sys.equation_count()},
                  {"cols", sys.unknown_count()},
                  {"matrix", to_json(j.matrix)},
                  {"polarization_agrees", jacobian_by_polarization(sys, point) == j.matrix}};
      if (rank_p_) {
        const Integer p = parse_prime(common_.p);
        doc["p"] = p.get_ui();
        doc["rank_check"] = to_json(singular_rank_check(sys, point, p));
        if (j.matrix.rows() <= j.matrix.cols()) {
          const auto order = matrix_order(j.matrix, p);
          doc["order"] = order ? Json(*order) : Json("infinity");
        }
      }
      return doc;
    });
    jac->add_option("--point", point_, "comma-separated integers, length m*s")->required();
    jac->add_flag("--rank", rank_p_, "add the rank check and matrix order at --p");

    auto* seeds = command(app, "seeds", "find certified approximate zeros", true, true, true, [this] {
      const auto sys = expand_multilinear(system(), common_.m);
      const auto found = find_seeds(sys, parse_prime(common_.p), sigma_max_, enumeration());
      Json list = Json::array();
      for (const auto& s : found) list.push_back(to_json(s));
      return Json{{"m", common_.m}, {"sigma_max", sigma_max_}, {"count", found.size()}, {"seeds", list}};
    });
    seeds->add_option("--sigma-max", sigma_max_, "largest sigma to try")->check(CLI::PositiveNumber);

    auto* lift = command(app, "lift", "lift a seed to a zero mod p^N", true, true, true, [this] {
      const auto sys = expand_multilinear(system(), common_.m);
      SeedPoint seed;
      if (!seed_file_.empty()) {
        std::ifstream in(seed_file_);
        if (!in) throw ParseError("cannot open " + seed_file_);
        Json doc;
        try {
          doc = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
          throw ParseError(std::string("invalid seed JSON: ") + e.what());
        }
        seed = parse_seed(doc);
      } else {
        const auto found = find_seeds(sys, parse_prime(common_.p), sigma_max_, enumeration());
        if (seed_index_ >= found.size()) {
          throw DomainError("no seed with index " + std::to_string(seed_index_) + " (found " +
                            std::to_string(found.size()) + ")");
        }
        seed = found[seed_index_];
      }
      return to_json(lift_to_precision(sys, seed, precision_, enumeration()));
    });
    lift->add_option("--precision", precision_, "target precision N")->required();
    lift->add_option("--sigma-max", sigma_max_, "largest sigma for the seed search");
    lift->add_option("--seed-index", seed_index_, "which found seed to lift");
    lift->add_option("--seed", seed_file_, "seed JSON file instead of searching");

    auto* restrict = command(app, "restrict", "restrict to an integral linear subspace", true, true, true, [this] {
      const FormSystem fs = system();
      if (!basis_.empty()) {
        const IntMatrix basis = parse_basis(basis_);
        Json doc = to_json(restrict_to_subspace(fs, basis));
        doc["basis"] = to_json(basis);
        return doc;
      }
      if (random_dim_ == 0) throw DomainError("restrict needs --basis or --random-dim");
      const auto found = search_nonsingular_slice(fs, common_.m, parse_prime(common_.p), random_dim_, tries_,
                                                  rng_seed_, entry_bound_, enumeration());
      if (!found) {
        return Json{{"found", false}, {"tries", tries_}, {"rng_seed", rng_seed_}};
      }
      Json doc = to_json(found->restricted);
      Json seeds = Json::array();
      for (const auto& s : found->seeds) seeds.push_back(to_json(s));
      doc["basis"] = to_json(found->basis);
      doc["found"] = true;
      doc["attempts"] = found->attempts;
      doc["rng_seed"] = rng_seed_;
      doc["seeds"] = seeds;
      return doc;
    });
    restrict->add_option("--basis", basis_, "s x s' basis, rows separated by ';'");
    restrict->add_option("--random-dim", random_dim_, "search random slices of this dimension");
    restrict->add_option("--rng-seed", rng_seed_, "seed for random slices");
    restrict->add_option("--tries", tries_, "random slices to try");
    restrict->add_option("--entry-bound", entry_bound_, "random basis entries lie in [-b, b]");

    auto* gamma = command(app, "gamma", "count linear-space zeros mod p^l", true, true, true, [this] {
      const auto r = gamma_m(system(), common_.m, parse_prime(common_.p), level_, enumeration());
      progress("gamma", r);
      return to_json(r, common_.timing);
    });
    gamma->add_option("--l", level_, "exponent l")->required();

    auto* count_m = command(app, "count-m", "count certified classes M(sigma, nu)", true, true, true, [this] {
      const auto sys = expand_multilinear(system(), common_.m);
      const auto r = count_M(sys, parse_prime(common_.p), sigma_, nu_, parse_columns(columns_), enumeration());
      progress("count-m", r);
      return to_json(r, common_.timing);
    });
    count_m->add_option("--sigma", sigma_, "sigma")->check(CLI::PositiveNumber);
    count_m->add_option("--nu", nu_, "nu");
    count_m->add_option("--columns", columns_, "minor columns (0-based, comma-separated)")->required();

    auto* verify = command(app, "verify-lemma31", "check the lifting growth bound", true, true, true, [this] {
      const auto sys = expand_multilinear(system(), common_.m);
      const Integer p = parse_prime(common_.p);
      std::vector<std::size_t> cols;
      if (!columns_.empty()) {
        cols = parse_columns(columns_);
      } else {
        const auto found = find_seeds(sys, p, sigma_, enumeration());
        if (found.empty() || found.front().sigma != sigma_) {
          throw DomainError("no seed at sigma = " + std::to_string(sigma_) + "; pass --columns explicitly");
        }
        cols = found.front().minor_columns;
      }
      return to_json(verify_lifting_bound(sys, p, sigma_, nu_max_, cols, enumeration()));
    });
    verify->add_option("--sigma", sigma_, "sigma")->check(CLI::PositiveNumber);
    verify->add_option("--nu-max", nu_max_, "largest nu");
    verify->add_option("--columns", columns_, "minor columns; defaults to the first seed's");

    auto* points = command(app, "points", "count integral linear-space zeros in a box", true, true, false, [this] {
      const auto r = count_rational_points(system(), common_.m, radius_, enumeration());
      progress("points", r);
      return to_json(r, common_.timing);
    });
    points->add_option("--P", radius_, "box radius")->required();

    auto* density = command(app, "density", "local density approximants", true, true, true, [this] {
      return to_json(chi_trace(system(), common_.m, parse_prime(common_.p), i_max_, enumeration()));
    });
    density->add_option("--i-max", i_max_, "largest level")->required();

    auto* expsum = command(app, "expsum", "exponential-sum partial sums of the local density", true, true, true,
                           [this] {
                             const ExpSumMode mode = mode_ == "float" ? ExpSumMode::floating : ExpSumMode::exact;
                             return to_json(chi_expsum_partial(system(), common_.m, parse_prime(common_.p),
                                                               levels_, mode, enumeration()));
                           });
    expsum->add_option("--L", levels_, "largest level")->required();
    expsum->add_option("--mode", mode_, "float or exact")->check(CLI::IsMember({"float", "exact"}));

    auto* kappa = command(app, "kappa", "lifting constant kappa_p", false, false, true, [this] {
      const Integer p = parse_prime(common_.p);
      return Json{{"p", p.get_ui()},
                  {"sigma", sigma_},
                  {"ms", ms_},
                  {"Rr", rr_},
                  {"kappa", to_json(kappa_bound(p, sigma_, ms_, rr_))}};
    });
    kappa->add_option("--sigma", sigma_, "sigma")->check(CLI::PositiveNumber);
    kappa->add_option("--ms", ms_, "m*s")->required();
    kappa->add_option("--Rr", rr_, "R*r")->required();

    auto* bounds = command(app, "bounds", "explicit variable-count bounds", false, false, false,
                           [this] { return to_json(bounds_sheet(d_, forms_, static_cast<unsigned>(common_.m))); });
    bounds->add_option("--d", d_, "degree")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--R", forms_, "number of forms")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--m", common_.m, "linear space dimension")->check(CLI::PositiveNumber);
  }

  std::ostream& out_;
  std::ostream& err_;
  Common common_;
  std::function<Json()> action_;

  std::size_t term_cap_ = ExpansionOptions{}.term_cap;
  std::string point_;
  bool rank_p_ = false;
  unsigned sigma_max_ = 1;
  unsigned precision_ = 1;
  std::size_t seed_index_ = 0;
  std::string seed_file_;
  std::string basis_;
  std::size_t random_dim_ = 0;
  std::uint64_t rng_seed_ = 0;
  unsigned tries_ = 100;
  long entry_bound_ = 3;
  unsigned level_ = 1;
  unsigned sigma_ = 1;
  unsigned nu_ = 0;
  unsigned nu_max_ = 2;
  std::string columns_;
  std::uint64_t radius_ = 0;
  unsigned i_max_ = 0;
  unsigned levels_ = 0;
  std::string mode_ = "exact";
  std::size_t ms_ = 1;
  std::size_t rr_ = 1;
  unsigned d_ = 1;
  unsigned forms_ = 1;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace psol::cli
