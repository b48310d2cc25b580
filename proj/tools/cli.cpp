#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <boost/version.hpp>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "isodist/body.hpp"
#include "isodist/errors.hpp"
#include "isodist/lattice.hpp"
#include "isodist/montecarlo.hpp"
#include "isodist/profiles.hpp"
#include "isodist/sections.hpp"
#include "isodist/specfun.hpp"
#include "isodist/witness.hpp"

#ifndef ISODIST_VERSION
#define ISODIST_VERSION "unknown"
#endif

namespace isodist::cli {
namespace {

using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string csv_field(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + "\"";
    }
  };
  return std::visit(Visitor{}, v);
}

nlohmann::ordered_json json_value(const Value& v) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(std::int64_t i) const { return i; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return nullptr;
      return d;
    }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

void write_table(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "json") {
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = json_value(row[c]);
      os << obj.dump() << '\n';
    }
    return;
  }
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(row[c]);
    os << '\n';
  }
}

Value opt_double(const std::optional<double>& v) { return v ? Value(*v) : Value(); }
Value opt_int(const std::optional<int>& v) { return v ? Value(std::int64_t{*v}) : Value(); }
Value integer(long long v) { return Value(std::int64_t{v}); }

double parse_number(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw DomainError("not a number: " + text);
  return v;
}

// "lo:hi:step", inclusive of hi.
std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw DomainError("range must be lo:hi:step");
  return sections::make_grid(parse_number(parts[0]), parse_number(parts[1]),
                             parse_number(parts[2]));
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Output options shared by every command.
struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.path, "data file; a .manifest.json sidecar is written next to it");
}

nlohmann::ordered_json manifest(const CLI::App& cmd, const std::vector<std::string>& args,
                                const std::string& data_path) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<std::string> seed;
  for (const CLI::App* app = &cmd; app != nullptr; app = app->get_parent()) {
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_name() == "--help" || opt->get_name() == "--version") continue;
      std::string name = opt->get_name();
      name.erase(0, name.find_first_not_of('-'));
      std::string joined;
      for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
      if (opt->count() == 0) joined = opt->get_default_str();
      if (joined.empty()) continue;
      params[name] = joined;
      if (name == "seed") seed = joined;
    }
  }
  std::string command;
  for (const CLI::App* app = &cmd; app != nullptr && app->get_parent() != nullptr;
       app = app->get_parent()) {
    command = app->get_name() + (command.empty() ? "" : " " + command);
  }
  nlohmann::ordered_json m;
  m["command"] = command;
  m["arguments"] = args;
  m["parameters"] = params;
  m["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  m["versions"] = {{"isodist", ISODIST_VERSION},
                   {"boost", BOOST_LIB_VERSION},
                   {"compiler", __VERSION__}};
  m["timestamp"] = utc_timestamp();
  m["output_path"] = data_path;
  return m;
}

void emit(const Table& t, const Output& o, const CLI::App& cmd,
          const std::vector<std::string>& args, std::ostream& out) {
  if (o.path.empty()) {
    write_table(t, o.format, out);
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw DomainError("cannot open output file " + o.path);
  write_table(t, o.format, file);
  std::ofstream side(o.path + ".manifest.json", std::ios::binary);
  if (!side) throw DomainError("cannot open manifest file " + o.path + ".manifest.json");
  side << manifest(cmd, args, o.path).dump(2) << '\n';
}

std::string certification_name(witness::Certification c) {
  switch (c) {
    case witness::Certification::exact: return "exact";
    case witness::Certification::quadrature: return "quadrature";
    case witness::Certification::monte_carlo: return "monte_carlo";
    case witness::Certification::normal_approximation: return "normal_approximation";
  }
  return "unknown";
}

std::string mode_name(lattice::SearchMode m) {
  switch (m) {
    case lattice::SearchMode::automatic: return "automatic";
    case lattice::SearchMode::pairwise: return "pairwise";
    case lattice::SearchMode::farthest_cells: return "farthest_cells";
  }
  return "unknown";
}

// --- bounds ---

struct BoundsArgs {
  std::string family;
  std::optional<double> eps;
  std::string eps_range;
  std::optional<int> n;
  std::optional<double> p;
  std::string constants;
};

Table run_bounds(const BoundsArgs& a) {
  const BodyFamily family = parse_family(a.family, a.p);
  const ConstantsConfig constants =
      a.constants.empty() ? ConstantsConfig{} : ConstantsConfig::load(a.constants);
  std::vector<double> eps_list;
  if (a.eps) eps_list.push_back(*a.eps);
  if (!a.eps_range.empty()) {
    const auto grid = parse_range(a.eps_range);
    eps_list.insert(eps_list.end(), grid.begin(), grid.end());
  }
  if (eps_list.empty()) throw DomainError("one of --eps or --eps-range is required");
  Table t{{"family", "eps", "n", "lower", "upper", "exact", "exact_limit", "manhattan_limit",
           "parametric"},
          {}};
  for (double eps : eps_list) {
    const auto r = witness::bound_report(family, eps, a.n, constants);
    t.rows.push_back({to_string(family), eps, opt_int(r.n), r.lower, r.upper,
                      r.exact_limit.has_value(), opt_double(r.exact_limit),
                      opt_double(r.manhattan_limit), r.parametric});
  }
  return t;
}

// --- witness ---

struct WitnessArgs {
  std::string family = "ball";
  double eps = 0.1;
  int n = 0;
  std::optional<double> p;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

Table run_witness(const WitnessArgs& a) {
  const BodyFamily family = parse_family(a.family, a.p);
  witness::RegionPair pair;
  switch (family.kind) {
    case FamilyKind::ball: pair = witness::ball_caps_witness(a.n, a.eps); break;
    case FamilyKind::lp: pair = witness::lp_caps_witness(a.n, *family.p, a.eps); break;
    case FamilyKind::cube: pair = witness::cube_diagonal_witness(a.n, a.eps); break;
    case FamilyKind::simplex: pair = witness::simplex_corner_witness(a.n, a.eps); break;
  }
  const auto bounds = witness::bound_report(family, a.eps);
  Value mc_estimate, mc_half_width, mc_covers;
  if (a.samples > 0) {
    if (a.n < 2 && family.kind != FamilyKind::cube) {
      throw DomainError("Monte Carlo certification needs n >= 2");
    }
    const auto batch = montecarlo::sample_uniform(family, a.n, a.samples, a.seed);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < batch.count; ++i) {
      if (witness::region_contains(pair.B, batch.point(i))) ++hits;
    }
    const auto est = montecarlo::proportion_estimate(hits, batch.count);
    mc_estimate = est.estimate;
    mc_half_width = est.half_width_95;
    mc_covers = est.covers(pair.volume_each);
  }
  Table t{{"family", "n", "eps", "distance", "volume_each", "certification",
           "volume_tolerance", "threshold", "alpha", "limit_lower", "mc_estimate",
           "mc_half_width", "mc_covers"},
          {}};
  t.rows.push_back({to_string(family), integer(a.n), a.eps, pair.distance, pair.volume_each,
                    certification_name(pair.certification), pair.volume_tolerance,
                    pair.B.threshold, pair.B.alpha, bounds.lower, mc_estimate, mc_half_width,
                    mc_covers});
  return t;
}

// --- lattice ---

struct LatticeArgs {
  int k = 2;
  int n = 2;
  std::size_t r = 1;
  std::size_t s = 1;
  int m = 16;
  double eps = 0.1;
  double budget = lattice::kDefaultBudget;
  std::string mode = "automatic";
};

Table run_lattice_verify(const LatticeArgs& a, bool& agree) {
  const lattice::Grid grid(a.k, a.n);
  lattice::SearchMode mode = lattice::SearchMode::automatic;
  if (a.mode == "pairwise") mode = lattice::SearchMode::pairwise;
  if (a.mode == "farthest") mode = lattice::SearchMode::farthest_cells;
  const auto res = lattice::verify_extremal_pairs(grid, a.r, a.s, a.budget, mode);
  agree = res.agree;
  Table t{{"k", "n", "r", "s", "brute_max", "segment_distance", "agree", "mode", "evaluations"},
          {}};
  t.rows.push_back({integer(a.k), integer(a.n), integer(static_cast<long long>(a.r)),
                    integer(static_cast<long long>(a.s)), integer(res.brute_max),
                    integer(res.segment_distance), res.agree, mode_name(res.mode_used),
                    res.evaluations});
  return t;
}

Table run_lattice_scaling(const LatticeArgs& a) {
  const auto res = lattice::scaled_max_distance(a.n, a.m, a.eps, a.budget);
  Table t{{"n", "m", "eps", "lower_sum", "upper_sum", "lattice_distance", "scaled",
           "continuous_target", "ratio"},
          {}};
  t.rows.push_back({integer(res.n), integer(res.m), res.epsilon, integer(res.lower_sum),
                    integer(res.upper_sum), integer(res.lattice_distance), res.scaled,
                    res.continuous_target, res.scaled / res.continuous_target});
  return t;
}

// --- sections ---

struct SectionsArgs {
  double p = 2.0;
  std::vector<int> n_list;
  std::string grid = "0:3:0.01";
  bool curves = false;
};

Table run_sections(const SectionsArgs& a) {
  const PExponent p(a.p);
  const auto grid = parse_range(a.grid);
  if (a.curves) {
    Table t{{"p", "n", "x", "section_area", "tail_volume", "density_limit", "tail_limit"}, {}};
    for (int n : a.n_list) {
      const auto curve = sections::section_curve(p, n, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        t.rows.push_back({a.p, integer(n), x, curve.s_values[i], curve.v_values[i],
                          sections::psi_p_density_limit(x, p), specfun::psi_p(-x, p)});
      }
    }
    return t;
  }
  const auto rows = sections::convergence_report(p, a.n_list, grid);
  Table t{{"p", "n", "sup_v_gap", "sup_s_gap"}, {}};
  for (const auto& r : rows) t.rows.push_back({a.p, integer(r.n), r.sup_v_gap, r.sup_s_gap});
  return t;
}

// --- check ---

struct CheckArgs {
  int n = 20;
  std::size_t samples = 100000;
  std::uint64_t seed = 7;
};

Table run_check_lemmas(const CheckArgs& a, bool& passed) {
  const auto results = montecarlo::cutoff_lemma_suite(a.n, a.samples, a.seed);
  Table t{{"check", "checked", "violations", "worst", "passed", "detail"}, {}};
  passed = true;
  for (const auto& r : results) {
    passed = passed && r.passed();
    t.rows.push_back({r.name, integer(static_cast<long long>(r.checked)),
                      integer(static_cast<long long>(r.violations)), r.worst, r.passed(),
                      r.detail});
  }
  return t;
}

Table run_check_transfer(const CheckArgs& a, bool& passed) {
  const auto r = montecarlo::transfer_map_check(a.n, a.samples, a.seed);
  passed = r.ks_pass && r.lipschitz_pass;
  Table t{{"n", "samples", "max_ks", "ks_critical", "ks_pass", "max_lipschitz_ratio",
           "lipschitz_pass"},
          {}};
  t.rows.push_back({integer(a.n), integer(static_cast<long long>(a.samples)), r.max_ks,
                    r.ks_critical, r.ks_pass, r.max_lipschitz_ratio, r.lipschitz_pass});
  return t;
}

Table run_check_avgdist(const CheckArgs& a, bool& passed) {
  const auto r = montecarlo::average_distance_experiment(a.n, a.samples, a.seed);
  passed = r.mean_distance.estimate >= r.lower_bound;
  Table t{{"n", "samples", "mean_distance", "half_width_95", "lower_bound", "passed"}, {}};
  t.rows.push_back({integer(a.n), integer(static_cast<long long>(a.samples)),
                    r.mean_distance.estimate, r.mean_distance.half_width_95, r.lower_bound,
                    passed});
  return t;
}

// --- asympt ---

struct AsymptArgs {
  std::string which = "phi-inv";
  std::vector<double> eps;
  double p = 2.0;
};

Table run_asympt(const AsymptArgs& a) {
  std::vector<double> eps = a.eps;
  if (eps.empty()) {
    for (int k = 4; k <= 12; ++k) eps.push_back(std::pow(10.0, -k));
  }
  const PExponent p(a.p);
  const bool phi = a.which == "phi-inv";
  Table t{{"which", "p", "eps", "value", "asymptote", "ratio"}, {}};
  for (double e : eps) {
    const double value = phi ? specfun::phi_inv(e) : specfun::psi_p_inv(e, p);
    const double asym = phi ? specfun::phi_inv_asymptote(e) : specfun::psi_p_inv_asymptote(e, p);
    t.rows.push_back({a.which, phi ? Value() : Value(a.p), e, value, asym, asym / value});
  }
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds on the largest distance between volume-eps subsets of convex bodies",
               "isodist"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", ISODIST_VERSION);

  Output output;
  int status = kSuccess;
  std::vector<std::pair<CLI::App*, std::function<Table()>>> handlers;

  BoundsArgs bounds;
  auto* c_bounds = app.add_subcommand("bounds", "lower and upper distance bounds per family");
  c_bounds->add_option("--family", bounds.family, "ball, cube, simplex, lp or cross")->required();
  auto* eps_opt = c_bounds->add_option("--eps", bounds.eps, "volume of each set, in (0, 0.5)");
  auto* range_opt = c_bounds->add_option("--eps-range", bounds.eps_range, "lo:hi:step");
  eps_opt->excludes(range_opt);
  c_bounds->add_option("--n", bounds.n, "dimension, recorded in the report");
  c_bounds->add_option("--p", bounds.p, "exponent for lp, in [1, 2]");
  c_bounds->add_option("--constants", bounds.constants, "key=value file of constants");
  add_output_options(c_bounds, output);
  handlers.emplace_back(c_bounds, [&] { return run_bounds(bounds); });

  WitnessArgs wit;
  auto* c_wit = app.add_subcommand("witness", "explicit far-apart region pair");
  c_wit->add_option("--family", wit.family, "ball, cube, simplex, lp or cross");
  c_wit->add_option("--eps", wit.eps, "volume of each region, in (0, 0.5)");
  c_wit->add_option("--n", wit.n, "dimension")->required();
  c_wit->add_option("--p", wit.p, "exponent for lp, in [1, 2]");
  c_wit->add_option("--samples", wit.samples, "Monte Carlo volume check (0 = off)");
  c_wit->add_option("--seed", wit.seed, "random seed");
  add_output_options(c_wit, output);
  handlers.emplace_back(c_wit, [&] { return run_witness(wit); });

  LatticeArgs lat;
  auto* c_lat = app.add_subcommand("lattice", "discrete isoperimetry on [k]^n");
  c_lat->require_subcommand(1);
  auto add_budget = [&](CLI::App* c) {
    c->add_option("--budget", lat.budget, "largest allowed search space");
  };
  auto* c_verify = c_lat->add_subcommand("verify", "exhaustive extremal-pair check");
  c_verify->add_option("--k", lat.k, "side length");
  c_verify->add_option("--n", lat.n, "dimension");
  c_verify->add_option("--r", lat.r, "size of the first set");
  c_verify->add_option("--s", lat.s, "size of the second set");
  c_verify->add_option("--mode", lat.mode, "automatic, pairwise or farthest")
      ->check(CLI::IsMember({"automatic", "pairwise", "farthest"}));
  add_budget(c_verify);
  add_output_options(c_verify, output);
  handlers.emplace_back(c_verify, [&] {
    bool agree = false;
    Table t = run_lattice_verify(lat, agree);
    if (!agree) status = kCheckFailed;
    return t;
  });
  auto* c_scaling = c_lat->add_subcommand("scaling", "Manhattan distance of extremal slabs");
  c_scaling->add_option("--n", lat.n, "dimension");
  c_scaling->add_option("--m", lat.m, "lattice refinement");
  c_scaling->add_option("--eps", lat.eps, "volume fraction, in (0, 0.5)");
  add_budget(c_scaling);
  add_output_options(c_scaling, output);
  handlers.emplace_back(c_scaling, [&] { return run_lattice_scaling(lat); });

  SectionsArgs sec;
  auto* c_sec = app.add_subcommand("sections", "section areas and tail volumes of l_p balls");
  c_sec->add_option("--p", sec.p, "exponent in [1, 2]");
  c_sec->add_option("--n", sec.n_list, "dimensions, comma separated")->delimiter(',')->required();
  c_sec->add_option("--grid", sec.grid, "lo:hi:step");
  c_sec->add_flag("--curves", sec.curves, "one row per grid point instead of sup-gaps");
  add_output_options(c_sec, output);
  handlers.emplace_back(c_sec, [&] { return run_sections(sec); });

  CheckArgs chk;
  auto* c_chk = app.add_subcommand("check", "numeric verification suites");
  c_chk->require_subcommand(1);
  auto add_check = [&](const std::string& name, const std::string& help,
                       Table (*fn)(const CheckArgs&, bool&)) {
    auto* c = c_chk->add_subcommand(name, help);
    c->add_option("--n", chk.n, "dimension");
    c->add_option("--samples", chk.samples, "sample count");
    c->add_option("--seed", chk.seed, "random seed");
    add_output_options(c, output);
    handlers.emplace_back(c, [&, fn] {
      bool passed = false;
      Table t = fn(chk, passed);
      if (!passed) status = kCheckFailed;
      return t;
    });
  };
  add_check("sodin", "transfer-map Lipschitz, cut-off and exponential-tail lemmas",
            run_check_lemmas);
  add_check("transfer", "Gaussian to cube map: KS and Lipschitz", run_check_transfer);
  add_check("avgdist", "mean distance between uniform cube points", run_check_avgdist);

  AsymptArgs asy;
  auto* c_asy = app.add_subcommand("asympt", "ratio of the inverse to its asymptote");
  c_asy->add_option("--which", asy.which, "phi-inv or psi-inv")
      ->check(CLI::IsMember({"phi-inv", "psi-inv"}));
  c_asy->add_option("--eps", asy.eps, "values in (0, 0.5), comma separated")->delimiter(',');
  c_asy->add_option("--p", asy.p, "exponent for psi-inv");
  add_output_options(c_asy, output);
  handlers.emplace_back(c_asy, [&] { return run_asympt(asy); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    for (auto& [cmd, handler] : handlers) {
      if (!cmd->parsed()) continue;
      const Table t = handler();
      emit(t, output, *cmd, args, out);
      return status;
    }
    err << "error: no command selected\n";
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (search space " << format_double(e.search_space())
        << ")\n";
    return kBudgetExceeded;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace isodist::cli
