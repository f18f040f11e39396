#include "qclab/harness.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qclab/dioph.hpp"
#include "qclab/errors.hpp"
#include "qclab/experiments.hpp"
#include "qclab/flag.hpp"
#include "qclab/gateset.hpp"
#include "qclab/metric.hpp"
#include "qclab/rng.hpp"
#include "qclab/search.hpp"
#include "qclab/solver.hpp"
#include "qclab/u1.hpp"

namespace qclab::harness {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// --- config plumbing -------------------------------------------------------

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

void fill_default(json& params, const char* key, json value) {
  if (!params.contains(key)) params[key] = std::move(value);
}

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

long long as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return v.get<long long>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> as_double_list(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) throw ConfigError("'" + key + "' must be a nonempty array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_double(e, key));
  return out;
}

// q is a number >= 1 or the string "inf".
double parse_q(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError("'q' must be a number >= 1 or \"inf\"");
  }
  double q = as_double(v, "q");
  if (!(q >= 1.0)) throw ConfigError("'q' must be a number >= 1 or \"inf\"");
  return q;
}

// {"pattern": "all-to-all" | "ring"} or {"strings": ["Y", "ZZ", ...]}.
Distribution parse_distribution(int n_qubits, const json& spec) {
  if (!spec.is_object()) throw ConfigError("'easy' must be an object");
  check_keys(spec, {"pattern", "strings"}, "easy");
  if (spec.contains("pattern") == spec.contains("strings"))
    throw ConfigError("'easy' needs exactly one of 'pattern' or 'strings'");
  if (spec.contains("pattern")) {
    std::string p = as_string(spec["pattern"], "easy.pattern");
    if (p == "all-to-all") return build_distribution(n_qubits, DistributionPattern::kAllToAll);
    if (p == "ring") return build_distribution(n_qubits, DistributionPattern::kRing);
    throw ConfigError("easy.pattern must be 'all-to-all' or 'ring'");
  }
  std::vector<PauliString> strings;
  for (const auto& s : spec["strings"])
    strings.push_back(PauliString::from_letters(as_string(s, "easy.strings")));
  return explicit_distribution(n_qubits, std::move(strings));
}

PauliString parse_direction(int n_qubits, const json& v) {
  std::string s = as_string(v, "direction");
  PauliString p = PauliString::from_letters(s);
  if (p.n_qubits() != n_qubits)
    throw ConfigError("'direction' has " + std::to_string(p.n_qubits()) +
                      " sites, expected " + std::to_string(n_qubits));
  if (p.is_identity()) throw ConfigError("'direction' must not be the identity");
  return p;
}

SolverConfig parse_solver(const json& params, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.segments = static_cast<int>(as_int(params["segments"], "segments"));
  cfg.multistarts = static_cast<int>(as_int(params["multistarts"], "multistarts"));
  cfg.max_iterations = static_cast<int>(as_int(params["max_iterations"], "max_iterations"));
  cfg.penalty_stages = static_cast<int>(as_int(params["penalty_stages"], "penalty_stages"));
  cfg.endpoint_tol = as_double(params["endpoint_tol"], "endpoint_tol");
  cfg.init_sigma = as_double(params["init_sigma"], "init_sigma");
  cfg.seed = seed;
  if (cfg.segments < 2 || cfg.multistarts < 1 || cfg.max_iterations < 1 ||
      cfg.penalty_stages < 1 || cfg.endpoint_tol <= 0 || cfg.init_sigma <= 0)
    throw ConfigError("solver parameters out of range");
  return cfg;
}

void fill_solver_defaults(json& params) {
  fill_default(params, "segments", 16);
  fill_default(params, "multistarts", 8);
  fill_default(params, "max_iterations", 400);
  fill_default(params, "penalty_stages", 14);
  fill_default(params, "endpoint_tol", 1e-6);
  fill_default(params, "init_sigma", 1.0);
}

std::vector<double> log_grid(double first, double last, int n) {
  std::vector<double> g;
  double la = std::log10(first), lb = std::log10(last);
  for (int k = 0; k < n; ++k)
    g.push_back(std::pow(10.0, la + (lb - la) * k / (n - 1)));
  return g;
}

// --- output assembly --------------------------------------------------------

struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;

  void add(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
};

class Csv {
 public:
  explicit Csv(std::string_view header) { buf_.append(header).append("\n"); }

  Csv& cell(double x) { return raw(fmt_double(x)); }
  Csv& cell(long long x) { return raw(std::to_string(x)); }
  Csv& cell(int x) { return raw(std::to_string(x)); }
  Csv& cell(bool b) { return raw(b ? "1" : "0"); }
  Csv& cell(std::string_view s) { return raw(s); }
  Csv& blank() { return raw(""); }

  void end_row() {
    buf_.push_back('\n');
    first_ = true;
  }

  // The trailing comment ties the file to the run that produced it.
  std::string finish(const std::string& config_hash) {
    buf_.append("# config ").append(config_hash).append("\n");
    return std::move(buf_);
  }

 private:
  Csv& raw(std::string_view s) {
    if (!first_) buf_.push_back(',');
    first_ = false;
    buf_.append(s);
    return *this;
  }

  std::string buf_;
  bool first_ = true;
};

std::string dump_json(json j, const std::string& config_hash) {
  j["config_hash"] = config_hash;
  return j.dump(2) + "\n";
}

std::uint64_t mix_seed(std::uint64_t seed, double salt) {
  return seed ^ std::bit_cast<std::uint64_t>(salt);
}

// --- experiments ------------------------------------------------------------

void normalize_dioph(json& p) {
  check_keys(p, {"cos_num", "cos_den", "l_max", "threads"}, "params");
  fill_default(p, "cos_num", 1);
  fill_default(p, "cos_den", 3);
  fill_default(p, "l_max", 10);
  fill_default(p, "threads", 0);
}

void run_dioph(const json& p, std::uint64_t, const std::string& hash, Outputs& out) {
  GateSet a = build_su2_gateset(as_int(p["cos_num"], "cos_num"), as_int(p["cos_den"], "cos_den"));
  DiophantineReport rep = diophantine_scan(a, static_cast<int>(as_int(p["l_max"], "l_max")),
                                           static_cast<int>(as_int(p["threads"], "threads")));
  Csv csv("l,min_gap,floor");
  for (std::size_t i = 0; i < rep.lengths.size(); ++i) {
    csv.cell(rep.lengths[i]).cell(rep.min_gaps[i]);
    csv.cell(std::pow(rep.fitted_d, -rep.lengths[i]) / 10.0);
    csv.end_row();
  }
  out.add("dioph.csv", csv.finish(hash));
  out.add("dioph_fit.json", dump_json({{"fitted_d", rep.fitted_d},
                                       {"intercept", rep.intercept},
                                       {"fit_residual", rep.fit_residual},
                                       {"floor_ok", rep.floor_ok}},
                                      hash));
}

void normalize_free(json& p) {
  check_keys(p, {"cos_num", "cos_den", "max_cost", "tol", "max_entries", "threads"}, "params");
  fill_default(p, "cos_num", 1);
  fill_default(p, "cos_den", 3);
  fill_default(p, "max_cost", 8);
  fill_default(p, "tol", 1e-6);
  fill_default(p, "max_entries", static_cast<long long>(kDefaultEnumBudget));
  fill_default(p, "threads", 0);
}

void run_free(const json& p, std::uint64_t, const std::string& hash, Outputs& out) {
  GateSet a = build_su2_gateset(as_int(p["cos_num"], "cos_num"), as_int(p["cos_den"], "cos_den"));
  FreeGroupReport rep = free_group_check(
      a, static_cast<int>(as_int(p["max_cost"], "max_cost")), as_double(p["tol"], "tol"),
      static_cast<std::size_t>(as_int(p["max_entries"], "max_entries")),
      static_cast<int>(as_int(p["threads"], "threads")));
  Csv csv("l,count,expected");
  for (std::size_t l = 0; l < rep.shell_counts.size(); ++l) {
    csv.cell(static_cast<long long>(l)).cell(rep.shell_counts[l]).cell(rep.expected_counts[l]);
    csv.end_row();
  }
  out.add("free_shells.csv", csv.finish(hash));
  json collisions = json::array();
  for (const auto& c : rep.collisions)
    collisions.push_back({{"first", c.first.str(a)}, {"second", c.second.str(a)},
                          {"dist", c.dist}});
  out.add("free_report.json",
          dump_json({{"is_free", rep.is_free},
                     {"n_collisions", collisions.size()},
                     {"min_checked_dist", rep.min_checked_dist},
                     {"collisions", std::move(collisions)}},
                    hash));
}

void normalize_cayley(json& p) {
  check_keys(p, {"r_max", "n_generators", "nh_exponent"}, "params");
  fill_default(p, "r_max", 10);
  fill_default(p, "n_generators", 2);
  fill_default(p, "nh_exponent", 4);
}

void run_cayley(const json& p, std::uint64_t, const std::string& hash, Outputs& out) {
  auto rows = cayley_growth(static_cast<int>(as_int(p["r_max"], "r_max")),
                            static_cast<int>(as_int(p["n_generators"], "n_generators")));
  long long e = as_int(p["nh_exponent"], "nh_exponent");
  Csv csv("r,shell,ball,ball_ratio");
  Csv cmp("r,ball,r_power");
  for (const auto& row : rows) {
    csv.cell(row.r).cell(row.shell).cell(row.ball).cell(row.ball_ratio);
    csv.end_row();
    cmp.cell(row.r).cell(row.ball).cell(std::pow(static_cast<double>(row.r), static_cast<double>(e)));
    cmp.end_row();
  }
  out.add("cayley.csv", csv.finish(hash));
  out.add("growth_compare.csv", cmp.finish(hash));
}

void normalize_u1(json& p) {
  check_keys(p, {"phi", "alpha", "eps_grid", "n_max"}, "params");
  fill_default(p, "phi", 1.0);
  // Golden-ratio rotation by default: alpha/2pi = (sqrt(5)-1)/2.
  fill_default(p, "alpha", kPi * (std::sqrt(5.0) - 1.0));
  if (!p.contains("eps_grid")) {
    json g = json::array();
    for (int k = 2; k <= 10; ++k) g.push_back(std::pow(10.0, -0.5 * k));
    p["eps_grid"] = std::move(g);
  }
  fill_default(p, "n_max", 2000000);
}

void run_u1(const json& p, std::uint64_t, const std::string& hash, Outputs& out) {
  double phi = as_double(p["phi"], "phi");
  double alpha = as_double(p["alpha"], "alpha");
  U1Scan scan = u1_scaling_scan(phi, alpha, as_double_list(p["eps_grid"], "eps_grid"),
                                as_int(p["n_max"], "n_max"));
  Csv csv("epsilon,n,complexity,reference_line");
  for (std::size_t i = 0; i < scan.eps.size(); ++i) {
    csv.cell(scan.eps[i]);
    if (scan.minimizer[i]) csv.cell(*scan.minimizer[i]); else csv.blank();
    if (scan.complexity[i]) csv.cell(*scan.complexity[i]); else csv.blank();
    csv.cell(scan.reference_line[i]);
    csv.end_row();
  }
  out.add("u1_scan.csv", csv.finish(hash));
  ContinuedFraction cf = continued_fraction(alpha / (2.0 * kPi));
  json conv = json::array();
  for (const auto& c : cf.convergents) conv.push_back({c.p, c.q});
  out.add("u1_fit.json",
          dump_json({{"slope_vs_logeps", scan.slope_vs_logeps},
                     {"slope_loglog", scan.slope_loglog},
                     {"fitted_k", scan.fitted_k},
                     {"fitted_tau", scan.fitted_tau},
                     {"alpha_over_2pi_convergents", std::move(conv)},
                     {"cf_truncated", cf.truncated}},
                    hash));
}

void normalize_scaling(json& p) {
  check_keys(p, {"cos_num", "cos_den", "max_cost", "eps_grid", "target", "dioph_l_max",
                 "threads"},
             "params");
  fill_default(p, "cos_num", 1);
  fill_default(p, "cos_den", 3);
  fill_default(p, "max_cost", 14);
  // Cost-14 balls land within ~0.02 of a generic SU(2) point, so the grid
  // stays above that scale; deeper eps need exponentially longer words.
  fill_default(p, "eps_grid", json::array({1e-1, 4e-2, 1.6e-2}));
  fill_default(p, "target", json{{"mode", "random_algebraic"}, {"max_den", 20}});
  fill_default(p, "dioph_l_max", 8);
  fill_default(p, "threads", 0);
  const json& t = p["target"];
  if (!t.is_object() || !t.contains("mode")) throw ConfigError("'target' needs a 'mode'");
  std::string mode = as_string(t["mode"], "target.mode");
  if (mode == "random_algebraic") {
    check_keys(t, {"mode", "max_den"}, "target");
    fill_default(p["target"], "max_den", 20);
  } else if (mode == "word") {
    check_keys(t, {"mode", "letters"}, "target");
    if (!t.contains("letters")) throw ConfigError("target mode 'word' needs 'letters'");
  } else if (mode == "matrix") {
    check_keys(t, {"mode", "entries"}, "target");
    if (!t.contains("entries")) throw ConfigError("target mode 'matrix' needs 'entries'");
  } else {
    throw ConfigError("target.mode must be 'random_algebraic', 'word', or 'matrix'");
  }
}

Mat haar_su2(Rng& rng) {
  Mat g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      g(i, j) = std::complex<double>(rng.next_gauss(), rng.next_gauss());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    std::complex<double> d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  std::complex<double> det = q.determinant();
  q /= std::sqrt(det);
  return q;
}

Mat parse_scaling_target(const json& t, const GateSet& a, std::uint64_t seed, json& echo) {
  std::string mode = as_string(t["mode"], "target.mode");
  if (mode == "random_algebraic") {
    Rng rng(seed);
    Mat u = rationalize_su2(haar_su2(rng), as_int(t["max_den"], "target.max_den"));
    json entries = json::array();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) entries.push_back({u(i, j).real(), u(i, j).imag()});
    echo = {{"mode", mode}, {"entries", std::move(entries)}};
    return u;
  }
  if (mode == "word") {
    Word w;
    for (const auto& f : t["letters"]) {
      if (!f.is_array() || f.size() != 2)
        throw ConfigError("target.letters entries must be [label, power]");
      std::string label = as_string(f[0], "target.letters label");
      long long power = as_int(f[1], "target.letters power");
      int gate = -1;
      for (int g = 0; g < a.size(); ++g)
        if (a.gates[static_cast<std::size_t>(g)].label == label) gate = g;
      if (gate < 0) throw ConfigError("unknown gate label '" + label + "'");
      if (power == 0) throw ConfigError("target.letters powers must be nonzero");
      for (long long k = 0; k < std::abs(power); ++k) w.push_letter(gate, power > 0 ? 1 : -1);
    }
    echo = {{"mode", mode}, {"word", w.to_json(a)}};
    return w.realize(a);
  }
  const json& entries = t["entries"];
  if (!entries.is_array() || entries.size() != 4)
    throw ConfigError("target.entries must be 4 [re, im] pairs, row-major");
  Mat u(2, 2);
  for (int k = 0; k < 4; ++k) {
    const json& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2) throw ConfigError("target.entries must be [re, im] pairs");
    u(k / 2, k % 2) = std::complex<double>(as_double(e[0], "entries"), as_double(e[1], "entries"));
  }
  if (!is_special_unitary(u, 1e-9)) throw ConfigError("target matrix is not special unitary");
  echo = {{"mode", mode}, {"entries", entries}};
  return u;
}

void run_scaling(const json& p, std::uint64_t seed, const std::string& hash, Outputs& out) {
  GateSet a = build_su2_gateset(as_int(p["cos_num"], "cos_num"), as_int(p["cos_den"], "cos_den"));
  int threads = static_cast<int>(as_int(p["threads"], "threads"));
  json target_echo;
  Mat u = parse_scaling_target(p["target"], a, seed, target_echo);
  DiophantineReport dioph =
      diophantine_scan(a, static_cast<int>(as_int(p["dioph_l_max"], "dioph_l_max")), threads);
  double coeff = 1.0 / std::log(dioph.fitted_d);
  ScalingScan scan = complexity_scaling_scan(a, u, as_double_list(p["eps_grid"], "eps_grid"),
                                             static_cast<int>(as_int(p["max_cost"], "max_cost")),
                                             coeff, threads);
  Csv csv("epsilon,complexity,lower_bound_line");
  for (std::size_t i = 0; i < scan.eps.size(); ++i) {
    csv.cell(scan.eps[i]);
    if (scan.complexity[i]) csv.cell(static_cast<long long>(*scan.complexity[i])); else csv.blank();
    csv.cell(scan.lower_bound_coeff * std::log(1.0 / scan.eps[i]));
    csv.end_row();
  }
  out.add("scan.csv", csv.finish(hash));
  out.add("scan_fit.json", dump_json({{"slope", scan.slope},
                                      {"intercept", scan.intercept},
                                      {"lower_bound_coeff", scan.lower_bound_coeff},
                                      {"fitted_d", dioph.fitted_d},
                                      {"target", std::move(target_echo)}},
                                     hash));
}

void normalize_flag(json& p) {
  check_keys(p, {"n_qubits", "pattern", "strings"}, "params");
  fill_default(p, "n_qubits", 1);
  fill_default(p, "pattern", "explicit");
  std::string pat = as_string(p["pattern"], "pattern");
  if (pat == "explicit") {
    fill_default(p, "strings", json::array({"Y", "Z"}));
  } else if (pat != "all-to-all" && pat != "ring") {
    throw ConfigError("pattern must be 'all-to-all', 'ring', or 'explicit'");
  } else if (p.contains("strings")) {
    throw ConfigError("'strings' only applies to the explicit pattern");
  }
}

void run_flag(const json& p, std::uint64_t, const std::string& hash, Outputs& out) {
  int n = static_cast<int>(as_int(p["n_qubits"], "n_qubits"));
  std::string pat = as_string(p["pattern"], "pattern");
  Distribution d;
  if (pat == "all-to-all") {
    d = build_distribution(n, DistributionPattern::kAllToAll);
  } else if (pat == "ring") {
    d = build_distribution(n, DistributionPattern::kRing);
  } else {
    std::vector<PauliString> strings;
    for (const auto& s : p["strings"])
      strings.push_back(PauliString::from_letters(as_string(s, "strings")));
    d = explicit_distribution(n, std::move(strings));
  }
  Flag f = grow_flag(d);
  Csv csv("level,size");
  for (std::size_t k = 0; k < f.level_sizes.size(); ++k) {
    csv.cell(static_cast<long long>(k + 1)).cell(f.level_sizes[k]);
    csv.end_row();
  }
  out.add("flag_levels.csv", csv.finish(hash));
  out.add("flag.json", dump_json(f.summary(), hash));
}

void normalize_geodesic(json& p) {
  check_keys(p, {"n_qubits", "q", "easy", "direction", "deltas", "segments", "multistarts",
                 "max_iterations", "penalty_stages", "endpoint_tol", "init_sigma"},
             "params");
  fill_default(p, "n_qubits", 1);
  fill_default(p, "q", 1.0);
  fill_default(p, "easy", json{{"pattern", "all-to-all"}});
  fill_default(p, "direction", "X");
  fill_default(p, "deltas", json::array({0.5}));
  fill_solver_defaults(p);
}

void run_geodesic(const json& p, std::uint64_t seed, const std::string& hash, Outputs& out) {
  int n = static_cast<int>(as_int(p["n_qubits"], "n_qubits"));
  double q = parse_q(p["q"]);
  PenaltyMetric m = PenaltyMetric::make(n, q, parse_distribution(n, p["easy"]));
  PauliString dir = parse_direction(n, p["direction"]);
  Mat start = Mat::Identity(1 << n, 1 << n);
  Csv csv("q,delta,distance,energy,endpoint_error,spread,converged,biinvariant_reference");
  for (double delta : as_double_list(p["deltas"], "deltas")) {
    Mat target = mat_exp(dir.dense(), delta);
    SolverConfig cfg = parse_solver(p, mix_seed(seed, delta));
    DistanceEstimate est = solve_bvp(start, target, m, cfg);
    csv.cell(q).cell(delta).cell(est.value).cell(est.energy).cell(est.endpoint_error);
    csv.cell(est.multistart_spread).cell(est.converged);
    csv.cell(biinvariant_distance(start, target));
    csv.end_row();
  }
  out.add("geodesic.csv", csv.finish(hash));
}

void normalize_holder(json& p) {
  check_keys(p, {"n_qubits", "q", "easy", "direction", "deltas", "segments", "multistarts",
                 "max_iterations", "penalty_stages", "endpoint_tol", "init_sigma"},
             "params");
  fill_default(p, "n_qubits", 1);
  fill_default(p, "q", "inf");
  fill_default(p, "easy", json{{"strings", json::array({"Y", "Z"})}});
  fill_default(p, "direction", "X");
  if (!p.contains("deltas")) {
    json g = json::array();
    for (double d : log_grid(1e-1, 1e-3, 8)) g.push_back(d);
    p["deltas"] = std::move(g);
  }
  fill_solver_defaults(p);
}

void run_holder(const json& p, std::uint64_t seed, const std::string& hash, Outputs& out) {
  int n = static_cast<int>(as_int(p["n_qubits"], "n_qubits"));
  PenaltyMetric m = PenaltyMetric::make(n, parse_q(p["q"]), parse_distribution(n, p["easy"]));
  PauliString dir = parse_direction(n, p["direction"]);
  SolverConfig cfg = parse_solver(p, seed);
  HolderResult res = holder_experiment(m, dir, as_double_list(p["deltas"], "deltas"), cfg);
  Csv csv("delta,distance,endpoint_error,spread,converged");
  for (const auto& pt : res.points) {
    csv.cell(pt.delta).cell(pt.distance).cell(pt.endpoint_error).cell(pt.spread);
    csv.cell(pt.converged);
    csv.end_row();
  }
  out.add("holder.csv", csv.finish(hash));
  out.add("holder_fit.json", dump_json({{"slope", res.slope},
                                        {"intercept", res.intercept},
                                        {"slope_stderr", res.slope_stderr},
                                        {"n_converged", res.n_converged}},
                                       hash));
}

void normalize_cutloc(json& p) {
  check_keys(p, {"qs", "segments", "multistarts", "max_iterations", "penalty_stages",
                 "endpoint_tol", "init_sigma", "delta_floor_scale", "delta_cap",
                 "bisection_steps", "ratio_threshold"},
             "params");
  fill_default(p, "qs", json::array({10.0, 100.0, 1000.0, 10000.0}));
  fill_solver_defaults(p);
  fill_default(p, "delta_floor_scale", 1.0);
  fill_default(p, "delta_cap", 2.8);
  fill_default(p, "bisection_steps", 12);
  fill_default(p, "ratio_threshold", 0.5);
}

void run_cutloc(const json& p, std::uint64_t seed, const std::string& hash, Outputs& out) {
  std::vector<double> qs = as_double_list(p["qs"], "qs");
  SolverConfig cfg = parse_solver(p, seed);
  CutlocusOptions opts;
  opts.delta_floor_scale = as_double(p["delta_floor_scale"], "delta_floor_scale");
  opts.delta_cap = as_double(p["delta_cap"], "delta_cap");
  opts.bisection_steps = static_cast<int>(as_int(p["bisection_steps"], "bisection_steps"));
  opts.ratio_threshold = as_double(p["ratio_threshold"], "ratio_threshold");
  CutlocusResult res = cutlocus_experiment(qs, cfg, opts);
  Csv csv("q,delta_star,crossover_distance,bracketed");
  for (const auto& pt : res.points) {
    csv.cell(pt.q).cell(pt.delta_star).cell(pt.crossover_distance).cell(pt.bracketed);
    csv.end_row();
  }
  out.add("cutloc.csv", csv.finish(hash));
  Csv samples("q,delta,ratio");
  for (std::size_t i = 0; i < res.scans.size() && i < qs.size(); ++i)
    for (const auto& [delta, ratio] : res.scans[i]) {
      samples.cell(qs[i]).cell(delta).cell(ratio);
      samples.end_row();
    }
  out.add("cutloc_samples.csv", samples.finish(hash));
  int bracketed = 0;
  for (const auto& pt : res.points) bracketed += pt.bracketed ? 1 : 0;
  out.add("cutloc_fit.json", dump_json({{"slope", res.slope},
                                        {"intercept", res.intercept},
                                        {"n_bracketed", bracketed}},
                                       hash));
}

// --- dispatch ----------------------------------------------------------------

struct Entry {
  const char* name;
  void (*normalize)(json&);
  void (*run)(const json&, std::uint64_t, const std::string&, Outputs&);
  bool needs_seed;  // stochastic experiments must be pinned explicitly
};

constexpr Entry kTable[] = {
    {"dioph-scan", normalize_dioph, run_dioph, false},
    {"free-check", normalize_free, run_free, false},
    {"cayley", normalize_cayley, run_cayley, false},
    {"u1-scan", normalize_u1, run_u1, false},
    {"complexity-scan", normalize_scaling, run_scaling, true},
    {"flag", normalize_flag, run_flag, false},
    {"geodesic", normalize_geodesic, run_geodesic, true},
    {"holder", normalize_holder, run_holder, true},
    {"cutloc", normalize_cutloc, run_cutloc, true},
};

std::string error_name(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const NoConvergenceError*>(&e)) return "NoConvergenceError";
  if (dynamic_cast<const InsufficientDataError*>(&e)) return "InsufficientDataError";
  if (dynamic_cast<const FitDegenerateError*>(&e)) return "FitDegenerateError";
  if (dynamic_cast<const BracketError*>(&e)) return "BracketError";
  if (dynamic_cast<const BudgetExceededError*>(&e)) return "BudgetExceededError";
  if (dynamic_cast<const BranchCutError*>(&e)) return "BranchCutError";
  if (dynamic_cast<const InvalidAngleError*>(&e)) return "InvalidAngleError";
  if (dynamic_cast<const DimensionCapError*>(&e)) return "DimensionCapError";
  if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const IndexError*>(&e)) return "IndexError";
  if (dynamic_cast<const HorizontalityViolationError*>(&e)) return "HorizontalityViolationError";
  if (dynamic_cast<const NotGeneratingError*>(&e)) return "NotGeneratingError";
  return "Error";
}

void append_manifest(const std::filesystem::path& out_dir, const json& line) {
  std::ofstream f(out_dir / "manifest.jsonl", std::ios::app);
  if (!f) throw ConfigError("cannot open manifest in " + out_dir.string());
  f << line.dump() << "\n";
}

}  // namespace

HarnessResult run_experiment(json config, const std::filesystem::path& out_dir) {
  HarnessResult result;
  auto t0 = std::chrono::steady_clock::now();
  std::string experiment;
  json manifest_outputs = json::object();
  try {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    check_keys(config, {"experiment", "seed", "params"}, "config");
    if (!config.contains("experiment"))
      throw ConfigError("config needs an 'experiment' name");
    experiment = as_string(config["experiment"], "experiment");
    const Entry* entry = nullptr;
    for (const Entry& e : kTable)
      if (experiment == e.name) entry = &e;
    if (!entry) throw ConfigError("unknown experiment '" + experiment + "'");

    if (entry->needs_seed && !config.contains("seed"))
      throw ConfigError("experiment '" + experiment + "' needs an explicit 'seed'");
    fill_default(config, "seed", 1);
    std::uint64_t seed = static_cast<std::uint64_t>(as_int(config["seed"], "seed"));
    if (!config.contains("params")) config["params"] = json::object();
    if (!config["params"].is_object()) throw ConfigError("'params' must be an object");
    entry->normalize(config["params"]);

    result.config_hash = hash_hex(fnv1a(config.dump()));
    Outputs out;
    out.add("config.json", config.dump(2) + "\n");
    entry->run(config["params"], seed, result.config_hash, out);

    std::filesystem::create_directories(out_dir);
    for (const auto& [name, content] : out.files) {
      std::ofstream f(out_dir / name, std::ios::binary);
      if (!f) throw ConfigError("cannot write " + (out_dir / name).string());
      f << content;
      std::string h = hash_hex(fnv1a(content));
      result.output_hashes[name] = h;
      manifest_outputs[name] = h;
    }
  } catch (const Error& e) {
    result.status = error_name(e);
    result.message = e.what();
    result.exit_code = result.status == "ConfigError" ? 2 : 3;
  } catch (const json::exception& e) {
    result.status = "ConfigError";
    result.message = e.what();
    result.exit_code = 2;
  }

  auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  json line = {{"experiment", experiment},
               {"config_hash", result.config_hash},
               {"status", result.status},
               {"exit_code", result.exit_code},
               {"wall_ms", wall_ms},
               {"outputs", std::move(manifest_outputs)}};
  if (!result.message.empty()) line["error"] = result.message;
  try {
    std::filesystem::create_directories(out_dir);
    append_manifest(out_dir, line);
  } catch (const Error& e) {
    if (result.exit_code == 0) {
      result.status = "ConfigError";
      result.message = e.what();
      result.exit_code = 2;
    }
  }
  return result;
}

}  // namespace qclab::harness
