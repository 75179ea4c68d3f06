#include "fiolab/cli_runner.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fiolab/applicator.hpp"
#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"
#include "fiolab/hyperbolic.hpp"
#include "fiolab/normest.hpp"
#include "fiolab/oscquad.hpp"
#include "fiolab/weights.hpp"

namespace fiolab {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kKinds[] = {"apply",      "kernel",     "sweep",        "ce2",
                        "weights",    "bmo",        "stationary",   "wave",
                        "commutator", "substitution"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

PhaseSpec phase_from_config(const ExperimentConfig& c, int n) {
  const std::string fam = c.get_str("phase", "linear");
  if (fam == "linear") return linear_phase(n);
  if (fam == "wave") return wave_phase(n, c.get_num("t", 1.0));
  if (fam == "shifted") return shifted_phase(n);
  if (fam == "diffeo_scale") return diffeo_scale_phase(n, c.get_num("scale", 2.0));
  if (fam == "diffeo_sine") return diffeo_sine_phase(n, c.get_num("amp", 0.25));
  if (fam == "rough_wave")
    return rough_wave_phase(n, c.get_str("rough_rule", "step"),
                            c.get_num("t0", 0.5), c.get_num("t1", 1.0));
  throw config_error("unknown phase family '" + fam + "'");
}

SymbolSpec symbol_from_config(const ExperimentConfig& c) {
  const double m = c.get_num("m", 0.0);
  const double rho = c.get_num("rho", 1.0);
  const double delta = c.get_num("delta", 0.0);
  if (rho < 0.0 || rho > 1.0) throw config_error("field 'rho' must lie in [0,1]");
  if (delta < 0.0 || delta > 1.0)
    throw config_error("field 'delta' must lie in [0,1]");
  const std::string fam = c.get_str("symbol", "bessel_power");
  if (fam == "bessel_power") return bessel_power_symbol(m, rho, delta);
  if (fam == "cutoff_times_power") return cutoff_times_power_symbol(m);
  if (fam == "x_modulated")
    return x_modulated_symbol(m, c.get_str("x_factor", "step"));
  throw config_error("unknown symbol family '" + fam + "'");
}

Weight weight_from_config(const ExperimentConfig& c) {
  const std::string fam = c.get_str("w", "constant");
  if (fam == "constant") return constant_weight();
  if (fam == "power") return power_weight(c.get_num("alpha", 0.0));
  if (fam == "truncated_power")
    return truncated_power_weight(c.get_num("b", 0.5));
  if (fam == "log") return log_weight();
  throw config_error("unknown weight family '" + fam + "'");
}

struct RunWriter {
  std::filesystem::path dir;
  ordered_json summary;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  explicit RunWriter(const ExperimentConfig& c) : dir(c.out_dir) {
    std::filesystem::create_directories(dir);
    summary["kind"] = c.kind;
    summary["seed"] = c.seed;
    ordered_json inputs;
    for (const auto& [k, v] : c.values) inputs[k] = v;
    summary["inputs"] = inputs;

    std::ofstream echo(dir / "config.echo");
    echo << "kind = " << c.kind << "\n";
    echo << "seed = " << c.seed << "\n";
    for (const auto& [k, v] : c.values) echo << k << " = " << v << "\n";
  }

  std::ofstream csv(const std::string& name) {
    return std::ofstream(dir / name, std::ios::binary);
  }

  void finish(int status) {
    summary["timings"]["total_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    summary["status"] = status;
    std::ofstream os(dir / "summary.json");
    os << summary.dump(2) << "\n";
  }
};

int run_apply(const ExperimentConfig& c, RunWriter& w) {
  const int n = c.get_int("n", 1);
  const Grid g = make_grid(n, c.get_int("N", 256), c.get_num("L", 16.0));
  const FioOperator op = make_fio(symbol_from_config(c), phase_from_config(c, n));

  // reference input: modulated gaussian from the seeded family
  TestFamilyConfig fc;
  fc.seed = c.seed;
  fc.gaussians = 1;
  fc.annular = 0;
  fc.indicators = 0;
  fc.include_spike = false;
  const auto fam = make_test_family(g, 2.0, constant_weight(), fc);
  const SampledField& u = fam.front().field;

  const SampledField v = apply_fio(op, u);
  auto os = w.csv("field.csv");
  write_field_csv(v, os);

  // identity diagnostic: exact when the operator is the inverse transform
  double max_err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    max_err = std::max(max_err, std::abs(v.values[i] - u.values[i]));
  w.summary["verdicts"]["max_identity_error"] = max_err;
  w.summary["verdicts"]["output_l2"] = v.l2_norm();
  w.summary["verdicts"]["input_l2"] = u.l2_norm();
  return 0;
}

int run_kernel(const ExperimentConfig& c, RunWriter& w) {
  const int n = c.get_int("n", 1);
  const Grid g = make_grid(n, c.get_int("N", 256), c.get_num("L", 16.0));
  const FioOperator op = make_fio(symbol_from_config(c), phase_from_config(c, n));
  Point x{};
  x[0] = c.get_num("x", 0.0);
  std::vector<Point> ys(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) ys[i] = g.point_at(i);
  const auto row = kernel_row(op, g, x, ys);
  auto os = w.csv("kernel.csv");
  os << "y,re,im\r\n";
  for (std::size_t i = 0; i < row.size(); ++i)
    os << fmt(ys[i][0]) << "," << fmt(row[i].real()) << "," << fmt(row[i].imag())
       << "\r\n";
  double maxabs = 0.0;
  for (const auto& v : row) maxabs = std::max(maxabs, std::abs(v));
  w.summary["verdicts"]["max_abs"] = maxabs;
  return 0;
}

int run_sweep(const ExperimentConfig& c, RunWriter& w) {
  const int n = c.get_int("n", 2);
  const double p = c.get_num("p", 1.1);
  const auto m_list = parse_list(c.get_str("m_list", "-0.659,0.5"));
  std::vector<int> N_list;
  for (double v : parse_list(c.get_str("N_list", "32,48,64")))
    N_list.push_back(static_cast<int>(v));
  TestFamilyConfig fc;
  fc.seed = c.seed;
  fc.f_mu = {0.8, 1.2};
  const GrowthTable t = threshold_sweep(phase_from_config(c, n), p, m_list, N_list,
                                        c.get_num("L", 8.0), fc);
  auto os = w.csv("growth.csv");
  os << "m,N,estimate,maximizer\r\n";
  for (const auto& r : t.rows)
    os << fmt(r.m) << "," << r.N << "," << fmt(r.estimate) << ","
       << r.maximizer_tag << "\r\n";
  for (const auto& v : t.verdicts) {
    ordered_json jv;
    jv["m"] = v.m;
    jv["total_ratio"] = v.total_ratio;
    jv["fitted_exponent"] = v.fitted_exponent;
    jv["verdict"] = v.verdict;
    w.summary["verdicts"]["m=" + fmt(v.m)] = jv;
  }
  return 0;
}

int run_ce2(const ExperimentConfig& c, RunWriter& w) {
  const Grid g = make_grid(1, c.get_int("N", 1024), c.get_num("L", 16.0));
  const Ce2Report r = ce2_profile(c.get_num("m", -0.75), c.get_num("mu", -0.25),
                                  c.get_num("b", 0.9), c.get_num("p", 2.0), g);
  auto os = w.csv("ce2_profile.csv");
  os << "x,profile,fitted_slope,claim_slope\r\n";
  for (std::size_t i = 0; i < r.xs.size(); ++i)
    os << fmt(r.xs[i]) << "," << fmt(r.profile[i]) << "," << fmt(r.fitted_slope)
       << "," << fmt(r.claim_slope) << "\r\n";
  w.summary["verdicts"]["fitted_slope"] = r.fitted_slope;
  w.summary["verdicts"]["fitted_slope_raw"] = r.fitted_slope_raw;
  w.summary["verdicts"]["claim_slope"] = r.claim_slope;
  w.summary["verdicts"]["f_norm"] = r.f_norm;
  w.summary["verdicts"]["tf_norm"] = r.tf_norm;
  w.summary["verdicts"]["f_finite_analytic"] = r.f_finite_analytic;
  w.summary["verdicts"]["tf_infinite_analytic"] = r.tf_infinite_analytic;
  if (r.closed_form_max_err >= 0.0)
    w.summary["verdicts"]["closed_form_max_err"] = r.closed_form_max_err;
  return 0;
}

int run_weights(const ExperimentConfig& c, RunWriter& w) {
  const Grid g = make_grid(c.get_int("n", 1), c.get_int("N", 1024),
                           c.get_num("L", 16.0));
  const double p = c.get_num("p", 2.0);
  if (!(p > 1.0)) throw config_error("field 'p' must exceed 1");
  const Weight wt = weight_from_config(c);
  const BallFamily fam = BallFamily::dyadic(g);
  const ApReport rep = ap_constant_report(wt, p, fam, g);
  auto os = w.csv("ap_trend.csv");
  os << "radius,value\r\n";
  for (const auto& e : rep.origin_trend)
    os << fmt(e.radius) << "," << fmt(e.value) << "\r\n";
  w.summary["verdicts"]["ap_constant"] = rep.constant;
  w.summary["verdicts"]["divergent_trend"] = rep.divergent_trend;
  if (wt.family == WeightFamily::power)
    w.summary["verdicts"]["analytic_in_class"] =
        power_weight_class(wt.exponent, p, g.dim);
  return 0;
}

int run_bmo(const ExperimentConfig& c, RunWriter& w) {
  const Grid g = make_grid(1, c.get_int("N", 1024), c.get_num("L", 16.0));
  const std::string fam = c.get_str("b", "log");
  std::function<double(const Point&)> b;
  bool singular = false;
  if (fam == "constant") {
    b = [](const Point&) { return 1.0; };
  } else if (fam == "linear") {
    b = [](const Point& x) { return x[0]; };
  } else if (fam == "log") {
    b = [](const Point& x) {
      const double r = std::abs(x[0]);
      return r < 1.0 / std::numbers::e ? std::log(1.0 / r) : 1.0;
    };
    singular = true;
  } else {
    throw config_error("unknown bmo function '" + fam + "'");
  }
  auto os = w.csv("bmo.csv");
  os << "radius,mean_oscillation\r\n";
  const BallFamily base = BallFamily::dyadic(g);
  double overall = 0.0;
  for (double r : base.radii) {
    BallFamily one;
    one.radii = {r};
    for (const Ball& ball : base.balls)
      if (ball.radius == r) one.balls.push_back(ball);
    const double v = bmo_norm(b, one, g, singular);
    overall = std::max(overall, v);
    os << fmt(r) << "," << fmt(v) << "\r\n";
  }
  w.summary["verdicts"]["bmo_norm"] = overall;
  return 0;
}

int run_stationary(const ExperimentConfig& c, RunWriter& w) {
  const int n = c.get_int("n", 1);
  std::vector<double> lambdas = parse_list(c.get_str("lambda_list", ""));
  if (lambdas.empty())
    for (double l = 8.0; l <= 512.0; l *= 2.0) lambdas.push_back(l);
  const double mu = c.get_num("mu", 0.0);
  const std::string phase = c.get_str("stationary_phase", "quadratic");
  StationaryDecayResult r;
  if (phase == "quadratic") {
    r = stationary_decay([](double t) { return 0.5 * t * t; },
                         [](double) { return 1.0; },
                         [](double t) { return std::exp(-0.5 * t * t); }, n,
                         lambdas, mu, false);
  } else if (phase == "cosine_lattice") {
    // saturates the support-inflated bound; its Hessian degenerates on rings,
    // so the precondition must be explicitly waived
    if (n != 1) throw config_error("cosine_lattice runs in n = 1");
    r = stationary_decay([](double t) { return 1.0 - std::cos(t); },
                         [](double t) { return std::cos(t); },
                         [](double t) { return unit_bump(t); }, n, lambdas, mu,
                         c.get_int("allow_degenerate", 0) != 0);
  } else {
    throw config_error("unknown stationary phase '" + phase + "'");
  }
  auto os = w.csv("stationary.csv");
  os << "lambda,max_abs\r\n";
  for (std::size_t i = 0; i < r.lambdas.size(); ++i)
    os << fmt(r.lambdas[i]) << "," << fmt(r.values[i]) << "\r\n";
  w.summary["verdicts"]["fitted_slope"] = r.fitted_slope;
  w.summary["verdicts"]["reference_slope"] = r.reference_slope;
  return 0;
}

int run_wave(const ExperimentConfig& c, RunWriter& w) {
  const int n = c.get_int("n", 1);
  const Grid g = make_grid(n, c.get_int("N", 256), c.get_num("L", 16.0));
  const double t = c.get_num("t", 1.0);
  if (std::abs(t) > c.get_num("t_max", 4.0))
    throw config_error("field 't' exceeds t_max");

  TestFamilyConfig fc;
  fc.seed = c.seed;
  fc.gaussians = 2;
  fc.annular = 0;
  fc.indicators = 0;
  fc.include_spike = false;
  const auto fam = make_test_family(g, 2.0, constant_weight(), fc);
  const SampledField& f0 = fam.front().field;
  SampledField f1(g, Side::physical);

  const SampledField u = cauchy_second_order({f0, f1, t});
  auto os = w.csv("snapshot.csv");
  write_field_csv(u, os);

  const SampledField hw = half_wave(f0, t);
  w.summary["verdicts"]["unitarity_error"] =
      std::abs(hw.l2_norm() - f0.l2_norm());
  const double e0 = wave_energy({f0, f1, 0.0});
  const double et = wave_energy({f0, f1, t});
  w.summary["verdicts"]["energy_drift"] = std::abs(et - e0) / e0;
  return 0;
}

int run_commutator(const ExperimentConfig& c, RunWriter& w) {
  const Grid g = make_grid(1, c.get_int("N", 512), c.get_num("L", 16.0));
  const double m = c.get_num("m", -1.1);
  const int k = c.get_int("k", 1);
  const FioOperator op = make_fio(bessel_power_symbol(m), wave_phase(1, 1.0));
  const auto b = truncated_log_function(g);
  TestFamilyConfig fc;
  fc.seed = c.seed;
  fc.gaussians = 2;
  fc.annular = 0;
  fc.indicators = 0;
  fc.include_spike = false;
  const auto fam = make_test_family(g, 2.0, constant_weight(), fc);
  const SampledField& u = fam.front().field;
  const SampledField cu = commutator_apply(b, op, u, k);
  w.summary["verdicts"]["commutator_l2"] = cu.l2_norm();
  w.summary["verdicts"]["input_l2"] = u.l2_norm();
  if (k == 1) {
    const SampledField direct = commutator_direct(b, op, u);
    w.summary["verdicts"]["binomial_vs_direct"] = relative_l2_error(cu, direct);
  }
  auto os = w.csv("commutator.csv");
  write_field_csv(cu, os);
  return 0;
}

int run_substitution(const ExperimentConfig& c, RunWriter& w) {
  const Grid g = make_grid(1, c.get_int("N", 1024), c.get_num("L", 16.0));
  const std::string rule = c.get_str("map", "scale");
  std::function<Point(const Point&)> t;
  double cc = c.get_num("c", 1.0);
  if (rule == "scale") {
    const double s = c.get_num("scale", 2.0);
    t = [s](const Point& x) { return Point{s * x[0]}; };
    if (!c.has("c")) cc = std::abs(s);
  } else if (rule == "sine") {
    t = [](const Point& x) { return Point{x[0] + 0.25 * std::sin(x[0])}; };
    if (!c.has("c")) cc = 0.75;
  } else if (rule == "identity") {
    t = [](const Point& x) { return x; };
  } else {
    throw config_error("unknown substitution map '" + rule + "'");
  }
  const SubstitutionReport r = substitution_check(t, cc, g);
  auto os = w.csv("substitution.csv");
  os << "test_index,formula_rel_error\r\n";
  for (std::size_t i = 0; i < r.formula_rel_errors.size(); ++i)
    os << i << "," << fmt(r.formula_rel_errors[i]) << "\r\n";
  w.summary["verdicts"]["max_density"] = r.max_density;
  w.summary["verdicts"]["density_bound"] = r.density_bound;
  w.summary["verdicts"]["min_expansion_ratio"] = r.min_expansion_ratio;
  return 0;
}

}  // namespace

double ExperimentConfig::get_num(const std::string& k, double fallback) const {
  auto it = values.find(k);
  if (it == values.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw config_error("field '" + k + "' is not a number: " + it->second);
  }
}

int ExperimentConfig::get_int(const std::string& k, int fallback) const {
  return static_cast<int>(get_num(k, fallback));
}

std::string ExperimentConfig::get_str(const std::string& k,
                                      const std::string& fallback) const {
  auto it = values.find(k);
  return it == values.end() ? fallback : it->second;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected 'key = value'");
    const std::string k = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (k == "kind")
      c.kind = v;
    else if (k == "seed")
      c.seed = std::stoull(v);
    else if (k == "out")
      c.out_dir = v;
    else if (k == "threads")
      c.threads = std::stoi(v);
    else
      c.values[k] = v;
  }
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config file " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str());
}

int run_experiment(ExperimentConfig config) {
  try {
    bool known = false;
    for (const char* k : kKinds) known = known || config.kind == k;
    if (!known) {
      std::string list;
      for (const char* k : kKinds) list += std::string(k) + " ";
      throw config_error("unknown experiment kind '" + config.kind +
                         "'; valid kinds: " + list);
    }
    if (config.threads > 0) omp_set_num_threads(config.threads);

    RunWriter w(config);
    int status = 0;
    if (config.kind == "apply") status = run_apply(config, w);
    else if (config.kind == "kernel") status = run_kernel(config, w);
    else if (config.kind == "sweep") status = run_sweep(config, w);
    else if (config.kind == "ce2") status = run_ce2(config, w);
    else if (config.kind == "weights") status = run_weights(config, w);
    else if (config.kind == "bmo") status = run_bmo(config, w);
    else if (config.kind == "stationary") status = run_stationary(config, w);
    else if (config.kind == "wave") status = run_wave(config, w);
    else if (config.kind == "commutator") status = run_commutator(config, w);
    else if (config.kind == "substitution") status = run_substitution(config, w);
    w.finish(status);
    return status;
  } catch (const config_error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const precondition_error& e) {
    std::fprintf(stderr, "numerical precondition failure: %s\n", e.what());
    return 3;
  }
}

}  // namespace fiolab
