#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "worldline/analytic.hpp"
#include "worldline/csv.hpp"
#include "worldline/errors.hpp"
#include "worldline/evolution.hpp"
#include "worldline/hamiltonians.hpp"
#include "worldline/vqe.hpp"

namespace worldline::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& message) { throw Error(ErrorCode::InvalidConfig, message); }

void require_object(const json& j, std::string_view where) {
  if (!j.is_object()) bad_config(fmt::format("'{}' must be a JSON object", where));
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  require_object(j, where);
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      bad_config(fmt::format("unknown key '{}' in {}", item.key(), where));
    }
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

// %.9f without a "-0.000000000"
std::string fixed9(double v) {
  std::string text = fmt::format("{:.9f}", v);
  if (text == "-0.000000000") text.erase(0, 1);
  return text;
}

double positive(double v, std::string_view what) {
  if (!(v > 0.0)) bad_config(fmt::format("{} must be positive", what));
  return v;
}

struct Context {
  const Options& options;
  json config;
  std::ostream& out;

  void summary(const std::string& line) const {
    if (!options.quiet) out << line << '\n';
  }

  std::string output_path(std::string_view command) const {
    if (options.out) return *options.out;
    if (config.contains("output")) return config.at("output").get<std::string>();
    return std::string(command) + ".csv";
  }
};

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) bad_config("cannot read config '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    bad_config("config '" + path + "' is not valid JSON: " + e.what());
  }
}

HamiltonianSpec hamiltonian_from(const Context& ctx) {
  if (!ctx.config.contains("hamiltonian")) bad_config("missing 'hamiltonian' section");
  json h = ctx.config.at("hamiltonian");
  require_object(h, "hamiltonian");
  if (ctx.options.variant) h["variant"] = *ctx.options.variant;
  HamiltonianSpec spec = spec_from_json(h);
  validate(spec);
  return spec;
}

std::string with_suffix(const std::string& path, std::string_view suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + std::string(suffix);
  return path.substr(0, dot) + std::string(suffix) + path.substr(dot);
}

int cmd_spectrum(const Context& ctx) {
  check_keys(ctx.config, {"hamiltonian", "output"}, "config");
  const auto h = build_hamiltonian(hamiltonian_from(ctx));
  const auto spectrum = sorted_spectrum(h);
  std::ostringstream csv_text;
  csv::write_spectrum(csv_text, spectrum);
  csv::write_file(ctx.output_path("spectrum"), csv_text.str());
  ctx.summary("lambda_min=" + fixed9(spectrum.front()));
  if (!h.hermitian) ctx.summary("note=non-Hermitian matrix, eigenvalues are real parts");
  return kOk;
}

AnsatzTemplate ansatz_from(const json& config) {
  AnsatzTemplate a;
  if (!config.contains("ansatz")) return a;
  const json& j = config.at("ansatz");
  check_keys(j, {"depth", "entangler"}, "ansatz");
  a.depth = get_or<std::size_t>(j, "depth", a.depth);
  const auto entangler = get_or<std::string>(j, "entangler", "full");
  if (entangler != "full") bad_config("ansatz.entangler must be \"full\"");
  return a;
}

OptimizerSettings optimizer_from(const Context& ctx) {
  OptimizerSettings o;
  if (ctx.config.contains("optimizer")) {
    const json& j = ctx.config.at("optimizer");
    check_keys(j, {"max_iter", "seed", "tolerance", "restarts", "gradient", "gradient_step", "init", "patience"},
               "optimizer");
    o.max_iter = get_or<std::size_t>(j, "max_iter", o.max_iter);
    o.seed = get_or<std::uint64_t>(j, "seed", o.seed);
    o.tolerance = positive(get_or<double>(j, "tolerance", o.tolerance), "optimizer.tolerance");
    o.restarts = get_or<std::size_t>(j, "restarts", o.restarts);
    o.gradient_step = positive(get_or<double>(j, "gradient_step", o.gradient_step), "optimizer.gradient_step");
    o.patience = get_or<std::size_t>(j, "patience", o.patience);
    const auto gradient = get_or<std::string>(j, "gradient", "central");
    if (gradient == "central") {
      o.gradient = GradientMethod::CentralDifference;
    } else if (gradient == "parameter-shift") {
      o.gradient = GradientMethod::ParameterShift;
    } else {
      bad_config("optimizer.gradient must be \"central\" or \"parameter-shift\"");
    }
    const auto init = get_or<std::string>(j, "init", "random");
    if (init == "random") {
      o.init = InitialParams::UniformRandom;
    } else if (init == "zeros") {
      o.init = InitialParams::Zeros;
    } else {
      bad_config("optimizer.init must be \"random\" or \"zeros\"");
    }
    if (o.max_iter == 0) bad_config("optimizer.max_iter must be positive");
  }
  if (ctx.options.seed) o.seed = *ctx.options.seed;
  return o;
}

int cmd_vqe(const Context& ctx) {
  check_keys(ctx.config, {"hamiltonian", "ansatz", "optimizer", "output"}, "config");
  const auto spec = hamiltonian_from(ctx);
  const auto ansatz = ansatz_from(ctx.config);
  const auto opt = optimizer_from(ctx);
  const auto h = build_hamiltonian(spec);
  const auto result = minimize(h, ansatz, opt);
  const double lambda = lowest_eigenvalue(h);

  std::ostringstream csv_text;
  csv::write_trace(csv_text, result.trace);
  csv::write_file(ctx.output_path("vqe"), csv_text.str());
  ctx.summary(fmt::format("energy={}, lambda_min={}, gap={}", fixed9(result.energy), fixed9(lambda),
                          fixed9(result.energy - lambda)));
  ctx.summary(fmt::format("iterations={}, evaluations={}, converged={}", result.trace.back().iteration,
                          result.evaluations, result.converged ? "true" : "false"));
  return kOk;
}

// Computational basis index of the state sitting at the coordinate origin.
std::size_t origin_index(const HamiltonianSpec& spec) {
  if (spec.kind == HamiltonianKind::LandauCartesian && spec.basis == BasisKind::Position) {
    const std::size_t o = origin_grid_index(spec.boson_trunc);
    return o * spec.boson_trunc + o;
  }
  return 0;
}

int cmd_eoh(const Context& ctx) {
  check_keys(ctx.config, {"hamiltonian", "evolution", "output"}, "config");
  const auto spec = hamiltonian_from(ctx);
  json ev = ctx.config.value("evolution", json::object());
  check_keys(ev, {"t_max", "t_points", "trotter_steps", "method", "initial", "finals"}, "evolution");
  const double t_max = get_or<double>(ev, "t_max", 1.0);
  const auto t_points = get_or<std::size_t>(ev, "t_points", 21);
  const auto steps = get_or<std::size_t>(ev, "trotter_steps", 100);
  const auto method = get_or<std::string>(ev, "method", "both");
  if (t_max < 0.0) bad_config("evolution.t_max must be non-negative");
  if (t_points < 1) bad_config("evolution.t_points must be at least 1");
  if (t_points == 1 && t_max != 0.0) bad_config("evolution.t_points = 1 requires t_max = 0");
  if (steps < 1) bad_config("evolution.trotter_steps must be at least 1");
  if (method != "exact" && method != "trotter" && method != "both") {
    bad_config("evolution.method must be \"exact\", \"trotter\" or \"both\"");
  }

  const auto h = build_hamiltonian(spec);
  if (!h.hermitian) throw Error(ErrorCode::NotVariational, "time evolution needs a Hermitian Hamiltonian; use the HermitianPart variant");
  const std::size_t dim = h.matrix.dim();
  const std::size_t initial = get_or<std::size_t>(ev, "initial", origin_index(spec));
  if (initial >= dim) bad_config(fmt::format("evolution.initial must be below {}", dim));

  std::vector<std::size_t> final_indices;
  if (!ev.contains("finals") || ev.at("finals") == "all") {
    for (std::size_t k = 0; k < dim; ++k) final_indices.push_back(k);
  } else {
    final_indices = ev.at("finals").get<std::vector<std::size_t>>();
    if (final_indices.empty()) bad_config("evolution.finals must not be empty");
    for (auto k : final_indices)
      if (k >= dim) bad_config(fmt::format("evolution.finals entries must be below {}", dim));
  }
  std::vector<StateVector> finals;
  std::vector<std::string> labels;
  for (auto k : final_indices) {
    finals.push_back(StateVector::basis_state(h.qubits, k));
    labels.push_back(fmt::format("k{}", k));
  }
  std::vector<double> t_grid(t_points);
  for (std::size_t i = 0; i < t_points; ++i) {
    t_grid[i] = t_points == 1 ? 0.0 : t_max * static_cast<double>(i) / static_cast<double>(t_points - 1);
  }

  const StateVector psi_i = StateVector::basis_state(h.qubits, initial);
  const std::string initial_label = fmt::format("k{}", initial);
  const std::string path = ctx.output_path("eoh");
  auto run_one = [&](EvolutionMethod m, const std::string& file) {
    auto series = transition_series(h.matrix, psi_i, finals, labels, t_grid, m, initial_label);
    std::ostringstream csv_text;
    csv::write_transition_series(csv_text, series);
    csv::write_file(file, csv_text.str());
    return series;
  };

  ctx.summary(fmt::format("initial={}, finals={}, t_points={}", initial_label, finals.size(), t_points));
  if (method == "exact") {
    run_one(EvolutionMethod::exact(), path);
  } else if (method == "trotter") {
    run_one(EvolutionMethod::trotter(steps), path);
  } else {
    const auto exact = run_one(EvolutionMethod::exact(), with_suffix(path, "_exact"));
    const auto trot = run_one(EvolutionMethod::trotter(steps), with_suffix(path, "_trotter"));
    double deviation = 0.0;
    for (std::size_t f = 0; f < finals.size(); ++f)
      for (std::size_t i = 0; i < t_points; ++i)
        deviation = std::max(deviation, std::abs(std::norm(exact.amplitudes[f][i]) - std::norm(trot.amplitudes[f][i])));
    ctx.summary(fmt::format("trotter_steps={}, max_prob_deviation={:.3e}", steps, deviation));
  }
  return kOk;
}

int cmd_scatter(const Context& ctx) {
  check_keys(ctx.config, {"scatter", "output"}, "config");
  json sc = ctx.config.value("scatter", json::object());
  check_keys(sc, {"qubits", "p1", "p3", "p2_scan"}, "scatter");
  const auto qubits = get_or<std::size_t>(sc, "qubits", 4);
  if (qubits < 1 || qubits > 12) bad_config("scatter.qubits must be in [1, 12]");
  const std::size_t n = std::size_t{1} << qubits;
  const auto p1 = get_or<std::size_t>(sc, "p1", 0);
  const auto p3 = get_or<std::size_t>(sc, "p3", 0);
  if (p1 >= n || p3 >= n) bad_config(fmt::format("scatter.p1 and scatter.p3 must be below {}", n));

  std::vector<ScanPoint> scan;
  json grid = sc.value("p2_scan", json::object());
  check_keys(grid, {"subdivisions", "min", "max", "points"}, "scatter.p2_scan");
  if (grid.contains("min") || grid.contains("max") || grid.contains("points")) {
    if (grid.contains("subdivisions")) bad_config("scatter.p2_scan takes either subdivisions or min/max/points");
    const double lo = grid.at("min").get<double>();
    const double hi = grid.at("max").get<double>();
    const auto points = grid.at("points").get<std::size_t>();
    if (!(hi > lo) || points < 2) bad_config("scatter.p2_scan needs max > min and points >= 2");
    scan = vertex_scan(p1, p3, n, lo, hi, points);
  } else {
    const auto sub = get_or<std::size_t>(grid, "subdivisions", 16);
    if (sub < 1) bad_config("scatter.p2_scan.subdivisions must be positive");
    scan = vertex_scan_period(p1, p3, n, sub);
  }
  std::ostringstream csv_text;
  csv::write_scan(csv_text, scan);
  csv::write_file(ctx.output_path("scatter"), csv_text.str());

  const auto best = std::max_element(scan.begin(), scan.end(),
                                     [](const ScanPoint& a, const ScanPoint& b) { return a.abs_amplitude < b.abs_amplitude; });
  const double kinematic = kinematic_momentum(p1, p3, n);
  ctx.summary(fmt::format("argmax_p2={:.9f}, abs_amplitude={:.9f}", best->p2, best->abs_amplitude));
  ctx.summary(fmt::format("kinematic_p2={:.9f}, wrapped={:.9f}, period={:.9f}", kinematic, wrap_momentum(kinematic, n),
                          momentum_period(n)));
  return kOk;
}

int cmd_wuyang(const Context& ctx) {
  check_keys(ctx.config, {"wuyang", "output"}, "config");
  json wy = ctx.config.value("wuyang", json::object());
  check_keys(wy, {"r_start", "r_end", "steps", "start"}, "wuyang");
  const double r0 = get_or<double>(wy, "r_start", 0.05);
  const double r1 = get_or<double>(wy, "r_end", 0.1);
  const auto steps = get_or<std::size_t>(wy, "steps", 40);
  double g0 = analytic::wu_yang_series_small(r0);
  double gp0 = analytic::wu_yang_series_small_derivative(r0);
  if (wy.contains("start")) {
    const json& start = wy.at("start");
    if (start.is_string()) {
      const auto s = start.get<std::string>();
      if (s == "fixed-point") {
        g0 = 1.0;
        gp0 = 0.0;
      } else if (s != "series") {
        bad_config("wuyang.start must be \"series\", \"fixed-point\" or {\"g\", \"gprime\"}");
      }
    } else {
      check_keys(start, {"g", "gprime"}, "wuyang.start");
      g0 = start.at("g").get<double>();
      gp0 = start.at("gprime").get<double>();
    }
  }
  const auto coarse = analytic::wu_yang_solve(r0, r1, steps, g0, gp0);
  const auto fine = analytic::wu_yang_solve(r0, r1, 2 * steps, g0, gp0);
  double error = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) error = std::max(error, std::abs(coarse[i].g - fine[2 * i].g));
  error *= 16.0 / 15.0;

  std::ostringstream csv_text;
  csv::write_wu_yang(csv_text, coarse);
  csv::write_file(ctx.output_path("wuyang"), csv_text.str());
  const auto& end = coarse.back();
  ctx.summary(fmt::format("r_end={:.9f}, g={:.12f}, gprime={:.12f}", end.r, end.g, end.gprime));
  ctx.summary(fmt::format("series_small_diff={:.3e}, max_error_estimate={:.3e}",
                          std::abs(end.g - analytic::wu_yang_series_small(end.r)), error));
  return kOk;
}

int cmd_variants(const Context& ctx) {
  check_keys(ctx.config, {"variants", "output"}, "config");
  json v = ctx.config.value("variants", json::object());
  check_keys(v, {"g_values", "boson_trunc", "floor"}, "variants");
  const auto g_values = get_or<std::vector<double>>(v, "g_values", {2.0, 0.2});
  const auto n = get_or<std::size_t>(v, "boson_trunc", 4);
  const double floor = positive(get_or<double>(v, "floor", kDefaultSpectralFloor), "variants.floor");
  if (g_values.empty()) bad_config("variants.g_values must not be empty");
  const auto report = variant_selection_report(g_values, n, floor);

  std::ostringstream csv_text;
  csv_text << "variant,g_m,lambda_min,hermitian,reference,deviation\n";
  for (const auto& row : report.rows) {
    csv_text << to_string(row.variant) << ',' << csv::format_number(row.g_m) << ',' << csv::format_number(row.lambda_min)
             << ',' << (row.hermitian ? 1 : 0) << ',' << (row.reference ? csv::format_number(*row.reference) : "")
             << ',' << (row.deviation ? csv::format_number(*row.deviation) : "") << '\n';
  }
  csv::write_file(ctx.output_path("variants"), csv_text.str());
  std::string matching;
  for (const auto& m : report.matching) matching += (matching.empty() ? "" : ";") + to_string(m);
  ctx.summary(fmt::format("matching={}", matching.empty() ? "none" : matching));
  ctx.summary(fmt::format("closest={}, max_deviation={:.6f}", to_string(report.closest), report.closest_max_deviation));
  return kOk;
}

}  // namespace

int run(std::string_view command, const Options& options, std::ostream& out, std::ostream& err) {
  try {
    Context ctx{options, load_config(options.config_path), out};
    require_object(ctx.config, "config");
    if (command == "spectrum") return cmd_spectrum(ctx);
    if (command == "vqe") return cmd_vqe(ctx);
    if (command == "eoh") return cmd_eoh(ctx);
    if (command == "scatter") return cmd_scatter(ctx);
    if (command == "wuyang") return cmd_wuyang(ctx);
    if (command == "variants") return cmd_variants(ctx);
    err << "error: unknown command '" << command << "'\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e.code()) ? kConfigError : kNumericalError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: InvalidConfig: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace worldline::cli
