// Config ingestion, scenario drivers, and the deterministic writers. All
// floating-point output goes through fixed-precision scientific formatting
// so identical runs produce byte-identical files.

#include "curveflow/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"

namespace curveflow {

namespace {

const char* const kAcceptedKeys =
    "mode, n, dt, t_end, scheme, record_every, convexity_policy, forcing, initial, xi, "
    "grad_weight, pinning, residual_tol, max_iters, out_dir, formats, seed";

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty())
    throw ConfigError("key '" + key + "': expected a number, got '" + value + "'", key);
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty())
    throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + value + "'",
                      key);
  return static_cast<std::size_t>(v);
}

// fixed scientific formatting; digits = decimals after the leading digit
std::string fmt_sci(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

std::string fmt_json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt_sci(v, 16);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "mode") {
    const std::string m = lower(value);
    if (m == "evolve") cfg.mode = RunMode::evolve;
    else if (m == "steady") cfg.mode = RunMode::steady;
    else if (m == "analyze") cfg.mode = RunMode::analyze;
    else if (m == "render") cfg.mode = RunMode::render;
    else throw ConfigError("key 'mode': expected evolve|steady|analyze|render, got '" + value +
                           "'", key);
  } else if (key == "n") {
    cfg.n = parse_count(key, value);
  } else if (key == "dt") {
    cfg.flow.dt = parse_double(key, value);
    if (!(cfg.flow.dt > 0.0)) throw ConfigError("key 'dt': must be positive", key);
  } else if (key == "t_end") {
    cfg.flow.t_end = parse_double(key, value);
    if (cfg.flow.t_end < 0.0) throw ConfigError("key 't_end': must be >= 0", key);
  } else if (key == "scheme") {
    const std::string s = lower(value);
    if (s == "imex1") cfg.flow.scheme = Scheme::imex1;
    else if (s == "imex2") cfg.flow.scheme = Scheme::imex2;
    else throw ConfigError("key 'scheme': expected IMEX1|IMEX2, got '" + value + "'", key);
  } else if (key == "record_every") {
    cfg.flow.record_every = parse_count(key, value);
    if (cfg.flow.record_every < 1) throw ConfigError("key 'record_every': must be >= 1", key);
  } else if (key == "convexity_policy") {
    const std::string p = lower(value);
    if (p == "abort") cfg.flow.convexity_policy = ConvexityPolicy::abort;
    else if (p == "warn") cfg.flow.convexity_policy = ConvexityPolicy::warn;
    else throw ConfigError("key 'convexity_policy': expected abort|warn, got '" + value + "'",
                           key);
  } else if (key == "forcing") {
    try {
      cfg.forcing = parse_forcing(value);
      cfg.forcing_text = value;
    } catch (const ParseError& e) {
      throw ConfigError("key 'forcing': " + std::string(e.what()), key);
    }
  } else if (key == "initial") {
    cfg.initial = value;
  } else if (key == "xi") {
    cfg.energy.xi = parse_double(key, value);
    if (cfg.energy.xi < 0.0) throw ConfigError("key 'xi': must be >= 0", key);
  } else if (key == "grad_weight") {
    cfg.energy.grad_weight = parse_double(key, value);
    if (!(cfg.energy.grad_weight > 0.0))
      throw ConfigError("key 'grad_weight': must be positive", key);
  } else if (key == "pinning") {
    std::istringstream ss(value);
    std::string kind;
    ss >> kind;
    kind = lower(kind);
    double mean_value = 0.0;
    const bool has_value = static_cast<bool>(ss >> mean_value);
    if (kind == "fix_translation") {
      cfg.steady.pinning = Pinning::fix_translation;
      cfg.steady.fixed_mean.reset();
    } else if (kind == "fix_mean" || kind == "both") {
      cfg.steady.pinning = kind == "both" ? Pinning::both : Pinning::fix_mean;
      if (has_value)
        cfg.steady.fixed_mean = mean_value;
      else
        cfg.steady.fixed_mean.reset();  // keep the initial iterate's mean
    } else {
      throw ConfigError(
          "key 'pinning': expected fix_translation | fix_mean [value] | both [value], got '" +
              value + "'",
          key);
    }
  } else if (key == "residual_tol") {
    cfg.steady.residual_tol = parse_double(key, value);
    if (!(cfg.steady.residual_tol > 0.0))
      throw ConfigError("key 'residual_tol': must be positive", key);
  } else if (key == "max_iters") {
    cfg.steady.max_iters = parse_count(key, value);
    if (cfg.steady.max_iters < 1) throw ConfigError("key 'max_iters': must be >= 1", key);
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "formats") {
    std::vector<OutputFormat> formats;
    std::istringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string f = lower(trim(item));
      if (f == "csv") formats.push_back(OutputFormat::csv);
      else if (f == "json") formats.push_back(OutputFormat::json);
      else if (f == "svg") formats.push_back(OutputFormat::svg);
      else if (f.empty()) continue;
      else throw ConfigError("key 'formats': expected a subset of csv,json,svg, got '" + value +
                             "'", key);
    }
    cfg.formats = std::move(formats);
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_count(key, value));
  } else {
    throw ConfigError("unknown key '" + key + "'; accepted keys: " + kAcceptedKeys, key);
  }
}

bool is_builtin_initial(const std::string& descriptor) {
  std::istringstream ss(descriptor);
  std::string head;
  ss >> head;
  return head == "circle" || head == "perturbed_circle";
}

bool has_format(const RunConfig& cfg, OutputFormat f) {
  return std::find(cfg.formats.begin(), cfg.formats.end(), f) != cfg.formats.end();
}

std::string format_list(const RunConfig& cfg) {
  std::string out;
  for (const OutputFormat f : cfg.formats) {
    if (!out.empty()) out += ",";
    out += f == OutputFormat::csv ? "csv" : f == OutputFormat::json ? "json" : "svg";
  }
  return out;
}

std::string pinning_text(const SteadyOptions& opts) {
  std::string out = opts.pinning == Pinning::fix_translation ? "fix_translation"
                    : opts.pinning == Pinning::fix_mean      ? "fix_mean"
                                                             : "both";
  if (opts.pinning != Pinning::fix_translation && opts.fixed_mean)
    out += " " + fmt_sci(*opts.fixed_mean, 16);
  return out;
}

void echo_config(const RunConfig& cfg) {
  const char* mode = cfg.mode == RunMode::evolve    ? "evolve"
                     : cfg.mode == RunMode::steady  ? "steady"
                     : cfg.mode == RunMode::analyze ? "analyze"
                                                    : "render";
  std::cout << "config: mode = " << mode << "\n"
            << "config: n = " << cfg.n << "\n"
            << "config: dt = " << fmt_sci(cfg.flow.dt, 16) << "\n"
            << "config: t_end = " << fmt_sci(cfg.flow.t_end, 16) << "\n"
            << "config: scheme = " << (cfg.flow.scheme == Scheme::imex1 ? "IMEX1" : "IMEX2")
            << "\n"
            << "config: record_every = " << cfg.flow.record_every << "\n"
            << "config: convexity_policy = "
            << (cfg.flow.convexity_policy == ConvexityPolicy::abort ? "abort" : "warn") << "\n"
            << "config: forcing = " << cfg.forcing_text << "\n"
            << "config: initial = " << cfg.initial << "\n"
            << "config: xi = " << fmt_sci(cfg.energy.xi, 16) << "\n"
            << "config: grad_weight = " << fmt_sci(cfg.energy.grad_weight, 16) << "\n"
            << "config: pinning = " << pinning_text(cfg.steady) << "\n"
            << "config: residual_tol = " << fmt_sci(cfg.steady.residual_tol, 16) << "\n"
            << "config: max_iters = " << cfg.steady.max_iters << "\n"
            << "config: out_dir = " << cfg.out_dir << "\n"
            << "config: formats = " << format_list(cfg) << "\n"
            << "config: seed = " << cfg.seed << "\n";
}

SnapshotData snapshot_of(double t, const SupportField& S) {
  SnapshotData snap;
  snap.t = t;
  const auto theta = S.grid().theta();
  snap.theta.assign(theta.begin(), theta.end());
  snap.s = S.field.values;
  const PlaneCurve curve = curve_of(S);
  snap.x = curve.x;
  snap.y = curve.y;
  // reciprocal radius of curvature; may be non-finite for degenerate states,
  // which the writer maps to null
  const Field radius = curvature_radius(S);
  snap.kappa.resize(radius.size());
  kernels::reciprocal(snap.kappa, radius.values);
  return snap;
}

void write_outputs(const RunConfig& cfg, const std::string& dir,
                   const std::vector<DiagnosticsRecord>& records,
                   const std::vector<double>& times, const std::vector<SupportField>& states) {
  namespace fs = std::filesystem;
  if (has_format(cfg, OutputFormat::csv))
    write_series_csv((fs::path(dir) / "series.csv").string(), records);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (has_format(cfg, OutputFormat::json))
      write_snapshot_json((fs::path(dir) / ("snapshot_" + std::to_string(i) + ".json")).string(),
                          snapshot_of(times[i], states[i]));
    if (has_format(cfg, OutputFormat::svg))
      write_svg(curve_of(states[i]),
                (fs::path(dir) / ("curve_" + std::to_string(i) + ".svg")).string());
  }
}

int run_evolve(const RunConfig& cfg, const std::string& dir, const SupportField& S0) {
  // forcing-bound monitor: report the first time the admissibility bound
  // fails, without stopping the run
  std::optional<double> first_violation;
  std::vector<StepMonitor> monitors;
  monitors.push_back([&](const StepEvent& ev) {
    if (first_violation) return;
    try {
      if (!check_forcing_bound(cfg.forcing, ev.state).pass) first_violation = ev.t;
    } catch (const EvalError&) {
      first_violation = ev.t;
    }
  });

  FlowConfig flow = cfg.flow;
  flow.energy = cfg.energy;
  const Trajectory traj = evolve(S0, cfg.forcing, flow, monitors);

  write_outputs(cfg, dir, traj.records, traj.times, traj.states);

  if (first_violation)
    std::cout << "forcing bound first violated at t = " << fmt_sci(*first_violation, 9) << "\n";
  else
    std::cout << "forcing bound held at every step\n";

  switch (traj.termination) {
    case Termination::completed:
      std::cout << "completed: t = " << fmt_sci(traj.termination_time, 9) << ", "
                << traj.records.size() << " records\n";
      return 0;
    case Termination::convexity_lost:
      std::cerr << "terminated: convexity lost at t = " << fmt_sci(traj.termination_time, 9)
                << "\n";
      return 1;
    case Termination::blowup:
      std::cerr << "terminated: blowup at t = " << fmt_sci(traj.termination_time, 9) << "\n";
      return 1;
  }
  return 1;
}

int run_steady(const RunConfig& cfg, const std::string& dir, const SupportField& S0) {
  const SteadyResult res = solve_steady(S0, cfg.forcing, cfg.steady);

  const DiagnosticsRecord rec = make_record(0.0, res.S_inf, cfg.forcing, cfg.energy);
  write_outputs(cfg, dir, {rec}, {0.0}, {res.S_inf});

  const ModeSpectrum amps = mode_amplitudes(res.S_inf.field);
  double noncircularity = 0.0;
  for (std::size_t k = 2; k < amps.size(); ++k) noncircularity = std::max(noncircularity, amps[k]);

  std::cout << "steady: converged = " << (res.converged ? "true" : "false")
            << ", iterations = " << res.iterations
            << ", residual = " << fmt_sci(res.residual_norm, 9)
            << ", krylov_iters = " << res.total_krylov_iters << "\n";
  std::cout << "steady: convexity_margin = " << fmt_sci(res.convexity_margin, 9)
            << ", noncircularity (max k>=2 amplitude) = " << fmt_sci(noncircularity, 9) << "\n";
  if (res.linear_stagnation) std::cout << "steady: linear solver stagnated at least once\n";
  if (!res.converged) {
    std::cerr << "steady solve did not converge within " << cfg.steady.max_iters
              << " iterations\n";
    return 1;
  }
  return 0;
}

int run_analyze(const RunConfig& cfg, const std::string& dir, const SupportField& S0) {
  const DiagnosticsRecord rec = make_record(0.0, S0, cfg.forcing, cfg.energy);
  write_outputs(cfg, dir, {rec}, {0.0}, {S0});

  const MAClassification cls = classify_monge_ampere(S0, cfg.forcing);
  const char* verdict = cls.global == GlobalType::hyperbolic   ? "hyperbolic"
                        : cls.global == GlobalType::elliptic   ? "elliptic"
                        : cls.global == GlobalType::degenerate ? "degenerate"
                                                               : "mixed";
  std::cout << "analyze: type = " << verdict
            << ", min discriminant = " << fmt_sci(cls.min_discriminant, 9) << "\n";

  std::cout << "analyze: convexity_margin = " << fmt_sci(rec.convexity_margin, 9)
            << ", length = " << fmt_sci(rec.length, 9) << ", area = " << fmt_sci(rec.area, 9)
            << ", energy = " << fmt_sci(rec.energy, 9) << "\n";

  try {
    const BoundReport bound = check_forcing_bound(cfg.forcing, S0);
    std::cout << "analyze: forcing bound " << (bound.pass ? "holds" : "fails")
              << " (min F = " << fmt_sci(bound.min_forcing, 9)
              << ", min S^2-1-F = " << fmt_sci(bound.min_upper_margin, 9) << ")\n";
  } catch (const EvalError& e) {
    std::cout << "analyze: forcing bound not evaluable (" << e.what() << ")\n";
  }

  try {
    const SufficientConditionReport cond = convexity_sufficient_condition(S0, cfg.forcing);
    std::cout << "analyze: convexity sufficient condition "
              << (cond.holds_everywhere ? "holds everywhere" : "fails somewhere")
              << " (worst margin = " << fmt_sci(cond.worst_margin, 9) << ")\n";
  } catch (const UnsupportedDerivativeError&) {
    std::cout << "analyze: convexity sufficient condition unavailable (forcing has no "
                 "pointwise dF/dS)\n";
  } catch (const EvalError& e) {
    std::cout << "analyze: convexity sufficient condition not evaluable (" << e.what() << ")\n";
  }
  return 0;
}

int run_render(const std::string& dir, const SupportField& S0) {
  namespace fs = std::filesystem;
  write_svg(curve_of(S0), (fs::path(dir) / "curve_0.svg").string());
  std::cout << "rendered curve_0.svg (" << S0.size() << " points)\n";
  return 0;
}

}  // namespace

RunConfig build_config(const std::vector<std::pair<std::string, std::string>>& entries) {
  RunConfig cfg;
  cfg.forcing = parse_forcing(cfg.forcing_text);
  for (const auto& [key, value] : entries) apply_key(cfg, key, value);
  if (!is_builtin_initial(cfg.initial) && !std::filesystem::exists(cfg.initial))
    throw ConfigError("key 'initial': file '" + cfg.initial + "' does not exist", "initial");
  return cfg;
}

std::vector<std::pair<std::string, std::string>> read_config_entries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", "config");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" + text +
                            "'",
                        text);
    entries.emplace_back(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  return entries;
}

RunConfig load_config(const std::string& path) { return build_config(read_config_entries(path)); }

SupportField load_initial(const std::string& descriptor, std::size_t n) {
  std::istringstream ss(descriptor);
  std::string head;
  ss >> head;
  if (head == "circle") {
    double radius = 0.0;
    if (!(ss >> radius) || !(radius > 0.0))
      throw ConfigError("initial 'circle R' needs a positive radius", "initial");
    return circle(make_grid(n), radius);
  }
  if (head == "perturbed_circle") {
    double radius = 0.0, eps = 0.0;
    int k = 0;
    if (!(ss >> radius >> k >> eps) || !(radius > 0.0) || k < 0)
      throw ConfigError("initial 'perturbed_circle R k eps' needs R > 0 and k >= 0", "initial");
    return perturbed_circle(make_grid(n), radius, k, eps);
  }

  // file input: snapshot JSON or plain one-value-per-line samples
  if (descriptor.size() > 5 && descriptor.substr(descriptor.size() - 5) == ".json") {
    const SnapshotData snap = read_snapshot(descriptor);
    return SupportField(Field(make_grid(snap.s.size()), snap.s));
  }
  std::ifstream in(descriptor);
  if (!in) throw ConfigError("cannot open initial-condition file '" + descriptor + "'", "initial");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    values.push_back(parse_double("initial", text));
  }
  if (values.size() < 8 || values.size() % 2 != 0)
    throw ConfigError("initial-condition file must hold an even count (>= 8) of samples, got " +
                          std::to_string(values.size()),
                      "initial");
  ThetaGrid file_grid = make_grid(values.size());
  return SupportField(Field(std::move(file_grid), std::move(values)));
}

void write_series_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "t,energy,l2_norm,convexity_margin,hyperbolicity_margin,forcing_bound_ok,length,area,"
         "steady_residual\n";
  for (const DiagnosticsRecord& r : records) {
    out << fmt_sci(r.t, 16) << ',' << fmt_sci(r.energy, 16) << ',' << fmt_sci(r.l2_norm, 16)
        << ',' << fmt_sci(r.convexity_margin, 16) << ',' << fmt_sci(r.hyperbolicity_margin, 16)
        << ',' << (r.forcing_bound_ok ? 1 : 0) << ',' << fmt_sci(r.length, 16) << ','
        << fmt_sci(r.area, 16) << ',' << fmt_sci(r.steady_residual_norm, 16) << '\n';
  }
}

namespace {

void write_json_array(std::ofstream& out, const char* name, const std::vector<double>& values) {
  out << "  \"" << name << "\": [";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << fmt_json_number(values[i]);
  }
  out << "]";
}

}  // namespace

void write_snapshot_json(const std::string& path, const SnapshotData& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "{\n  \"t\": " << fmt_json_number(snap.t) << ",\n";
  write_json_array(out, "theta", snap.theta);
  out << ",\n";
  write_json_array(out, "S", snap.s);
  out << ",\n";
  write_json_array(out, "x", snap.x);
  out << ",\n";
  write_json_array(out, "y", snap.y);
  out << ",\n";
  write_json_array(out, "kappa", snap.kappa);
  out << "\n}\n";
}

SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open snapshot '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("snapshot '" + path + "' is not valid JSON: " + e.what());
  }
  SnapshotData snap;
  auto read_array = [&](const char* name, std::vector<double>& dst) {
    if (!j.contains(name) || !j[name].is_array())
      throw Error("snapshot '" + path + "' lacks array '" + name + "'");
    dst.clear();
    for (const auto& v : j[name]) dst.push_back(v.is_null() ? 0.0 : v.get<double>());
  };
  snap.t = j.value("t", 0.0);
  read_array("theta", snap.theta);
  read_array("S", snap.s);
  read_array("x", snap.x);
  read_array("y", snap.y);
  read_array("kappa", snap.kappa);
  if (snap.s.size() != snap.theta.size() || snap.x.size() != snap.theta.size() ||
      snap.y.size() != snap.theta.size() || snap.kappa.size() != snap.theta.size())
    throw Error("snapshot '" + path + "' arrays disagree in length");
  return snap;
}

void write_svg(const PlaneCurve& curve, const std::string& path) {
  if (curve.size() < 3) throw Error("write_svg: need at least 3 points");
  for (std::size_t i = 0; i < curve.size(); ++i)
    if (!std::isfinite(curve.x[i]) || !std::isfinite(curve.y[i]))
      throw Error("write_svg: curve has non-finite coordinates");

  // SVG y grows downward; flip so the curve renders with math orientation
  double min_x = curve.x[0], max_x = curve.x[0];
  double min_y = -curve.y[0], max_y = -curve.y[0];
  for (std::size_t i = 1; i < curve.size(); ++i) {
    min_x = std::min(min_x, curve.x[i]);
    max_x = std::max(max_x, curve.x[i]);
    min_y = std::min(min_y, -curve.y[i]);
    max_y = std::max(max_y, -curve.y[i]);
  }
  const double width = max_x - min_x;
  const double height = max_y - min_y;
  const double pad_x = 0.05 * width;
  const double pad_y = 0.05 * height;
  const double stroke = 0.01 * std::max(width, height);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt_sci(min_x - pad_x, 9)
      << " " << fmt_sci(min_y - pad_y, 9) << " " << fmt_sci(width + 2.0 * pad_x, 9) << " "
      << fmt_sci(height + 2.0 * pad_y, 9) << "\">\n";
  out << "  <path d=\"M " << fmt_sci(curve.x[0], 9) << " " << fmt_sci(-curve.y[0], 9);
  for (std::size_t i = 1; i < curve.size(); ++i)
    out << " L " << fmt_sci(curve.x[i], 9) << " " << fmt_sci(-curve.y[i], 9);
  out << " Z\" fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt_sci(stroke, 9) << "\"/>\n";
  out << "</svg>\n";
}

int run(const RunConfig& config) {
  RunConfig cfg = config;
  if (const char* env_out = std::getenv("CURVEFLOW_OUT"); env_out && *env_out)
    cfg.out_dir = env_out;

  echo_config(cfg);
  std::filesystem::create_directories(cfg.out_dir);

  try {
    const SupportField S0 = load_initial(cfg.initial, cfg.n);
    switch (cfg.mode) {
      case RunMode::evolve: return run_evolve(cfg, cfg.out_dir, S0);
      case RunMode::steady: return run_steady(cfg, cfg.out_dir, S0);
      case RunMode::analyze: return run_analyze(cfg, cfg.out_dir, S0);
      case RunMode::render: return run_render(cfg.out_dir, S0);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace curveflow
