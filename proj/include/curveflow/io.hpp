#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "curveflow/diagnostics.hpp"
#include "curveflow/evolution.hpp"
#include "curveflow/steady.hpp"

namespace curveflow {

enum class RunMode { evolve, steady, analyze, render };
enum class OutputFormat { csv, json, svg };

// Validated run description. Built from a flat key=value config file and/or
// CLI flag overrides; defaults are applied and echoed at run time.
// Accepted keys: mode, n, dt, t_end, scheme, record_every, convexity_policy,
// forcing, initial, xi, grad_weight, pinning, residual_tol, max_iters,
// out_dir, formats, seed.
struct RunConfig {
  RunMode mode = RunMode::evolve;
  std::size_t n = 256;
  std::string initial = "circle 1";
  std::string forcing_text = "0";
  ForcingSpec forcing;  // parsed form of forcing_text

  FlowConfig flow;        // dt, t_end, scheme, record_every, convexity_policy
  EnergyParams energy;    // xi, grad_weight (also copied into flow.energy)
  SteadyOptions steady;   // pinning, residual_tol, max_iters

  std::string out_dir = "out";
  std::vector<OutputFormat> formats = {OutputFormat::csv, OutputFormat::json};
  std::uint64_t seed = 0;  // reserved, unused by the core
};

/// Build a config from ordered key=value entries (later entries override
/// earlier ones). Throws ConfigError naming the offending key.
RunConfig build_config(const std::vector<std::pair<std::string, std::string>>& entries);

/// Parse a flat key=value file ('#' starts a comment) into ordered entries.
std::vector<std::pair<std::string, std::string>> read_config_entries(const std::string& path);

/// Read a flat key=value file and build the config.
RunConfig load_config(const std::string& path);

/// Execute the configured scenario and write outputs under out_dir (or
/// $CURVEFLOW_OUT when set). Returns the process exit status: 0 on
/// completed/converged, nonzero otherwise.
int run(const RunConfig& config);

// Stored snapshot of one recorded state.
struct SnapshotData {
  double t = 0.0;
  std::vector<double> theta, s, x, y, kappa;
};

/// Deterministic snapshot JSON (scientific notation, 17 significant digits;
/// non-finite entries become null).
void write_snapshot_json(const std::string& path, const SnapshotData& snap);
SnapshotData read_snapshot(const std::string& path);

/// series.csv with the fixed column set, one row per record.
void write_series_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records);

/// Single closed path, viewBox enclosing all points with a 5% margin,
/// 9-digit scientific coordinates; byte-stable for identical curves.
void write_svg(const PlaneCurve& curve, const std::string& path);

/// Resolve an initial-condition descriptor: "circle R",
/// "perturbed_circle R k eps", or a path to a snapshot JSON / plain
/// support-sample file (one value per line). File inputs determine the grid
/// size themselves; builtins sample onto a grid of n points.
SupportField load_initial(const std::string& descriptor, std::size_t n);

}  // namespace curveflow
