#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "valuegrad/core.hpp"

namespace valuegrad {

enum class Inertia { Both, On, Off };

struct ExperimentConfig {
  int N = 50;
  std::vector<int> P_list{10, 30, 50, 70, 90};
  std::vector<int> problems{1, 2, 3, 4};
  double lambda = 2.0;
  double gamma = 0.1;
  double delta = 0.1;
  int iterations = 250;
  std::uint64_t seed = 0;
  Inertia inertia = Inertia::Both;
  double cond_ratio = 10.0;
  std::string output_dir = "out";
  /// Budget of the high-accuracy dual and primal solves used as ground truth.
  int truth_iterations = 10000;
  /// Max-abs agreement required between the ground-truth gradient and the
  /// central-difference oracle.
  double truth_tolerance = 1e-4;
  /// Record wall-clock nanoseconds per estimator; off keeps the CSV
  /// byte-identical across runs.
  bool timing = false;
  /// Worker threads for independent grid cells; 0 picks the hardware count.
  int threads = 0;
};

/// Applies `key = value` lines (with `#` comments) onto cfg. Throws
/// InvalidInput on unknown keys or malformed values.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);
/// Applies a single key/value pair using the same keys as the config file.
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

struct ErrorRecord {
  std::string problem;
  int P = 0;
  std::string solver;
  std::string estimator;
  int iteration = 0;
  double error = 0.0;
  std::int64_t wall_ns = 0;
};

bool record_less(const ErrorRecord& a, const ErrorRecord& b);

/// Seed of the data for one P value; every problem at that P shares A and u.
std::uint64_t cell_seed(std::uint64_t seed, int P);

struct CellSummary {
  int problem = 0;
  int P = 0;
  bool ok = true;
  std::string diagnostic;
  /// max |truth - FD| (0 for the closed-form problem).
  double truth_fd_discrepancy = 0.0;
  /// "solver/estimator" -> error at the final iteration.
  std::map<std::string, double> final_errors;
};

struct CellResult {
  CellSummary summary;
  std::vector<ErrorRecord> records;
};

CellResult run_cell(const ExperimentConfig& cfg, int problem, int P);

struct GridResult {
  std::vector<ErrorRecord> records;  // sorted
  std::vector<CellSummary> cells;    // in (problem, P) order
};

GridResult run_grid(const ExperimentConfig& cfg);

void print_summary(const GridResult& result, std::ostream& out);

/// CSV with header problem,P,solver,estimator,iteration,error,wall_ns; LF line
/// endings; shortest round-trip decimals; rows sorted.
std::string csv_string(std::vector<ErrorRecord> records);
void emit_csv(const std::vector<ErrorRecord>& records, const std::filesystem::path& path);
std::vector<ErrorRecord> parse_csv(const std::string& text);
std::vector<ErrorRecord> read_csv(const std::filesystem::path& path);

/// Errors below this value are drawn at the floor.
inline constexpr double kPlotFloor = 1e-16;

/// One SVG document per (problem, P) cell, keyed by file name.
std::map<std::string, std::string> render_plots(const std::vector<ErrorRecord>& records);
std::vector<std::filesystem::path> emit_plots(const std::vector<ErrorRecord>& records,
                                              const std::filesystem::path& dir);

/// Command-line entry point. Exit codes: 0 success, 1 verification failure,
/// 2 bad arguments.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace valuegrad
