#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsvd/cost_model.hpp"
#include "hsvd/svd_factor.hpp"

namespace hsvd {

struct GridPoint {
  Index block_rows = 0;  // d
  Index block_cols = 0;  // c
};

/// One grid entry of a benchmark run. Either `error` is set and the metrics
/// are meaningless, or `error` is empty and every base metric is filled;
/// the *_refined metrics are present when the run included refinement.
struct BenchEntry {
  Index block_rows = 0;
  Index block_cols = 0;
  std::string error;  // empty on success

  Index recovered_rank = 0;
  double wall_time_mat_s = 0.0;
  double wall_time_full_svd_s = 0.0;
  double speedup = 0.0;
  double rel_error = 0.0;
  std::optional<double> wall_time_mat_refined_s;
  std::optional<double> speedup_refined;
  std::optional<double> rel_error_refined;
  std::vector<double> sigma_head;  // first <= 64 singular values
  std::optional<CostEstimate> predicted;
};

struct BenchReport {
  Index rows = 0;
  Index cols = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  int repeats = 1;
  int kernel_threads = 1;
  std::vector<BenchEntry> entries;
};

/// Times the hierarchical pipeline (and optionally the refined pipeline)
/// against a full-SVD baseline for every grid point. Times are means over
/// `repeats` runs; the baseline is timed once per repeat and shared across
/// entries. Per-entry failures are recorded in the entry and the run
/// continues.
BenchReport run_benchmark(const DenseMatrix& x, const MatConfig& cfg,
                          const std::vector<GridPoint>& grid, int repeats,
                          bool with_refine = true);

/// Serializes a report to the published JSON schema
/// (docs/bench_report.schema.json).
std::string report_to_json(const BenchReport& report, int indent = 2);

/// Structural validation against the published schema. Returns one message
/// per violation; empty means valid.
std::vector<std::string> validate_report_json(const std::string& json_text);

}  // namespace hsvd
