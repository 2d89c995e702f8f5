#pragma once
// Report assembly: per-transform rows plus per-category worst-case rows,
// rendered as CSV or a human-readable summary.

#include <optional>
#include <string>
#include <vector>

#include "robeval/metrics.hpp"
#include "robeval/types.hpp"

namespace robeval {

struct ReportRow {
  std::string transform;  // "*" for category aggregate rows
  std::string category;
  int k = 1;
  int s = 1;
  double nominal_pass = 0.0;
  double rp = 0.0;
  std::optional<double> rd;  // undefined when nominal pass@k == 0
  double rr = 0.0;
  std::size_t n_tasks = 0;
  std::size_t n_excluded = 0;
  bool degraded = false;
};

// One evaluated transform: its matrix plus applicability/degradation info
// distilled from the instance records.
struct TransformRun {
  TransformSpec spec;
  CorrectnessMatrix matrix;
  std::vector<std::size_t> included;  // task indices with all variants applicable
  std::size_t excluded = 0;
  bool degraded = false;
};

TransformRun make_run(const TransformSpec& spec, CorrectnessMatrix matrix,
                      const std::vector<PerturbedInstance>& instances);

// Per-transform rows in input order, then one aggregate row per category
// present (task sets reconciled by intersection of inclusions).
std::vector<ReportRow> build_report(const std::vector<TransformRun>& runs, int k, int s);

std::string render_csv(const std::vector<ReportRow>& rows);
std::string render_summary(const std::vector<ReportRow>& rows);

}  // namespace robeval
