#pragma once
// Worst-case robustness metrics over correctness matrices: pass@k, robust
// pass/drop/relative, and pooled category aggregation.

#include <optional>
#include <vector>

#include "robeval/types.hpp"

namespace robeval {

// 1 - C(n-c,k)/C(n,k); computed through exact integer binomials and one
// rational-to-double conversion, so the result is the correctly rounded
// value of the underlying rational.
double pass_at_k(int n, int c, int k);

// Same quantity through a separate floating reduction (verification path).
double pass_at_k_exact(int n, int c, int k);

// Optional task filter: indices into m.tasks() (applicability exclusions).
using TaskFilter = const std::vector<std::size_t>*;

// pass@k of the nominal variant (variant 0).
double nominal_pass(const CorrectnessMatrix& m, int k, TaskFilter include = nullptr);

// Robust pass: a sample counts only when correct on all variant prefixes
// 1..s (clamped to the matrix's s).
double robust_pass(const CorrectnessMatrix& m, int s, int k, TaskFilter include = nullptr);

// (pass - rp) / pass; undefined (nullopt) when pass == 0.
std::optional<double> robust_drop(double pass_k, double rp_k);

// Robust relative: per task rc- = #{samples correct nominally but broken by
// some variant}, rc+ = #{samples incorrect nominally but fixed by some
// variant}; mean of [2 - C(n-rc-,k)/C(n,k) - C(n-rc+,k)/C(n,k)].
double robust_relative(const CorrectnessMatrix& m, int s, int k, TaskFilter include = nullptr);

struct CategoryMetrics {
  double nominal = 0.0;
  double rp = 0.0;
  std::optional<double> rd;
  double rr = 0.0;
  std::size_t n_tasks = 0;
};

// Pooled worst case over every transform in the category: a sample counts
// only when correct on all variants of ALL member matrices. Matrices must
// share task list and n; `include` filters tasks after reconciliation.
CategoryMetrics category_worst(const std::vector<const CorrectnessMatrix*>& matrices, int s,
                               int k, TaskFilter include = nullptr);

}  // namespace robeval
