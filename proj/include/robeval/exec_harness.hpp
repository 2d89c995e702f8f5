#pragma once
// Sandboxed execution of assembled programs (prompt + completion + tests)
// and matrix-level evaluation with a bounded worker pool.

#include <map>
#include <string>
#include <vector>

#include "robeval/types.hpp"

namespace robeval {

enum class VerdictStatus { pass, fail, timeout, setup_error };

struct Verdict {
  VerdictStatus status = VerdictStatus::fail;
  double wall_time = 0.0;  // seconds
  std::string stderr_excerpt;
};

struct ExecOptions {
  double timeout_secs = 10.0;
  int jobs = 1;
  // Cut each completion at the first top-level "def "/"class "/"if __name__"
  // line, mirroring stop-sequence handling of completion APIs.
  bool trim_stop_sequences = false;
  std::string interpreter = "python3";  // overridable via flag or env
  std::size_t memory_limit_bytes = 1ull << 31;  // 2 GiB address-space cap
};

// Runs prompt + completion + "\n" + test_source in a fresh temp dir.
Verdict evaluate_one(const std::string& prompt, const std::string& completion,
                     const std::string& test_source, const ExecOptions& opts = {});

// Applies the stop-sequence trim rule (exposed for tests).
std::string trim_completion(const std::string& completion);

// Completion lookup key: (task_id, variant_index).
using CompletionMap = std::map<std::pair<std::string, int>, std::vector<std::string>>;

// Evaluates every (task, variant, sample) cell. Coverage is validated before
// any execution; the result is independent of the parallelism degree.
// Throws ValidationError on coverage gaps and ExecEnvironmentError (below)
// when the interpreter is unusable.
struct ExecEnvironmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CorrectnessMatrix evaluate_matrix(const std::vector<Task>& tasks,
                                  const std::vector<PerturbedInstance>& instances,
                                  const CompletionMap& completions, int n,
                                  const ExecOptions& opts = {});

}  // namespace robeval
