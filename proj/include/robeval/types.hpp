#pragma once
// Shared domain types. All are immutable value objects after construction
// and safe to share across threads.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace robeval {

using json = nlohmann::json;

// Raised for malformed inputs (bad files, bad flags, broken preconditions).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a transform finds no construct to rewrite; the task is
// excluded from that transform's metric pools.
struct NoApplicableSite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Half-open byte range [start, end) into some source text.
struct ByteRange {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool empty() const { return start == end; }
  bool operator==(const ByteRange&) const = default;
};

enum class Family { docstring, func_name, syntax, format };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// One benchmark problem: prompt, canonical solution, unit tests, entry point.
struct Task {
  std::string task_id;
  std::string prompt;
  std::string canonical_solution;
  std::string test_source;
  std::string entry_point;
  std::string language = "python";

  bool operator==(const Task&) const = default;
};

// Structured view of a prompt used by the transform modules. Spans index
// into full_text; reassembling them reproduces full_text byte-exactly.
struct PromptDocument {
  std::string full_text;
  std::optional<ByteRange> docstring_span;  // content only, quotes excluded
  ByteRange signature_span;                 // the def header line(s)
  std::optional<ByteRange> partial_code_span;
  std::set<std::string> blacklist;
};

// Identifies one of the 28 catalog transformations.
struct TransformSpec {
  Family family = Family::docstring;
  std::string name;
  std::map<std::string, double> params;
  bool deterministic = false;

  bool operator==(const TransformSpec&) const = default;
};

// One (task, transformation, variant) with the rewritten prompt and seed
// provenance. variant_index 0 is reserved for the nominal prompt.
struct PerturbedInstance {
  std::string task_id;
  TransformSpec transform;
  int variant_index = 0;
  std::uint64_t seed = 0;
  std::string perturbed_prompt;
  bool changed = false;
  // Set when the transform had no site to rewrite on this task; such
  // instances carry the nominal prompt and are excluded from metrics.
  bool applicable = true;
  // Set when a provider fell back to its deterministic stand-in.
  bool degraded = false;
  // Function-rename family only: the rewritten entry point and tests.
  std::optional<std::string> new_entry_point;
  std::optional<std::string> new_test_source;
};

// Boolean outcomes indexed by (task, variant 0..s, sample 1..n).
// Variant 0 holds the nominal verdicts.
class CorrectnessMatrix {
 public:
  CorrectnessMatrix() = default;
  CorrectnessMatrix(std::vector<std::string> tasks, int s, int n);

  int s() const { return s_; }
  int n() const { return n_; }
  const std::vector<std::string>& tasks() const { return tasks_; }
  std::size_t task_count() const { return tasks_.size(); }

  bool get(std::size_t task, int variant, int sample) const;
  void set(std::size_t task, int variant, int sample, bool correct);
  bool is_set(std::size_t task, int variant, int sample) const;
  bool fully_populated() const;

  std::size_t task_index(const std::string& task_id) const;

  bool operator==(const CorrectnessMatrix&) const = default;

 private:
  std::size_t flat(std::size_t task, int variant, int sample) const;

  std::vector<std::string> tasks_;
  int s_ = 0;
  int n_ = 0;
  std::vector<std::uint8_t> cells_;   // 0 / 1
  std::vector<std::uint8_t> filled_;  // population tracking
};

// JSON record encoding (one object per line on disk).
json to_json(const Task& t);
Task task_from_json(const json& j);

json to_json(const TransformSpec& s);
TransformSpec transform_spec_from_json(const json& j);

json to_json(const PerturbedInstance& pi);
PerturbedInstance instance_from_json(const json& j);

json to_json(const CorrectnessMatrix& m);
CorrectnessMatrix matrix_from_json(const json& j);

}  // namespace robeval
