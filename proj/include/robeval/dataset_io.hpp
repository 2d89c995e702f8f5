#pragma once
// File formats: task JSONL, partial-task derivation, instance files,
// completion files, matrix files, and the CSV matrix export.

#include <map>
#include <string>
#include <vector>

#include "robeval/types.hpp"

namespace robeval {

// JSONL, one task per line. Malformed lines are reported with their line
// number; duplicate ids are rejected.
std::vector<Task> load_tasks(const std::string& path);
void write_tasks(const std::string& path, const std::vector<Task>& tasks);

// Moves the first floor(k/2) physical lines of the canonical solution into
// the prompt (k counted after stripping trailing blank lines; interior blank
// lines count). Reassembly is byte-exact: new prompt + new solution ==
// old prompt + old solution.
Task derive_partial(const Task& task);

// JSONL instance files, grouped by task then variant_index.
void write_instances(const std::string& path, const std::vector<PerturbedInstance>& instances);
std::vector<PerturbedInstance> load_instances(const std::string& path);

// Completion files: JSONL {task_id, variant_index, completions:[...]}.
// Every record must carry the same number of completions; violations are
// reported listing the offenders.
struct CompletionRecord {
  std::string task_id;
  int variant_index = 0;
  std::vector<std::string> completions;
};
void write_completions(const std::string& path, const std::vector<CompletionRecord>& records);
std::vector<CompletionRecord> load_completions(const std::string& path);

void write_matrix(const std::string& path, const CorrectnessMatrix& m);
CorrectnessMatrix load_matrix(const std::string& path);

// CSV with header task_id,variant,sample,correct.
void export_matrix_csv(const std::string& path, const CorrectnessMatrix& m);

}  // namespace robeval
