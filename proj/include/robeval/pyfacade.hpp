#pragma once
// Concrete-syntax services over the subject language (Python): parse
// validity, docstring location, comparison/loop/statement enumeration, and
// variable frequencies. Backed by a grammar helper subprocess owned by each
// PyAnalyzer instance; instances are not shared across threads.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "robeval/types.hpp"

namespace robeval {

struct SyntaxNodeRef {
  std::string kind;
  ByteRange byte_range;
  int line_start = 0;  // 1-based
  int line_end = 0;
};

struct ComparisonRef {
  ByteRange span;
  ByteRange left;
  ByteRange right;
  ByteRange op_span;
  std::string op;  // "<", "<=", ">", ">=", "==", "!="
};

struct ForRangeLoop {
  ByteRange span;       // whole for statement
  ByteRange body;       // loop body
  std::string target;   // loop variable (simple name)
  std::vector<std::string> range_args;  // 1..3 source expressions
  int indent = 0;       // header column
  int body_indent = 0;
};

// A while-loop matching the counter idiom:
//   v = <init>; while v <op> <limit>: ...; v += <step>
struct WhileCounterLoop {
  ByteRange init_span;   // the init assignment statement
  ByteRange while_span;  // the while statement including its body
  ByteRange incr_span;   // trailing v += step statement
  ByteRange body_wo_incr;  // body excluding the increment; empty if none
  std::string var;
  std::string init_src;
  std::string limit_src;
  std::string step_src;
  std::string op;  // comparison operator in the condition
  int indent = 0;
  int body_indent = 0;
};

struct StatementRef {
  ByteRange span;
  int line_start = 0;
  int line_end = 0;
  int indent = 0;
  int depth = 0;
  std::string kind;
};

struct DocstringLoc {
  ByteRange content;  // exclusive of quote delimiters
  ByteRange literal;  // the full string literal statement expression
  int indent = 0;
  int line_start = 0;
  int line_end = 0;
};

// Full structural analysis of one source unit.
struct Analysis {
  bool ok = false;
  std::string error;
  std::optional<DocstringLoc> docstring;
  std::vector<ComparisonRef> comparisons;
  std::vector<ForRangeLoop> for_range_loops;
  std::vector<WhileCounterLoop> while_counter_loops;
  int other_loops = 0;  // loops outside the supported idioms
  std::vector<StatementRef> statements;
  std::map<std::string, int> variable_frequencies;
};

class PyAnalyzer {
 public:
  PyAnalyzer();
  ~PyAnalyzer();
  PyAnalyzer(const PyAnalyzer&) = delete;
  PyAnalyzer& operator=(const PyAnalyzer&) = delete;

  // True iff the grammar accepts source with no error nodes.
  bool parse_ok(const std::string& source);

  // Structural analysis. Throws ValidationError on parse failure.
  Analysis analyze(const std::string& source, const std::string& entry_point);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Prompts that end mid-function are analyzed with an artificial trailing
// "pass" statement appended; the tail is never emitted. Returns the analysis
// unit (original bytes plus optional tail) or nullopt when no tail makes the
// prompt parse.
std::optional<std::string> analysis_unit(PyAnalyzer& an, const std::string& prompt);

// Identifier tokens of prompt + solution plus the builtin type-name table.
// Throws ValidationError when the pair does not parse.
std::set<std::string> extract_blacklist(PyAnalyzer& an, const std::string& prompt,
                                        const std::string& canonical_solution);

// The fixed builtin type-name table shipped with the repo.
const std::set<std::string>& builtin_type_names();

// Index of the longest line (0-based, ties broken by lowest index).
std::size_t longest_line(const std::string& code);

}  // namespace robeval
