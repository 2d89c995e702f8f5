#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "robeval/catalog.hpp"
#include "robeval/dataset_io.hpp"
#include "robeval/document.hpp"
#include "robeval/name_transforms.hpp"
#include "robeval/pytok.hpp"

using namespace robeval;

namespace {

const std::string kCorpusPath = std::string(ROBEVAL_SOURCE_DIR) + "/data/corpus.jsonl";
const std::string kLexiconPath = std::string(ROBEVAL_SOURCE_DIR) + "/data/lexicon.tsv";

Providers shipped_providers() {
  Providers p;
  p.lexicon = Lexicon::load(kLexiconPath);
  return p;
}

int underscores(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '_'));
}

}  // namespace

TEST_CASE("split_name handles snake case and camel humps") {
  CHECK(split_name("find_char_long") == std::vector<std::string>{"find", "char", "long"});
  CHECK(split_name("findCharLong") == std::vector<std::string>{"find", "char", "long"});
  CHECK(split_name("sort") == std::vector<std::string>{"sort"});
  CHECK_FALSE(split_name("mixedCase_name").empty());
}

TEST_CASE("join functions rebuild both conventions") {
  std::vector<std::string> words = {"find", "char", "long"};
  CHECK(join_snake(words) == "find_char_long");
  CHECK(join_camel(words) == "findCharLong");
}

TEST_CASE("camel_case_toggle is an involution on multi-word names") {
  CHECK(camel_case_toggle("find_char_long") == "findCharLong");
  CHECK(camel_case_toggle("findCharLong") == "find_char_long");
  CHECK(camel_case_toggle(camel_case_toggle("count_small_values")) == "count_small_values");
  CHECK(camel_case_toggle("sort") == "sort");
}

TEST_CASE("character-level name perturbations stay valid identifiers") {
  Providers providers;
  for (const char* tname :
       {"FuncRenameButterFingers", "FuncRenameSwapCharacters", "FuncRenameChangeCharCase"}) {
    const auto& spec = catalog_lookup(tname);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      Rng rng(seed);
      std::string out = perturb_name("count_small_values", spec, rng, providers);
      CHECK(out != "count_small_values");
      CHECK(pytok::is_identifier(out));
      CHECK(underscores(out) == 2);
    }
  }
}

TEST_CASE("synonym rename swaps whole component words") {
  auto providers = shipped_providers();
  const auto& spec = catalog_lookup("FuncRenameSynonymSubstitution");
  bool saw_change = false;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    std::string out = perturb_name("find_largest_value", spec, rng, providers);
    CHECK(pytok::is_identifier(out));
    CHECK(out != "find_largest_value");
    saw_change = true;
  }
  CHECK(saw_change);
}

TEST_CASE("synonym rename with an empty lexicon has no applicable site") {
  Providers providers;  // empty lexicon
  const auto& spec = catalog_lookup("FuncRenameSynonymSubstitution");
  Rng rng(1);
  CHECK_THROWS_AS(perturb_name("find_largest_value", spec, rng, providers), NoApplicableSite);
}

TEST_CASE("apply_function_rename rewrites prompt, tests, and entry point consistently") {
  auto tasks = load_tasks(kCorpusPath);
  auto providers = shipped_providers();
  PyAnalyzer an;
  for (std::size_t ti = 0; ti < tasks.size(); ti += 5) {
    const Task& task = tasks[ti];
    auto doc = build_prompt_document(an, task);
    for (const auto& spec : catalog_family(Family::func_name)) {
      auto out = apply_function_rename(task, doc, spec, 17, providers);
      if (!out.changed) continue;
      int before_prompt = pytok::count_identifier(task.prompt, task.entry_point);
      int before_tests = pytok::count_identifier(task.test_source, task.entry_point);
      CHECK(out.entry_point != task.entry_point);
      CHECK(pytok::is_identifier(out.entry_point));
      // every occurrence renamed, none left behind
      CHECK(pytok::count_identifier(out.prompt, out.entry_point) == before_prompt);
      CHECK(pytok::count_identifier(out.prompt, task.entry_point) == 0);
      CHECK(pytok::count_identifier(out.test_source, out.entry_point) == before_tests);
      CHECK(pytok::count_identifier(out.test_source, task.entry_point) == 0);
      // the new name never collides with existing identifiers
      CHECK(doc.blacklist.count(out.entry_point) == 0);
    }
  }
}

TEST_CASE("CamelCase rename on a single-word entry point reports no change") {
  Task task;
  task.task_id = "t/0";
  task.prompt = "def sort(xs):\n    \"\"\"Sort xs.\"\"\"\n";
  task.canonical_solution = "    return sorted(xs)\n";
  task.test_source = "assert sort([2, 1]) == [1, 2]\n";
  task.entry_point = "sort";
  PyAnalyzer an;
  auto doc = build_prompt_document(an, task);
  auto out = apply_function_rename(task, doc, catalog_lookup("CamelCase"), 1, Providers{});
  CHECK_FALSE(out.changed);
  CHECK(out.entry_point == "sort");
  CHECK(out.prompt == task.prompt);
}

TEST_CASE("renames are deterministic per seed") {
  auto tasks = load_tasks(kCorpusPath);
  auto providers = shipped_providers();
  PyAnalyzer an;
  auto doc = build_prompt_document(an, tasks[2]);
  const auto& spec = catalog_lookup("FuncRenameButterFingers");
  auto a = apply_function_rename(tasks[2], doc, spec, 23, providers);
  auto b = apply_function_rename(tasks[2], doc, spec, 23, providers);
  CHECK(a.entry_point == b.entry_point);
  CHECK(a.prompt == b.prompt);
  CHECK(a.test_source == b.test_source);
}
