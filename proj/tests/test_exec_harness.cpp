#include <doctest.h>

#include <filesystem>
#include <string>

#include "robeval/dataset_io.hpp"
#include "robeval/exec_harness.hpp"

using namespace robeval;

namespace {

const std::string kCorpusPath = std::string(ROBEVAL_SOURCE_DIR) + "/data/corpus.jsonl";

const std::string kPrompt = "def add(a, b):\n    \"\"\"Add.\"\"\"\n";
const std::string kTests = "assert add(1, 2) == 3\nassert add(-1, 1) == 0\n";

}  // namespace

TEST_CASE("a correct completion passes") {
  auto v = evaluate_one(kPrompt, "    return a + b\n", kTests);
  CHECK(v.status == VerdictStatus::pass);
  CHECK(v.wall_time >= 0.0);
}

TEST_CASE("a wrong completion fails with a stderr excerpt") {
  auto v = evaluate_one(kPrompt, "    return a - b\n", kTests);
  CHECK(v.status == VerdictStatus::fail);
  CHECK(v.stderr_excerpt.find("AssertionError") != std::string::npos);
}

TEST_CASE("a syntax error fails rather than crashing the harness") {
  auto v = evaluate_one(kPrompt, "    return a +\n", kTests);
  CHECK(v.status == VerdictStatus::fail);
  CHECK(v.stderr_excerpt.find("SyntaxError") != std::string::npos);
}

TEST_CASE("infinite loops are killed at the deadline") {
  ExecOptions opts;
  opts.timeout_secs = 1.0;
  auto v = evaluate_one(kPrompt, "    while True:\n        pass\n", kTests, opts);
  CHECK(v.status == VerdictStatus::timeout);
  CHECK(v.wall_time >= 1.0);
  CHECK(v.wall_time < 5.0);
}

TEST_CASE("a missing interpreter is a setup error") {
  ExecOptions opts;
  opts.interpreter = "definitely-not-an-interpreter";
  auto v = evaluate_one(kPrompt, "    return a + b\n", kTests, opts);
  CHECK(v.status == VerdictStatus::setup_error);
}

TEST_CASE("programs run isolated in a scratch directory") {
  // A relative-path write lands in the per-run temp dir, which is removed
  // afterwards; the invoking process's cwd stays clean.
  std::string completion =
      "    with open('scratch-marker.txt', 'w') as f:\n"
      "        f.write('x')\n"
      "    return a + b\n";
  auto v = evaluate_one(kPrompt, completion, kTests);
  CHECK(v.status == VerdictStatus::pass);
  CHECK_FALSE(std::filesystem::exists("scratch-marker.txt"));
}

TEST_CASE("trim_completion cuts at top-level continuation text") {
  std::string body = "    return a + b\n";
  CHECK(trim_completion(body + "def helper():\n    pass\n") == body);
  CHECK(trim_completion(body + "class Foo:\n    pass\n") == body);
  CHECK(trim_completion(body + "if __name__ == '__main__':\n    pass\n") == body);
  CHECK(trim_completion(body + "print(add(1, 2))\n") == body);
  // indented code is part of the function and survives
  CHECK(trim_completion(body) == body);
  CHECK(trim_completion("    x = print\n    return a + b\n") ==
        "    x = print\n    return a + b\n");
}

TEST_CASE("evaluate_matrix fills every cell and ignores the parallelism degree") {
  std::vector<Task> tasks;
  for (int i = 0; i < 4; ++i) {
    Task t;
    t.task_id = "m/" + std::to_string(i);
    t.prompt = kPrompt;
    t.canonical_solution = "    return a + b\n";
    t.test_source = kTests;
    t.entry_point = "add";
    tasks.push_back(t);
  }
  std::vector<PerturbedInstance> instances;
  CompletionMap completions;
  for (const auto& t : tasks) {
    for (int v = 0; v <= 1; ++v) {
      PerturbedInstance pi;
      pi.task_id = t.task_id;
      pi.variant_index = v;
      pi.perturbed_prompt = t.prompt;
      instances.push_back(pi);
      // sample 1 correct, sample 2 wrong except on task m/3
      std::vector<std::string> cs = {"    return a + b\n", "    return a - b\n"};
      if (t.task_id == "m/3") cs[1] = cs[0];
      completions[{t.task_id, v}] = cs;
    }
  }
  ExecOptions serial;
  serial.jobs = 1;
  ExecOptions parallel;
  parallel.jobs = 8;
  auto m1 = evaluate_matrix(tasks, instances, completions, 2, serial);
  auto m8 = evaluate_matrix(tasks, instances, completions, 2, parallel);
  CHECK(m1 == m8);
  CHECK(m1.fully_populated());
  CHECK(m1.s() == 1);
  CHECK(m1.n() == 2);
  CHECK(m1.get(0, 0, 1));
  CHECK_FALSE(m1.get(0, 0, 2));
  CHECK(m1.get(3, 1, 2));
}

TEST_CASE("coverage gaps are rejected before anything executes") {
  Task t;
  t.task_id = "m/0";
  t.prompt = kPrompt;
  t.canonical_solution = "    return a + b\n";
  t.test_source = kTests;
  t.entry_point = "add";
  PerturbedInstance pi;
  pi.task_id = "m/0";
  pi.variant_index = 1;
  pi.perturbed_prompt = t.prompt;
  CompletionMap completions;
  completions[{"m/0", 1}] = {"    return a + b\n"};
  // variant 0 (nominal) completions are missing
  try {
    evaluate_matrix({t}, {pi}, completions, 1);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("m/0") != std::string::npos);
  }
}

TEST_CASE("an unusable interpreter raises ExecEnvironmentError") {
  Task t;
  t.task_id = "m/0";
  t.prompt = kPrompt;
  t.canonical_solution = "    return a + b\n";
  t.test_source = kTests;
  t.entry_point = "add";
  PerturbedInstance nominal;
  nominal.task_id = "m/0";
  nominal.variant_index = 0;
  nominal.perturbed_prompt = t.prompt;
  CompletionMap completions;
  completions[{"m/0", 0}] = {"    return a + b\n"};
  ExecOptions opts;
  opts.interpreter = "definitely-not-an-interpreter";
  CHECK_THROWS_AS(evaluate_matrix({t}, {nominal}, completions, 1, opts),
                  ExecEnvironmentError);
}

TEST_CASE("canonical solutions pass on every corpus task") {
  for (const auto& t : load_tasks(kCorpusPath)) {
    auto v = evaluate_one(t.prompt, t.canonical_solution, t.test_source);
    CHECK_MESSAGE(v.status == VerdictStatus::pass, t.task_id << ": " << v.stderr_excerpt);
  }
}
