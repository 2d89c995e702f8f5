#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "robeval/catalog.hpp"
#include "robeval/dataset_io.hpp"

using namespace robeval;
namespace fs = std::filesystem;

namespace {

const std::string kCorpusPath = std::string(ROBEVAL_SOURCE_DIR) + "/data/corpus.jsonl";

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name) {
    path = fs::temp_directory_path() / ("robeval-io-" + name + "-" +
                                        std::to_string(::getpid()));
  }
  ~TempFile() { fs::remove(path); }
  void write(const std::string& content) {
    std::ofstream out(path);
    out << content;
  }
  std::string read() const {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

Task sample_task(const std::string& id = "t/0") {
  Task t;
  t.task_id = id;
  t.prompt = "def f(x):\n    \"\"\"Doc.\"\"\"\n";
  t.canonical_solution = "    y = x + 1\n    z = y * 2\n    w = z - 1\n    return w\n";
  t.test_source = "assert f(1) == 3\n";
  t.entry_point = "f";
  return t;
}

}  // namespace

TEST_CASE("the shipped corpus loads and round-trips") {
  auto tasks = load_tasks(kCorpusPath);
  CHECK(tasks.size() == 24);
  TempFile tmp("roundtrip");
  write_tasks(tmp.path.string(), tasks);
  auto again = load_tasks(tmp.path.string());
  CHECK(again == tasks);
}

TEST_CASE("malformed task lines are reported with their line number") {
  TempFile tmp("badline");
  tmp.write(to_json(sample_task()).dump() + "\nnot json at all\n");
  try {
    load_tasks(tmp.path.string());
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(tmp.path.string() + ":2:") != std::string::npos);
  }
}

TEST_CASE("missing fields are reported with their line number") {
  TempFile tmp("missingfield");
  tmp.write("{\"task_id\": \"t/0\"}\n");
  try {
    load_tasks(tmp.path.string());
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find(tmp.path.string() + ":1:") != std::string::npos);
    CHECK(msg.find("prompt") != std::string::npos);
  }
}

TEST_CASE("duplicate task ids are rejected") {
  TempFile tmp("dup");
  std::string line = to_json(sample_task()).dump() + "\n";
  tmp.write(line + line);
  CHECK_THROWS_WITH_AS(load_tasks(tmp.path.string()),
                       doctest::Contains("t/0"), ValidationError);
}

TEST_CASE("an empty dataset is rejected") {
  TempFile tmp("empty");
  tmp.write("");
  CHECK_THROWS_AS(load_tasks(tmp.path.string()), ValidationError);
}

TEST_CASE("derive_partial moves floor(k/2) solution lines into the prompt") {
  Task t = sample_task();  // 4 solution lines -> 2 move
  Task p = derive_partial(t);
  CHECK(p.prompt == t.prompt + "    y = x + 1\n    z = y * 2\n");
  CHECK(p.canonical_solution == "    w = z - 1\n    return w\n");
  CHECK(p.prompt + p.canonical_solution == t.prompt + t.canonical_solution);
}

TEST_CASE("derive_partial with one line moves nothing") {
  Task t = sample_task();
  t.canonical_solution = "    return x\n";
  Task p = derive_partial(t);
  CHECK(p.prompt == t.prompt);
  CHECK(p.canonical_solution == t.canonical_solution);
}

TEST_CASE("derive_partial ignores trailing blank lines when counting") {
  Task t = sample_task();
  t.canonical_solution = "    y = 1\n    return y\n\n\n";
  Task p = derive_partial(t);  // k = 2, one line moves
  CHECK(p.prompt == t.prompt + "    y = 1\n");
  CHECK(p.prompt + p.canonical_solution == t.prompt + t.canonical_solution);
}

TEST_CASE("derive_partial rejects empty solutions") {
  Task t = sample_task();
  t.canonical_solution = "";
  CHECK_THROWS_AS(derive_partial(t), ValidationError);
}

TEST_CASE("reassembly is byte-exact across the whole corpus") {
  for (const auto& t : load_tasks(kCorpusPath)) {
    Task p = derive_partial(t);
    CHECK(p.prompt + p.canonical_solution == t.prompt + t.canonical_solution);
    CHECK(p.task_id == t.task_id);
    CHECK(p.entry_point == t.entry_point);
  }
}

TEST_CASE("instance files round-trip byte-identically") {
  PerturbedInstance a;
  a.task_id = "t/0";
  a.transform = catalog_lookup("ButterFingers");
  a.variant_index = 0;
  a.seed = 0;
  a.perturbed_prompt = "def f():\n    pass\n";
  PerturbedInstance b = a;
  b.variant_index = 1;
  b.seed = 1234;
  b.changed = true;
  b.perturbed_prompt = "def f():\n    pasz\n";
  PerturbedInstance c = b;
  c.variant_index = 2;
  c.applicable = false;
  c.changed = false;
  c.degraded = true;
  c.new_entry_point = "g";
  c.new_test_source = "assert g() is None\n";

  TempFile f1("inst1"), f2("inst2");
  write_instances(f1.path.string(), {a, b, c});
  auto loaded = load_instances(f1.path.string());
  REQUIRE(loaded.size() == 3);
  CHECK(loaded[1].seed == 1234);
  CHECK(loaded[1].changed);
  CHECK_FALSE(loaded[2].applicable);
  CHECK(loaded[2].degraded);
  CHECK(loaded[2].new_entry_point.value() == "g");
  CHECK(loaded[2].new_test_source.value() == "assert g() is None\n");
  write_instances(f2.path.string(), loaded);
  CHECK(f1.read() == f2.read());
}

TEST_CASE("completion files enforce a uniform sample count") {
  TempFile tmp("comp");
  write_completions(tmp.path.string(), {{"t/0", 0, {"a", "b"}},
                                        {"t/0", 1, {"c", "d"}}});
  auto recs = load_completions(tmp.path.string());
  REQUIRE(recs.size() == 2);
  CHECK(recs[1].completions == std::vector<std::string>{"c", "d"});

  TempFile bad("compbad");
  write_completions(bad.path.string(), {{"t/0", 0, {"a", "b"}},
                                        {"t/1", 0, {"c"}}});
  CHECK_THROWS_WITH_AS(load_completions(bad.path.string()),
                       doctest::Contains("t/1"), ValidationError);
}

TEST_CASE("matrices round-trip through their file format") {
  CorrectnessMatrix m({"t/0", "t/1"}, 2, 3);
  for (std::size_t t = 0; t < 2; ++t)
    for (int v = 0; v <= 2; ++v)
      for (int s = 1; s <= 3; ++s) m.set(t, v, s, (t + v + s) % 2 == 0);
  TempFile tmp("matrix");
  write_matrix(tmp.path.string(), m);
  auto back = load_matrix(tmp.path.string());
  CHECK(back == m);
}

TEST_CASE("matrix CSV export uses the documented header") {
  CorrectnessMatrix m({"t/0"}, 1, 1);
  m.set(0, 0, 1, true);
  m.set(0, 1, 1, false);
  TempFile tmp("csv");
  export_matrix_csv(tmp.path.string(), m);
  std::string csv = tmp.read();
  CHECK(csv.substr(0, csv.find('\n')) == "task_id,variant,sample,correct");
  CHECK(csv.find("t/0,0,1,1") != std::string::npos);
  CHECK(csv.find("t/0,1,1,0") != std::string::npos);
}
