#include <doctest.h>

#include <string>
#include <vector>

#include "robeval/catalog.hpp"
#include "robeval/dataset_io.hpp"
#include "robeval/docstring_transforms.hpp"
#include "robeval/document.hpp"
#include "robeval/rng.hpp"

using namespace robeval;

namespace {

const std::string kCorpusPath = std::string(ROBEVAL_SOURCE_DIR) + "/data/corpus.jsonl";
const std::string kLexiconPath = std::string(ROBEVAL_SOURCE_DIR) + "/data/lexicon.tsv";

Providers shipped_providers() {
  Providers p;
  p.lexicon = Lexicon::load(kLexiconPath);
  return p;
}

std::vector<std::string> docstring_transform_names() {
  std::vector<std::string> names;
  for (const auto& spec : catalog_family(Family::docstring)) names.push_back(spec.name);
  return names;
}

}  // namespace

TEST_CASE("all ten transforms leave bytes outside the docstring span untouched") {
  auto tasks = load_tasks(kCorpusPath);
  auto providers = shipped_providers();
  PyAnalyzer an;
  int changed_total = 0;
  for (std::size_t ti = 0; ti < tasks.size(); ti += 3) {
    auto doc = build_prompt_document(an, tasks[ti]);
    REQUIRE(doc.docstring_span.has_value());
    std::string head = doc.full_text.substr(0, doc.docstring_span->start);
    std::string tail = doc.full_text.substr(doc.docstring_span->end);
    for (const auto& name : docstring_transform_names()) {
      const auto& spec = catalog_lookup(name);
      for (std::uint64_t seed : {11ULL, 12ULL}) {
        auto out = apply_docstring_transform(doc, spec, seed, providers);
        REQUIRE(out.prompt.size() >= head.size() + tail.size());
        CHECK(out.prompt.substr(0, head.size()) == head);
        CHECK(out.prompt.substr(out.prompt.size() - tail.size()) == tail);
        if (out.changed) ++changed_total;
      }
    }
  }
  CHECK(changed_total > 0);
}

TEST_CASE("missing docstring raises NoApplicableSite") {
  PromptDocument doc;
  doc.full_text = "def f(x):\n    return x\n";
  auto providers = Providers{};
  for (const auto& name : docstring_transform_names()) {
    CHECK_THROWS_AS(apply_docstring_transform(doc, catalog_lookup(name), 1, providers),
                    NoApplicableSite);
  }
}

TEST_CASE("unknown transform name raises ValidationError") {
  PromptDocument doc;
  doc.full_text = "def f(x):\n    \"\"\"Doc.\"\"\"\n";
  doc.docstring_span = ByteRange{18, 22};
  TransformSpec bogus{Family::docstring, "NotATransform", {}, false};
  CHECK_THROWS_AS(apply_docstring_transform(doc, bogus, 1, Providers{}), ValidationError);
}

TEST_CASE("BackTranslation with the fallback paraphraser is a degraded identity") {
  auto tasks = load_tasks(kCorpusPath);
  PyAnalyzer an;
  auto doc = build_prompt_document(an, tasks[0]);
  auto out = apply_docstring_transform(doc, catalog_lookup("BackTranslation"), 1, Providers{});
  CHECK(out.prompt == doc.full_text);
  CHECK_FALSE(out.changed);
  CHECK(out.degraded);
}

TEST_CASE("outcomes are deterministic per seed and vary across seeds") {
  auto tasks = load_tasks(kCorpusPath);
  auto providers = shipped_providers();
  PyAnalyzer an;
  auto doc = build_prompt_document(an, tasks[1]);
  const auto& spec = catalog_lookup("ButterFingers");
  auto a = apply_docstring_transform(doc, spec, 7, providers);
  auto b = apply_docstring_transform(doc, spec, 7, providers);
  CHECK(a.prompt == b.prompt);
  CHECK(a.changed == b.changed);
  bool any_differ = false;
  for (std::uint64_t seed = 1; seed <= 40 && !any_differ; ++seed)
    any_differ = apply_docstring_transform(doc, spec, seed, providers).prompt != a.prompt;
  CHECK(any_differ);
}

TEST_CASE("blacklisted identifier words survive aggressive perturbation") {
  PromptDocument doc;
  doc.full_text =
      "def clip_value(value, limit):\n"
      "    \"\"\"Clip the value to the given limit and return value.\n"
      "    \"\"\"\n";
  std::size_t start = doc.full_text.find("Clip");
  std::size_t end = doc.full_text.rfind("\"\"\"");
  doc.docstring_span = ByteRange{start, end};
  doc.blacklist = {"clip_value", "value", "limit"};
  Providers providers = shipped_providers();
  for (const auto& name : docstring_transform_names()) {
    const auto& spec = catalog_lookup(name);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto out = apply_docstring_transform(doc, spec, seed, providers);
      CHECK(out.prompt.find("value") != std::string::npos);
      CHECK(out.prompt.find("limit") != std::string::npos);
    }
  }
}

TEST_CASE("tense transforms change text that uses the present tense") {
  PromptDocument doc;
  doc.full_text =
      "def f(x):\n"
      "    \"\"\"This is the result.\n"
      "    \"\"\"\n";
  std::size_t start = doc.full_text.find("This");
  std::size_t end = doc.full_text.rfind("\"\"\"");
  doc.docstring_span = ByteRange{start, end};
  auto past = apply_docstring_transform(doc, catalog_lookup("TenseTransformationPast"), 1,
                                        Providers{});
  CHECK(past.changed);
  CHECK(past.prompt.find("was") != std::string::npos);
  auto fut = apply_docstring_transform(doc, catalog_lookup("TenseTransformationFuture"), 1,
                                       Providers{});
  CHECK(fut.changed);
  CHECK(fut.prompt.find("will be") != std::string::npos);
}
