#pragma once
// Pluggable external capabilities: synonym lexicon, POS tagger, inflector,
// paraphraser, masked-name suggester, and the remote completion client.
// All lookups are deterministic (lexicographic ordering) so seeded sampling
// is reproducible; remote providers have deterministic fallbacks that set a
// degraded flag.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "robeval/types.hpp"

namespace robeval {

enum class Pos { noun, verb, adjective, adverb, other };

// Flat lemma -> synonyms lexicon. File format, one record per line:
//   lemma<TAB>pos<TAB>syn1,syn2,...
// pos is one of n/v/a/r (noun/verb/adjective/adverb).
class Lexicon {
 public:
  Lexicon() = default;
  static Lexicon load(const std::string& path);

  void add(const std::string& lemma, Pos pos, const std::vector<std::string>& synonyms);

  // Sorted, deduplicated; empty when unknown. Without pos, all senses merge.
  std::vector<std::string> synonyms(const std::string& word,
                                    std::optional<Pos> pos = std::nullopt) const;

  std::optional<Pos> pos_of(const std::string& word) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::string, Pos>, std::vector<std::string>> entries_;
};

// Rule/lexicon POS tagger with suffix-heuristic fallback.
class Tagger {
 public:
  explicit Tagger(const Lexicon* lexicon = nullptr) : lexicon_(lexicon) {}
  Pos tag(const std::string& word) const;

 private:
  const Lexicon* lexicon_;
};

// Rule-based English inflections; closed irregular tables shipped in-repo.
class Inflector {
 public:
  // All inflection variants of word under the given coarse POS, sorted,
  // excluding word itself.
  std::vector<std::string> variants(const std::string& word, Pos pos) const;

  // Rule-based lemma (shared by variants of one word).
  std::string lemmatize(const std::string& word) const;

  // Simple past of a verb, empty when no rule applies.
  std::optional<std::string> past(const std::string& verb) const;

  // Base (infinitive) form of a verb when recognized.
  std::optional<std::string> base(const std::string& verb) const;
};

struct ParaphraseResult {
  std::string text;
  bool degraded = false;
};

class Paraphraser {
 public:
  virtual ~Paraphraser() = default;
  virtual ParaphraseResult paraphrase(const std::string& text) = 0;
};

// Deterministic fallback: returns the input unchanged with degraded set.
class PassthroughParaphraser : public Paraphraser {
 public:
  ParaphraseResult paraphrase(const std::string& text) override { return {text, true}; }
};

// Calls a round-trip-translation HTTP endpoint. Pivot language is a provider
// parameter. Auth token read from env var ROBEVAL_PROVIDER_TOKEN.
class HttpParaphraser : public Paraphraser {
 public:
  HttpParaphraser(std::string base_url, std::string pivot_language = "de", int max_retries = 3);
  ParaphraseResult paraphrase(const std::string& text) override;

 private:
  std::string base_url_;
  std::string pivot_;
  int max_retries_;
};

struct NameSuggestion {
  std::string name;
  bool degraded = false;
};

struct ScoredCandidate {
  std::string name;
  double score = 0.0;  // probability in (0, 1]
};

// Picks the candidate maximizing the sum of log-scores across positions.
// Candidates missing at any position are not eligible.
std::optional<std::string> aggregate_candidates(
    const std::vector<std::vector<ScoredCandidate>>& per_position);

class NameSuggester {
 public:
  virtual ~NameSuggester() = default;
  // masked_prompt contains one mask token per occurrence of the variable.
  virtual NameSuggestion suggest(const std::string& masked_prompt, int mask_count,
                                 const std::set<std::string>& blacklist) = 0;
};

// Deterministic fallback: first VAR_<i> name outside the blacklist.
class FallbackNameSuggester : public NameSuggester {
 public:
  NameSuggestion suggest(const std::string& masked_prompt, int mask_count,
                         const std::set<std::string>& blacklist) override;
};

class HttpNameSuggester : public NameSuggester {
 public:
  explicit HttpNameSuggester(std::string base_url, int max_retries = 3);
  NameSuggestion suggest(const std::string& masked_prompt, int mask_count,
                         const std::set<std::string>& blacklist) override;

 private:
  std::string base_url_;
  int max_retries_;
};

struct CompletionParams {
  double temperature = 0.0;
  int max_tokens = 512;
  std::vector<std::string> stop;
};

struct CompletionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// HTTP client for a generic text-completion endpoint.
// Request:  POST <base_url>/v1/complete  {prompt, n, temperature, max_tokens, stop}
// Response: {completions: [string, ...]}
// Retries 429/5xx and transport errors with exponential backoff.
class CompletionClient {
 public:
  explicit CompletionClient(std::string base_url, int max_retries = 5,
                            int timeout_secs = 120);

  std::vector<std::string> complete(const std::string& prompt, int n,
                                    const CompletionParams& params = {});

  int retries_used() const { return retries_used_; }

 private:
  std::string base_url_;
  int max_retries_;
  int timeout_secs_;
  int retries_used_ = 0;
  std::uint64_t request_counter_ = 0;
};

// The set of transforms that consult each provider is fixed; wiring is lazy
// so unrequested providers are never constructed.
struct Providers {
  Lexicon lexicon;
  Inflector inflector;
  std::shared_ptr<Paraphraser> paraphraser = std::make_shared<PassthroughParaphraser>();
  std::shared_ptr<NameSuggester> name_suggester = std::make_shared<FallbackNameSuggester>();
};

}  // namespace robeval
