#include "robeval/providers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

// httplib pulls in OpenSSL only when requested; plain HTTP is enough here.
#include <httplib.h>

namespace robeval {

namespace {

Pos pos_from_letter(const std::string& s) {
  if (s == "n") return Pos::noun;
  if (s == "v") return Pos::verb;
  if (s == "a") return Pos::adjective;
  if (s == "r") return Pos::adverb;
  throw ValidationError("lexicon: unknown pos tag '" + s + "'");
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// Irregular verb table: base -> {3sg, past}.
const std::map<std::string, std::pair<std::string, std::string>>& irregular_verbs() {
  static const std::map<std::string, std::pair<std::string, std::string>> t = {
      {"be", {"is", "was"}},     {"have", {"has", "had"}},   {"do", {"does", "did"}},
      {"find", {"finds", "found"}}, {"go", {"goes", "went"}}, {"make", {"makes", "made"}},
      {"take", {"takes", "took"}},  {"get", {"gets", "got"}}, {"give", {"gives", "gave"}},
      {"come", {"comes", "came"}},  {"see", {"sees", "saw"}}, {"say", {"says", "said"}},
      {"know", {"knows", "knew"}},  {"think", {"thinks", "thought"}},
      {"run", {"runs", "ran"}},     {"write", {"writes", "wrote"}},
      {"keep", {"keeps", "kept"}},  {"hold", {"holds", "held"}},
      {"put", {"puts", "put"}},     {"set", {"sets", "set"}},
      {"begin", {"begins", "began"}}, {"choose", {"chooses", "chose"}},
      {"build", {"builds", "built"}}, {"leave", {"leaves", "left"}}};
  return t;
}

// Irregular noun plurals: singular -> plural.
const std::map<std::string, std::string>& irregular_nouns() {
  static const std::map<std::string, std::string> t = {
      {"child", "children"}, {"person", "people"}, {"index", "indices"},
      {"vertex", "vertices"}, {"matrix", "matrices"}, {"datum", "data"},
      {"foot", "feet"}, {"man", "men"}, {"woman", "women"}};
  return t;
}

std::string plural_of(const std::string& noun) {
  auto it = irregular_nouns().find(noun);
  if (it != irregular_nouns().end()) return it->second;
  if (ends_with(noun, "y") && noun.size() > 1 &&
      std::string("aeiou").find(noun[noun.size() - 2]) == std::string::npos)
    return noun.substr(0, noun.size() - 1) + "ies";
  if (ends_with(noun, "s") || ends_with(noun, "x") || ends_with(noun, "z") ||
      ends_with(noun, "ch") || ends_with(noun, "sh"))
    return noun + "es";
  return noun + "s";
}

std::optional<std::string> singular_of(const std::string& noun) {
  for (const auto& [sg, pl] : irregular_nouns())
    if (pl == noun) return sg;
  if (ends_with(noun, "ies") && noun.size() > 3) return noun.substr(0, noun.size() - 3) + "y";
  if (ends_with(noun, "es") && noun.size() > 2) {
    std::string stem = noun.substr(0, noun.size() - 2);
    if (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
        ends_with(stem, "ch") || ends_with(stem, "sh"))
      return stem;
  }
  if (ends_with(noun, "s") && !ends_with(noun, "ss") && noun.size() > 1)
    return noun.substr(0, noun.size() - 1);
  return std::nullopt;
}

std::string third_singular(const std::string& verb) {
  auto it = irregular_verbs().find(verb);
  if (it != irregular_verbs().end()) return it->second.first;
  return plural_of(verb);  // same orthographic rule
}

std::string regular_past(const std::string& verb) {
  if (ends_with(verb, "e")) return verb + "d";
  if (ends_with(verb, "y") && verb.size() > 1 &&
      std::string("aeiou").find(verb[verb.size() - 2]) == std::string::npos)
    return verb.substr(0, verb.size() - 1) + "ied";
  return verb + "ed";
}

std::string gerund(const std::string& verb) {
  if (ends_with(verb, "e") && !ends_with(verb, "ee") && verb != "be")
    return verb.substr(0, verb.size() - 1) + "ing";
  return verb + "ing";
}

httplib::Client make_client(const std::string& base_url, int timeout_secs) {
  httplib::Client cli(base_url);
  cli.set_connection_timeout(timeout_secs);
  cli.set_read_timeout(timeout_secs);
  const char* token = std::getenv("ROBEVAL_PROVIDER_TOKEN");
  if (token && *token) cli.set_bearer_token_auth(token);
  return cli;
}

void backoff_sleep(int attempt) {
  int ms = std::min(2000, 100 * (1 << attempt));
  std::this_thread::sleep_for(std::chrono::milliseconds(ms));
}

}  // namespace

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open lexicon file: " + path);
  Lexicon lex;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = (t1 == std::string::npos) ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": malformed lexicon line");
    std::string lemma = line.substr(0, t1);
    Pos pos = pos_from_letter(line.substr(t1 + 1, t2 - t1 - 1));
    std::vector<std::string> syns;
    std::stringstream ss(line.substr(t2 + 1));
    std::string syn;
    while (std::getline(ss, syn, ','))
      if (!syn.empty()) syns.push_back(syn);
    lex.add(lemma, pos, syns);
  }
  return lex;
}

void Lexicon::add(const std::string& lemma, Pos pos, const std::vector<std::string>& synonyms) {
  auto& slot = entries_[{lemma, pos}];
  slot.insert(slot.end(), synonyms.begin(), synonyms.end());
  std::sort(slot.begin(), slot.end());
  slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
}

std::vector<std::string> Lexicon::synonyms(const std::string& word,
                                           std::optional<Pos> pos) const {
  std::vector<std::string> out;
  for (const auto& [key, syns] : entries_) {
    if (key.first != word) continue;
    if (pos && key.second != *pos) continue;
    out.insert(out.end(), syns.begin(), syns.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), word), out.end());
  return out;
}

std::optional<Pos> Lexicon::pos_of(const std::string& word) const {
  for (const auto& [key, syns] : entries_)
    if (key.first == word) return key.second;
  return std::nullopt;
}

Pos Tagger::tag(const std::string& word) const {
  std::string w;
  for (char c : word) w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (irregular_verbs().count(w)) return Pos::verb;
  for (const auto& [base, forms] : irregular_verbs())
    if (forms.first == w || forms.second == w) return Pos::verb;
  if (lexicon_) {
    if (auto p = lexicon_->pos_of(w)) return *p;
    // Try the rule lemma as well (plural nouns, inflected verbs).
    Inflector inf;
    std::string lemma = inf.lemmatize(w);
    if (lemma != w) {
      if (auto p = lexicon_->pos_of(lemma)) return *p;
    }
  }
  if (ends_with(w, "ly")) return Pos::adverb;
  if (ends_with(w, "ing") || ends_with(w, "ed") || ends_with(w, "ize") || ends_with(w, "ise"))
    return Pos::verb;
  if (ends_with(w, "tion") || ends_with(w, "ness") || ends_with(w, "ment") ||
      ends_with(w, "ity") || ends_with(w, "er") || ends_with(w, "ist"))
    return Pos::noun;
  if (ends_with(w, "ous") || ends_with(w, "ful") || ends_with(w, "able") || ends_with(w, "ive"))
    return Pos::adjective;
  return Pos::other;
}

std::vector<std::string> Inflector::variants(const std::string& word, Pos pos) const {
  std::vector<std::string> out;
  if (pos == Pos::noun) {
    out.push_back(plural_of(word));
    if (auto sg = singular_of(word)) out.push_back(*sg);
  } else if (pos == Pos::verb) {
    std::string b = base(word).value_or(word);
    out.push_back(b);
    out.push_back(third_singular(b));
    out.push_back(past(b).value_or(regular_past(b)));
    out.push_back(gerund(b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), word), out.end());
  return out;
}

std::string Inflector::lemmatize(const std::string& word) const {
  if (auto b = base(word)) return *b;
  if (auto sg = singular_of(word)) return *sg;
  return word;
}

std::optional<std::string> Inflector::past(const std::string& verb) const {
  auto it = irregular_verbs().find(verb);
  if (it != irregular_verbs().end()) return it->second.second;
  if (verb == "is" || verb == "am") return "was";
  if (verb == "are" || verb == "were") return "was";
  return regular_past(verb);
}

std::optional<std::string> Inflector::base(const std::string& verb) const {
  for (const auto& [b, forms] : irregular_verbs())
    if (b == verb || forms.first == verb || forms.second == verb) return b;
  if (ends_with(verb, "ies") && verb.size() > 3) return verb.substr(0, verb.size() - 3) + "y";
  if (ends_with(verb, "ied") && verb.size() > 3) return verb.substr(0, verb.size() - 3) + "y";
  if (ends_with(verb, "ing") && verb.size() > 4) return verb.substr(0, verb.size() - 3);
  if (ends_with(verb, "ed") && verb.size() > 3) {
    std::string stem = verb.substr(0, verb.size() - 2);
    return stem;
  }
  if (ends_with(verb, "es") && verb.size() > 3) {
    std::string stem = verb.substr(0, verb.size() - 2);
    if (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "ch") ||
        ends_with(stem, "sh"))
      return stem;
  }
  if (ends_with(verb, "s") && !ends_with(verb, "ss") && verb.size() > 2)
    return verb.substr(0, verb.size() - 1);
  return std::nullopt;
}

std::optional<std::string> aggregate_candidates(
    const std::vector<std::vector<ScoredCandidate>>& per_position) {
  if (per_position.empty()) return std::nullopt;
  std::map<std::string, std::pair<double, std::size_t>> sums;  // name -> (sum log, positions seen)
  for (const auto& position : per_position) {
    for (const auto& cand : position) {
      if (cand.score <= 0.0) continue;
      auto& slot = sums[cand.name];
      slot.first += std::log(cand.score);
      slot.second += 1;
    }
  }
  std::optional<std::string> best;
  double best_score = 0.0;
  for (const auto& [name, slot] : sums) {
    if (slot.second != per_position.size()) continue;  // must appear at every location
    if (!best || slot.first > best_score || (slot.first == best_score && name < *best)) {
      best = name;
      best_score = slot.first;
    }
  }
  return best;
}

NameSuggestion FallbackNameSuggester::suggest(const std::string&, int,
                                              const std::set<std::string>& blacklist) {
  for (int i = 0;; ++i) {
    std::string name = "VAR_" + std::to_string(i);
    if (!blacklist.count(name)) return {name, true};
  }
}

HttpParaphraser::HttpParaphraser(std::string base_url, std::string pivot_language,
                                 int max_retries)
    : base_url_(std::move(base_url)), pivot_(std::move(pivot_language)),
      max_retries_(max_retries) {}

ParaphraseResult HttpParaphraser::paraphrase(const std::string& text) {
  auto cli = make_client(base_url_, 60);
  json body{{"text", text}, {"pivot_language", pivot_}};
  for (int attempt = 0; attempt <= max_retries_; ++attempt) {
    auto res = cli.Post("/v1/paraphrase", body.dump(), "application/json");
    if (res && res->status == 200)
      return {json::parse(res->body).at("text").get<std::string>(), false};
    if (res && res->status < 500 && res->status != 429)
      throw CompletionError("paraphrase endpoint returned status " +
                            std::to_string(res->status));
    if (attempt < max_retries_) backoff_sleep(attempt);
  }
  throw CompletionError("paraphrase endpoint unreachable after retries");
}

HttpNameSuggester::HttpNameSuggester(std::string base_url, int max_retries)
    : base_url_(std::move(base_url)), max_retries_(max_retries) {}

NameSuggestion HttpNameSuggester::suggest(const std::string& masked_prompt, int mask_count,
                                          const std::set<std::string>& blacklist) {
  auto cli = make_client(base_url_, 60);
  json body{{"masked_prompt", masked_prompt}, {"mask_count", mask_count}};
  for (int attempt = 0; attempt <= max_retries_; ++attempt) {
    auto res = cli.Post("/v1/suggest_name", body.dump(), "application/json");
    if (res && res->status == 200) {
      json parsed = json::parse(res->body);
      std::vector<std::vector<ScoredCandidate>> per_position;
      for (const json& pos : parsed.at("candidates")) {
        std::vector<ScoredCandidate> cands;
        for (const json& c : pos)
          cands.push_back({c.at("name").get<std::string>(), c.at("score").get<double>()});
        per_position.push_back(std::move(cands));
      }
      auto best = aggregate_candidates(per_position);
      if (best && !blacklist.count(*best)) return {*best, false};
      break;  // no usable candidate; fall back below
    }
    if (res && res->status < 500 && res->status != 429) break;
    if (attempt < max_retries_) backoff_sleep(attempt);
  }
  return FallbackNameSuggester{}.suggest(masked_prompt, mask_count, blacklist);
}

CompletionClient::CompletionClient(std::string base_url, int max_retries, int timeout_secs)
    : base_url_(std::move(base_url)), max_retries_(max_retries), timeout_secs_(timeout_secs) {}

std::vector<std::string> CompletionClient::complete(const std::string& prompt, int n,
                                                    const CompletionParams& params) {
  auto cli = make_client(base_url_, timeout_secs_);
  json body{{"prompt", prompt},
            {"n", n},
            {"temperature", params.temperature},
            {"max_tokens", params.max_tokens},
            {"stop", params.stop}};
  std::string request_id = "req-" + std::to_string(++request_counter_);
  httplib::Headers headers{{"X-Request-Id", request_id}};
  std::string last_error;
  for (int attempt = 0; attempt <= max_retries_; ++attempt) {
    auto res = cli.Post("/v1/complete", headers, body.dump(), "application/json");
    if (res && res->status == 200) {
      auto completions = json::parse(res->body).at("completions").get<std::vector<std::string>>();
      if (static_cast<int>(completions.size()) != n)
        throw CompletionError("completion endpoint returned " +
                              std::to_string(completions.size()) + " completions, expected " +
                              std::to_string(n) + " (" + request_id + ")");
      return completions;
    }
    if (res && res->status < 500 && res->status != 429)
      throw CompletionError("completion endpoint returned status " +
                            std::to_string(res->status) + " (" + request_id + ")");
    last_error = res ? "status " + std::to_string(res->status)
                     : "transport error " + httplib::to_string(res.error());
    if (attempt < max_retries_) {
      ++retries_used_;
      backoff_sleep(attempt);
    }
  }
  throw CompletionError("completion request failed after retries: " + last_error + " (" +
                        request_id + ")");
}

}  // namespace robeval
