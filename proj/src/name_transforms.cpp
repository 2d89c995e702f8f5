#include "robeval/name_transforms.hpp"

#include <cctype>

#include "robeval/pytok.hpp"
#include "robeval/textperturb.hpp"

namespace robeval {

namespace {

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }
char upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

// Splits one underscore-free component at camel humps.
void split_component(const std::string& comp, std::vector<std::string>& out) {
  std::string cur;
  for (char c : comp) {
    if (std::isupper(static_cast<unsigned char>(c)) && !cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
    cur.push_back(lower(c));
  }
  if (!cur.empty()) out.push_back(cur);
}

std::vector<std::string> underscore_components(const std::string& name) {
  std::vector<std::string> comps;
  std::string cur;
  for (char c : name) {
    if (c == '_') {
      comps.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  comps.push_back(cur);
  return comps;
}

std::string rejoin(const std::string& original, const std::vector<std::string>& words) {
  return original.find('_') != std::string::npos ? join_snake(words) : join_camel(words);
}

// Character-level op applied to each underscore-separated component; the
// underscores themselves are never perturbed.
std::string per_component(const std::string& name, Rng& rng, double p, bool force,
                          const std::string& op) {
  auto comps = underscore_components(name);
  bool did = false;
  for (auto& comp : comps) {
    if (op == "butterfingers") {
      for (char& c : comp) {
        if (!std::isalpha(static_cast<unsigned char>(c))) continue;
        if (!(force && !did) && !rng.bernoulli(p)) continue;
        const std::string& adj = qwerty_neighbors(lower(c));
        if (adj.empty()) continue;
        char repl = adj[rng.uniform_index(adj.size())];
        c = std::isupper(static_cast<unsigned char>(c)) ? upper(repl) : repl;
        did = true;
        if (force) break;
      }
    } else if (op == "swap") {
      std::size_t i = 0;
      while (i + 1 < comp.size()) {
        if ((force && !did) || rng.bernoulli(p)) {
          if (comp[i] != comp[i + 1]) did = true;
          std::swap(comp[i], comp[i + 1]);
          i += 2;
          if (force && did) break;
        } else {
          ++i;
        }
      }
    } else {  // change_case
      for (char& c : comp) {
        if (!std::islower(static_cast<unsigned char>(c))) continue;
        if (!(force && !did) && !rng.bernoulli(p)) continue;
        c = upper(c);
        did = true;
        if (force) break;
      }
    }
    if (force && did) break;
  }
  // Components came from splitting on '_', so joining with '_' restores the
  // original separator layout exactly.
  return join_snake(comps);
}

}  // namespace

std::vector<std::string> split_name(const std::string& name) {
  std::vector<std::string> words;
  for (const auto& comp : underscore_components(name))
    if (!comp.empty()) split_component(comp, words);
  return words;
}

std::string join_snake(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back('_');
    out += words[i];
  }
  return out;
}

std::string join_camel(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    if (i && !w.empty()) w[0] = upper(w[0]);
    out += w;
  }
  return out;
}

std::string camel_case_toggle(const std::string& name) {
  auto words = split_name(name);
  if (words.size() < 2) return name;
  return name.find('_') != std::string::npos ? join_camel(words) : join_snake(words);
}

std::string perturb_name(const std::string& name, const TransformSpec& spec, Rng& rng,
                         const Providers& providers) {
  const double p = spec.params.count("p") ? spec.params.at("p") : 0.35;

  if (spec.name == "FuncRenameButterFingers" || spec.name == "FuncRenameSwapCharacters" ||
      spec.name == "FuncRenameChangeCharCase") {
    std::string op = spec.name == "FuncRenameButterFingers" ? "butterfingers"
                     : spec.name == "FuncRenameSwapCharacters" ? "swap"
                                                               : "change_case";
    for (int attempt = 0; attempt < 16; ++attempt) {
      std::string cand = per_component(name, rng, p, /*force=*/attempt == 15, op);
      if (cand != name && pytok::is_identifier(cand)) return cand;
    }
    throw NoApplicableSite("cannot perturb name '" + name + "' with " + spec.name);
  }

  // Word-level ops: replace component words, rejoin in the original
  // convention.
  auto words = split_name(name);
  if (words.empty()) throw NoApplicableSite("empty name");
  Tagger tagger(&providers.lexicon);

  auto options_for = [&](const std::string& w) -> std::vector<std::string> {
    if (spec.name == "FuncRenameSynonymSubstitution") return providers.lexicon.synonyms(w);
    Pos pos = tagger.tag(w);
    if (pos != Pos::noun && pos != Pos::verb) pos = Pos::noun;
    return providers.inflector.variants(w, pos);
  };

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (!options_for(words[i]).empty()) candidates.push_back(i);
  if (candidates.empty())
    throw NoApplicableSite("no rewritable component word in '" + name + "'");

  for (int attempt = 0; attempt < 16; ++attempt) {
    auto out = words;
    bool did = false;
    for (std::size_t i : candidates) {
      if (!rng.bernoulli(p)) continue;
      auto opts = options_for(words[i]);
      out[i] = opts[rng.uniform_index(opts.size())];
      did = true;
    }
    if (!did) {  // guarantee at least one substitution
      std::size_t i = candidates[rng.uniform_index(candidates.size())];
      auto opts = options_for(words[i]);
      out[i] = opts[rng.uniform_index(opts.size())];
    }
    std::string cand = rejoin(name, out);
    if (cand != name && pytok::is_identifier(cand)) return cand;
  }
  throw NoApplicableSite("cannot perturb name '" + name + "' with " + spec.name);
}

RenameOutcome apply_function_rename(const Task& task, const PromptDocument& doc,
                                    const TransformSpec& spec, std::uint64_t seed,
                                    const Providers& providers) {
  const std::string& old_name = task.entry_point;
  RenameOutcome out{task.prompt, task.entry_point, task.test_source, false, false};

  std::string new_name;
  if (spec.name == "CamelCase") {
    new_name = camel_case_toggle(old_name);
    if (new_name == old_name) return out;  // single-word name: documented no-op
    if (doc.blacklist.count(new_name))
      throw NoApplicableSite("CamelCase rename of '" + old_name + "' collides");
  } else {
    Rng rng(seed);
    bool found = false;
    for (int attempt = 0; attempt < 16 && !found; ++attempt) {
      new_name = perturb_name(old_name, spec, rng, providers);
      found = !doc.blacklist.count(new_name);
    }
    if (!found)
      throw NoApplicableSite("all rename candidates for '" + old_name + "' collide");
  }

  out.prompt = pytok::replace_identifier(task.prompt, old_name, new_name);
  out.test_source = pytok::replace_identifier(task.test_source, old_name, new_name);
  out.entry_point = new_name;
  out.changed = true;
  return out;
}

}  // namespace robeval
