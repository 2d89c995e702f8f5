#pragma once
// Character- and word-level natural-text perturbations applied to docstring
// text (and to function-name component words). Randomized ops draw
// independent Bernoulli decisions per unit from the caller's Rng; blacklist
// words survive verbatim.

#include <set>
#include <string>

#include "robeval/providers.hpp"
#include "robeval/rng.hpp"

namespace robeval {

// Shipped ~130-word English stopword list.
const std::set<std::string>& stopwords();

// Fixed QWERTY adjacency; empty string for characters with no neighbors.
const std::string& qwerty_neighbors(char lower);

struct TextPerturbContext {
  const std::set<std::string>* blacklist = nullptr;  // words never touched
};

// Each alphabetic character replaced w.p. p by a keyboard-adjacent one.
std::string butterfingers(const std::string& text, double p, Rng& rng,
                          const TextPerturbContext& ctx = {});

// Each lowercase letter uppercased independently w.p. p.
std::string change_char_case(const std::string& text, double p, Rng& rng,
                             const TextPerturbContext& ctx = {});

// Non-overlapping adjacent pairs swapped, chosen left-to-right each w.p. p.
std::string swap_characters(const std::string& text, double p, Rng& rng,
                            const TextPerturbContext& ctx = {});

// Inserts a space at inter-character positions w.p. p_add; deletes existing
// spaces w.p. p_del.
std::string whitespace_perturb(const std::string& text, double p_add, double p_del, Rng& rng,
                               const TextPerturbContext& ctx = {});

// Non-blacklist, non-stopword words replaced w.p. p by a lexicon synonym.
std::string synonym_substitution(const std::string& text, double p, const Lexicon& lexicon,
                                 Rng& rng, const TextPerturbContext& ctx = {});

// Selected words get one synonym inserted immediately after.
std::string synonym_insertion(const std::string& text, double p, const Lexicon& lexicon,
                              Rng& rng, const TextPerturbContext& ctx = {});

// Random nouns/verbs replaced by an inflection sharing the coarse POS.
std::string inflectional_variation(const std::string& text, double p, const Tagger& tagger,
                                   const Inflector& inflector, Rng& rng,
                                   const TextPerturbContext& ctx = {});

// Deterministic, idempotent tense rewrites.
std::string tense_past(const std::string& text, const Tagger& tagger,
                       const Inflector& inflector, const TextPerturbContext& ctx = {});
std::string tense_future(const std::string& text, const Tagger& tagger,
                         const Inflector& inflector, const TextPerturbContext& ctx = {});

}  // namespace robeval
