#pragma once
// The six function-name perturbations. Renames are applied consistently to
// the prompt (def line, docstring mentions) and to the unit-test source, and
// the entry point is updated.

#include <cstdint>
#include <string>
#include <vector>

#include "robeval/document.hpp"
#include "robeval/providers.hpp"
#include "robeval/rng.hpp"
#include "robeval/types.hpp"

namespace robeval {

// "find_char_long" -> {"find","char","long"}; camel humps split too.
std::vector<std::string> split_name(const std::string& name);
std::string join_snake(const std::vector<std::string>& words);
std::string join_camel(const std::vector<std::string>& words);

// snake -> camel when the name contains "_", camel -> snake otherwise.
// Single lowercase words are returned unchanged. Involution on multi-word
// names.
std::string camel_case_toggle(const std::string& name);

// Randomized rename candidate for one catalog spec. Guaranteed to differ
// from name and be a valid identifier, or throws NoApplicableSite (e.g. no
// lexicon synonym for any component word).
std::string perturb_name(const std::string& name, const TransformSpec& spec, Rng& rng,
                         const Providers& providers);

struct RenameOutcome {
  std::string prompt;
  std::string entry_point;
  std::string test_source;
  bool changed = false;
  bool degraded = false;
};

// Full rename pipeline: derive the new name (retrying blacklist collisions,
// bounded), then rewrite every identifier-token occurrence in prompt and
// tests.
RenameOutcome apply_function_rename(const Task& task, const PromptDocument& doc,
                                    const TransformSpec& spec, std::uint64_t seed,
                                    const Providers& providers);

}  // namespace robeval
