#pragma once
// The ten docstring-family perturbations. Each rewrites only the docstring
// content span; blacklist words (identifiers, builtin type names) survive
// verbatim and bytes outside the span are untouched.

#include <cstdint>

#include "robeval/document.hpp"
#include "robeval/providers.hpp"
#include "robeval/types.hpp"

namespace robeval {

// Result of applying one transform to one prompt.
struct TransformOutcome {
  std::string prompt;
  bool changed = false;
  bool degraded = false;
};

// Dispatches on spec.name. Throws NoApplicableSite when the prompt has no
// docstring, ValidationError on unknown names.
TransformOutcome apply_docstring_transform(const PromptDocument& doc, const TransformSpec& spec,
                                           std::uint64_t seed, const Providers& providers);

}  // namespace robeval
