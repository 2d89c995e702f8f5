#pragma once
// The six code-syntax and six code-format transforms over the partial-code
// span of derived prompts. Every emitted perturbation parses (with the
// analysis tail for incomplete prompts).

#include <cstdint>

#include "robeval/docstring_transforms.hpp"  // TransformOutcome
#include "robeval/document.hpp"
#include "robeval/providers.hpp"
#include "robeval/rng.hpp"
#include "robeval/types.hpp"

namespace robeval {

// Individual operations (exposed for focused tests). All take the analyzed
// document and throw NoApplicableSite when the needed construct is absent.
TransformOutcome insert_dead_code(PyAnalyzer& an, const PromptDocument& doc,
                                  const std::string& entry_point, Rng& rng);
TransformOutcome operand_swap(PyAnalyzer& an, const PromptDocument& doc,
                              const std::string& entry_point, Rng& rng);
TransformOutcome for_while_switch(PyAnalyzer& an, const PromptDocument& doc,
                                  const std::string& entry_point, Rng& rng);

enum class VarRenameKind { naive, rn, cb };
TransformOutcome var_rename(PyAnalyzer& an, const PromptDocument& doc,
                            const std::string& entry_point, VarRenameKind kind, Rng& rng,
                            const Providers& providers);

TransformOutcome tab_indent(const PromptDocument& doc);
TransformOutcome line_split(PyAnalyzer& an, const PromptDocument& doc);
TransformOutcome doc2comments(PyAnalyzer& an, const PromptDocument& doc,
                              const std::string& entry_point);
TransformOutcome newline_random(PyAnalyzer& an, const PromptDocument& doc, Rng& rng);
TransformOutcome newline_after_doc(PyAnalyzer& an, const PromptDocument& doc,
                                   const std::string& entry_point);
TransformOutcome newline_after_code(const PromptDocument& doc);

// Dispatch on spec.name for both the syntax and format families.
TransformOutcome apply_code_transform(PyAnalyzer& an, const PromptDocument& doc,
                                      const std::string& entry_point, const TransformSpec& spec,
                                      std::uint64_t seed, const Providers& providers);

}  // namespace robeval
