#pragma once
// Builds the structured PromptDocument view of a task's prompt.

#include "robeval/pyfacade.hpp"
#include "robeval/types.hpp"

namespace robeval {

// Locates the docstring, signature, and partial-code spans of task.prompt
// and extracts the identifier blacklist from prompt + canonical solution.
// Throws ValidationError when the prompt cannot be analyzed.
PromptDocument build_prompt_document(PyAnalyzer& an, const Task& task);

// Replaces doc.full_text[span] with replacement, returning the new text.
std::string splice(const std::string& text, ByteRange span, const std::string& replacement);

}  // namespace robeval
