#include "robeval/document.hpp"

#include "robeval/pytok.hpp"

namespace robeval {

namespace {

// End of the line containing byte pos (exclusive of the newline).
std::size_t line_end_at(const std::string& text, std::size_t pos) {
  std::size_t nl = text.find('\n', pos);
  return nl == std::string::npos ? text.size() : nl;
}

// First byte of the line after the one containing pos; text.size() if last.
std::size_t next_line_start(const std::string& text, std::size_t pos) {
  std::size_t nl = text.find('\n', pos);
  return nl == std::string::npos ? text.size() : nl + 1;
}

bool has_nonblank(const std::string& text, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i)
    if (text[i] != ' ' && text[i] != '\t' && text[i] != '\n' && text[i] != '\r') return true;
  return false;
}

ByteRange find_signature(const std::string& prompt, const std::string& entry) {
  auto toks = pytok::tokenize(prompt);
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].kind != pytok::TokKind::keyword || toks[i].text(prompt) != "def") continue;
    if (toks[i + 1].kind != pytok::TokKind::identifier || toks[i + 1].text(prompt) != entry)
      continue;
    // Scan forward for the header-closing colon at bracket depth zero.
    int depth = 0;
    for (std::size_t j = i + 2; j < toks.size(); ++j) {
      auto t = toks[j].text(prompt);
      if (toks[j].kind == pytok::TokKind::op) {
        if (t == "(" || t == "[" || t == "{") ++depth;
        else if (t == ")" || t == "]" || t == "}") --depth;
        else if (t == ":" && depth == 0)
          return {toks[i].range.start, line_end_at(prompt, toks[j].range.start)};
      }
    }
    break;
  }
  throw ValidationError("entry point '" + entry + "' has no def header in prompt");
}

}  // namespace

std::string splice(const std::string& text, ByteRange span, const std::string& replacement) {
  if (span.end > text.size() || span.start > span.end)
    throw ValidationError("splice span out of range");
  return text.substr(0, span.start) + replacement + text.substr(span.end);
}

PromptDocument build_prompt_document(PyAnalyzer& an, const Task& task) {
  auto unit = analysis_unit(an, task.prompt);
  if (!unit)
    throw ValidationError("prompt for task '" + task.task_id + "' cannot be analyzed");
  Analysis a = an.analyze(*unit, task.entry_point);

  PromptDocument doc;
  doc.full_text = task.prompt;
  doc.signature_span = find_signature(task.prompt, task.entry_point);
  doc.blacklist = extract_blacklist(an, task.prompt, task.canonical_solution);

  std::size_t body_start = next_line_start(task.prompt, doc.signature_span.end);
  if (a.docstring && a.docstring->literal.end <= task.prompt.size()) {
    doc.docstring_span = a.docstring->content;
    body_start = next_line_start(task.prompt, a.docstring->literal.end);
    // Multi-statement docstring lines ("""x"""; code) do not occur in this
    // corpus; the partial region starts on the next physical line.
  }
  if (has_nonblank(task.prompt, body_start, task.prompt.size()))
    doc.partial_code_span = ByteRange{body_start, task.prompt.size()};
  return doc;
}

}  // namespace robeval
