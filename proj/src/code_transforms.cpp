#include "robeval/code_transforms.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "robeval/pytok.hpp"

namespace robeval {

namespace {

std::size_t line_start_at(const std::string& text, std::size_t pos) {
  while (pos > 0 && text[pos - 1] != '\n') --pos;
  return pos;
}

std::size_t next_line_start(const std::string& text, std::size_t pos) {
  std::size_t nl = text.find('\n', pos);
  return nl == std::string::npos ? text.size() : nl + 1;
}

Analysis analyze_doc(PyAnalyzer& an, const PromptDocument& doc, const std::string& entry) {
  auto unit = analysis_unit(an, doc.full_text);
  if (!unit) throw ValidationError("prompt cannot be analyzed");
  return an.analyze(*unit, entry);
}

bool prompt_parses(PyAnalyzer& an, const std::string& prompt) {
  return analysis_unit(an, prompt).has_value();
}

bool in_partial(const PromptDocument& doc, ByteRange span) {
  return doc.partial_code_span && span.start >= doc.partial_code_span->start &&
         span.end <= doc.partial_code_span->end;
}

// Visit candidate indices starting at a random position, wrapping around.
template <typename Fn>
bool try_each(std::size_t count, Rng& rng, Fn&& fn) {
  if (count == 0) return false;
  std::size_t start = rng.uniform_index(count);
  for (std::size_t off = 0; off < count; ++off)
    if (fn((start + off) % count)) return true;
  return false;
}

bool positive_int_literal(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool negative_int_literal(const std::string& s) {
  return s.size() > 1 && s[0] == '-' && positive_int_literal(s.substr(1));
}

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

std::string lstrip(std::string s) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t nl = s.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(s.substr(start));
      break;
    }
    lines.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

}  // namespace

TransformOutcome insert_dead_code(PyAnalyzer& an, const PromptDocument& doc,
                                  const std::string& entry_point, Rng& rng) {
  if (!doc.partial_code_span)
    throw NoApplicableSite("no partial code for DeadCodeInserter");
  Analysis a = analyze_doc(an, doc, entry_point);

  std::vector<StatementRef> anchors;
  for (const auto& st : a.statements)
    if (in_partial(doc, st.span)) anchors.push_back(st);

  auto fresh_var = [&] {
    for (int i = 0;; ++i) {
      std::string cand = "iter_" + std::to_string(i);
      if (!doc.blacklist.count(cand)) return cand;
    }
  };

  TransformOutcome out;
  auto attempt = [&](std::size_t insert_at, int indent, const std::string& stmt_block,
                     bool use_loop) {
    std::string ind(indent, ' ');
    std::string wrapper = use_loop ? "for " + fresh_var() + " in range(0):" : "if False:";
    std::string block = ind + wrapper + "\n" + stmt_block + "\n";
    std::string cand = doc.full_text.substr(0, insert_at) + block + doc.full_text.substr(insert_at);
    if (!prompt_parses(an, cand)) return false;
    out.prompt = std::move(cand);
    out.changed = true;
    return true;
  };

  if (anchors.empty()) {
    // Empty partial region: insert a pass-bodied dead block at its start.
    std::size_t at = doc.partial_code_span->start;
    int indent = 4;
    if (doc.docstring_span) {
      std::size_t ls = line_start_at(doc.full_text, doc.docstring_span->start);
      indent = static_cast<int>(doc.docstring_span->start - ls >= 3
                                    ? doc.docstring_span->start - ls - 3
                                    : 4);
    }
    if (indent <= 0) indent = 4;
    std::string body(static_cast<std::size_t>(indent) + 4, ' ');
    if (attempt(at, indent, body + "pass", rng.bernoulli(0.5))) return out;
    throw NoApplicableSite("dead-code insertion never parsed");
  }

  bool ok = try_each(anchors.size() * 2, rng, [&](std::size_t idx) {
    const StatementRef& anchor = anchors[idx % anchors.size()];
    bool use_loop = rng.bernoulli(0.5);
    std::size_t anchor_line = line_start_at(doc.full_text, anchor.span.start);
    std::string ind(anchor.indent, ' ');

    // Copy the adjacent statement when small enough, else a bare pass.
    std::string stmt_text =
        doc.full_text.substr(anchor_line, anchor.span.end - anchor_line);
    std::string body;
    if (pytok::tokenize(stmt_text).size() <= 24) {
      auto lines = split_lines(stmt_text);
      for (auto& line : lines) line = "    " + line;
      body = join_lines(lines);
    } else {
      body = ind + "    pass";
    }
    return attempt(anchor_line, anchor.indent, body, use_loop);
  });
  if (!ok) throw NoApplicableSite("dead-code insertion never parsed");
  return out;
}

TransformOutcome operand_swap(PyAnalyzer& an, const PromptDocument& doc,
                              const std::string& entry_point, Rng& rng) {
  Analysis a = analyze_doc(an, doc, entry_point);
  std::vector<ComparisonRef> sites;
  for (const auto& c : a.comparisons)
    if (in_partial(doc, c.span)) sites.push_back(c);
  if (sites.empty()) throw NoApplicableSite("no comparison in partial code");

  auto mirror = [](const std::string& op) -> std::string {
    if (op == "<") return ">";
    if (op == ">") return "<";
    if (op == "<=") return ">=";
    if (op == ">=") return "<=";
    return op;  // == and != are symmetric
  };

  TransformOutcome out;
  bool ok = try_each(sites.size(), rng, [&](std::size_t i) {
    const ComparisonRef& c = sites[i];
    std::string left = doc.full_text.substr(c.left.start, c.left.size());
    std::string right = doc.full_text.substr(c.right.start, c.right.size());
    std::string repl = right + " " + mirror(c.op) + " " + left;
    std::string cand = splice(doc.full_text, c.span, repl);
    if (!prompt_parses(an, cand)) return false;
    out.prompt = std::move(cand);
    out.changed = true;
    return true;
  });
  if (!ok) throw NoApplicableSite("no comparison swap parsed");
  return out;
}

TransformOutcome for_while_switch(PyAnalyzer& an, const PromptDocument& doc,
                                  const std::string& entry_point, Rng& rng) {
  Analysis a = analyze_doc(an, doc, entry_point);

  struct Site {
    bool is_for;
    std::size_t idx;
  };
  std::vector<Site> sites;
  for (std::size_t i = 0; i < a.for_range_loops.size(); ++i)
    if (in_partial(doc, a.for_range_loops[i].span)) sites.push_back({true, i});
  for (std::size_t i = 0; i < a.while_counter_loops.size(); ++i) {
    const auto& w = a.while_counter_loops[i];
    if (in_partial(doc, ByteRange{w.init_span.start, w.while_span.end}))
      sites.push_back({false, i});
  }
  if (sites.empty()) throw NoApplicableSite("no convertible loop in partial code");

  const std::string& text = doc.full_text;
  TransformOutcome out;

  auto for_to_while = [&](const ForRangeLoop& f) -> bool {
    std::string start = "0", stop, step = "1";
    if (f.range_args.size() == 1) {
      stop = f.range_args[0];
    } else {
      start = f.range_args[0];
      stop = f.range_args[1];
      if (f.range_args.size() == 3) step = f.range_args[2];
    }
    std::string op;
    if (positive_int_literal(step)) op = "<";
    else if (negative_int_literal(step)) op = ">";
    else return false;  // unknown step sign

    std::string ind(f.indent, ' ');
    std::string body_block;
    int body_indent = f.body_indent;
    std::size_t header_nl = text.find('\n', f.span.start);
    if (header_nl == std::string::npos || f.body.start < header_nl) {
      // Single-line loop: re-home the inline body one level deeper.
      body_indent = f.indent + 4;
      body_block = std::string(body_indent, ' ') + text.substr(f.body.start, f.body.size());
    } else {
      std::size_t body_line = f.body.start - static_cast<std::size_t>(f.body_indent);
      body_block = text.substr(body_line, f.body.end - body_line);
    }
    std::string bind(body_indent, ' ');
    // span.start sits after the line's indentation, so the first replacement
    // line carries no indent of its own.
    std::string repl = f.target + " = " + start + "\n" + ind + "while " + f.target + " " +
                       op + " " + stop + ":\n" + body_block + "\n" + bind + f.target +
                       " += " + step;
    std::string cand = splice(text, f.span, repl);
    if (!prompt_parses(an, cand)) return false;
    out.prompt = std::move(cand);
    out.changed = true;
    return true;
  };

  auto while_to_for = [&](const WhileCounterLoop& w) -> bool {
    std::string limit;
    if (w.op == "<") {
      if (!positive_int_literal(w.step_src)) return false;
      limit = w.limit_src;
    } else if (w.op == "<=") {
      if (!positive_int_literal(w.step_src)) return false;
      limit = "(" + w.limit_src + ") + 1";
    } else if (w.op == ">") {
      if (!negative_int_literal(w.step_src)) return false;
      limit = w.limit_src;
    } else if (w.op == ">=") {
      if (!negative_int_literal(w.step_src)) return false;
      limit = "(" + w.limit_src + ") - 1";
    } else {
      return false;
    }
    std::string args = w.init_src + ", " + limit;
    if (w.step_src != "1") args += ", " + w.step_src;

    std::string body_block;
    if (w.body_wo_incr.empty()) {
      body_block = std::string(w.body_indent, ' ') + "pass";
    } else {
      std::size_t body_line = w.body_wo_incr.start - static_cast<std::size_t>(w.body_indent);
      body_block = text.substr(body_line, w.body_wo_incr.end - body_line);
    }
    // init_span.start also sits after the indentation (see above).
    std::string repl = "for " + w.var + " in range(" + args + "):\n" + body_block;
    std::string cand = splice(text, ByteRange{w.init_span.start, w.while_span.end}, repl);
    if (!prompt_parses(an, cand)) return false;
    out.prompt = std::move(cand);
    out.changed = true;
    return true;
  };

  bool ok = try_each(sites.size(), rng, [&](std::size_t i) {
    return sites[i].is_for ? for_to_while(a.for_range_loops[sites[i].idx])
                           : while_to_for(a.while_counter_loops[sites[i].idx]);
  });
  if (!ok) throw NoApplicableSite("no loop conversion parsed");
  return out;
}

TransformOutcome var_rename(PyAnalyzer& an, const PromptDocument& doc,
                            const std::string& entry_point, VarRenameKind kind, Rng& rng,
                            const Providers& providers) {
  Analysis a = analyze_doc(an, doc, entry_point);
  if (a.variable_frequencies.empty())
    throw NoApplicableSite("partial code binds no variable");

  // Most frequent variable; ties resolved to the lexicographically smallest
  // (map iteration order is already sorted by name).
  std::string target;
  int best = -1;
  for (const auto& [name, count] : a.variable_frequencies)
    if (count > best) {
      target = name;
      best = count;
    }

  auto naive_name = [&] {
    for (int i = 0;; ++i) {
      std::string cand = "VAR_" + std::to_string(i);
      if (!doc.blacklist.count(cand)) return cand;
    }
  };

  TransformOutcome out;
  std::string new_name;
  if (kind == VarRenameKind::naive) {
    new_name = naive_name();
  } else if (kind == VarRenameKind::rn) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      // Six characters, three letters and three digits interleaved, leading
      // character alphabetic.
      std::string cand;
      for (int i = 0; i < 3; ++i) {
        cand.push_back(static_cast<char>('a' + rng.uniform_index(26)));
        cand.push_back(static_cast<char>('0' + rng.uniform_index(10)));
      }
      if (!doc.blacklist.count(cand)) {
        new_name = cand;
        break;
      }
    }
    if (new_name.empty()) throw NoApplicableSite("random-name retries exhausted");
  } else {
    std::string masked = pytok::replace_identifier(doc.full_text, target, "<mask>");
    int masks = pytok::count_identifier(doc.full_text, target);
    auto blk = doc.blacklist;
    blk.insert(target);
    NameSuggestion s = providers.name_suggester->suggest(masked, masks, blk);
    out.degraded = s.degraded;
    if (pytok::is_identifier(s.name) && !doc.blacklist.count(s.name)) {
      new_name = s.name;
    } else {
      new_name = naive_name();
      out.degraded = true;
    }
  }

  out.prompt = pytok::replace_identifier(doc.full_text, target, new_name);
  out.changed = out.prompt != doc.full_text;
  if (out.changed && !prompt_parses(an, out.prompt))
    throw NoApplicableSite("renamed prompt does not parse");
  return out;
}

TransformOutcome tab_indent(const PromptDocument& doc) {
  const std::string& text = doc.full_text;
  std::size_t body_start = next_line_start(text, doc.signature_span.end);
  std::string head = text.substr(0, body_start);
  auto lines = split_lines(text.substr(body_start));

  // Direction from the first indented body line.
  bool to_spaces = false;
  for (const auto& line : lines)
    if (!line.empty() && (line[0] == ' ' || line[0] == '\t')) {
      to_spaces = line[0] == '\t';
      break;
    }

  for (auto& line : lines) {
    std::size_t w = 0;
    while (w < line.size() && (line[w] == ' ' || line[w] == '\t')) ++w;
    if (w == 0 || w == line.size()) continue;  // blank lines untouched
    std::string indent = line.substr(0, w), rest = line.substr(w);
    std::string converted;
    if (to_spaces) {
      for (char c : indent) converted += c == '\t' ? std::string(4, ' ') : std::string(1, c);
    } else {
      std::size_t spaces = 0;
      for (char c : indent) {
        if (c == ' ') {
          if (++spaces == 4) {
            converted.push_back('\t');
            spaces = 0;
          }
        } else {
          converted.append(spaces, ' ');
          spaces = 0;
          converted.push_back(c);
        }
      }
      converted.append(spaces, ' ');
    }
    line = converted + rest;
  }

  TransformOutcome out;
  out.prompt = head + join_lines(lines);
  out.changed = out.prompt != text;
  return out;
}

TransformOutcome line_split(PyAnalyzer& an, const PromptDocument& doc) {
  if (!doc.partial_code_span) throw NoApplicableSite("no partial code for LineSplit");
  const std::string& text = doc.full_text;
  const ByteRange partial = *doc.partial_code_span;

  // Longest (by bytes) partial-code line; ties break to the earliest.
  std::size_t best_start = std::string::npos, best_len = 0;
  for (std::size_t pos = partial.start; pos < partial.end;) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos || end > partial.end) end = partial.end;
    if (end - pos > best_len) {
      best_len = end - pos;
      best_start = pos;
    }
    pos = end + 1;
  }
  if (best_start == std::string::npos) throw NoApplicableSite("empty partial code");

  const std::string line = text.substr(best_start, best_len);
  auto toks = pytok::tokenize(line);
  if (toks.size() < 3) throw NoApplicableSite("longest line too short to split");

  std::string indent = line.substr(0, line.find_first_not_of(" \t"));

  // Token boundaries ordered by distance from the midpoint.
  struct Boundary {
    std::size_t pos;
    int depth;
  };
  std::vector<Boundary> bounds;
  int depth = 0;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    auto t = toks[i].text(line);
    if (toks[i].kind == pytok::TokKind::op) {
      if (t == "(" || t == "[" || t == "{") ++depth;
      else if (t == ")" || t == "]" || t == "}") --depth;
    }
    bounds.push_back({toks[i + 1].range.start, depth});
  }
  std::size_t mid = line.size() / 2;
  std::stable_sort(bounds.begin(), bounds.end(), [&](const Boundary& a, const Boundary& b) {
    auto da = a.pos > mid ? a.pos - mid : mid - a.pos;
    auto db = b.pos > mid ? b.pos - mid : mid - b.pos;
    return da < db;
  });

  for (const auto& b : bounds) {
    std::string first = rstrip(line.substr(0, b.pos));
    std::string second = indent + "    " + lstrip(line.substr(b.pos));
    std::string repl =
        b.depth > 0 ? first + "\n" + second : first + " \\\n" + second;
    std::string cand = splice(text, ByteRange{best_start, best_start + best_len}, repl);
    if (prompt_parses(an, cand)) {
      TransformOutcome out;
      out.prompt = std::move(cand);
      out.changed = true;
      return out;
    }
  }
  throw NoApplicableSite("no valid split point on longest line");
}

TransformOutcome doc2comments(PyAnalyzer& an, const PromptDocument& doc,
                              const std::string& entry_point) {
  Analysis a = analyze_doc(an, doc, entry_point);
  if (!a.docstring || a.docstring->literal.end > doc.full_text.size())
    throw NoApplicableSite("no docstring for Doc2Comments");
  const DocstringLoc& d = *a.docstring;
  const std::string& text = doc.full_text;

  std::string ind(d.indent, ' ');
  std::string content = text.substr(d.content.start, d.content.size());
  std::vector<std::string> comment_lines;
  for (const auto& line : split_lines(content)) {
    std::string body = lstrip(rstrip(line));
    comment_lines.push_back(body.empty() ? ind + "#" : ind + "# " + body);
  }
  // Drop leading/trailing empty comment rows produced by the quote layout.
  while (!comment_lines.empty() && comment_lines.front() == ind + "#")
    comment_lines.erase(comment_lines.begin());
  while (!comment_lines.empty() && comment_lines.back() == ind + "#") comment_lines.pop_back();
  if (comment_lines.empty()) comment_lines.push_back(ind + "#");

  std::size_t from = line_start_at(text, d.literal.start);
  std::string cand = splice(text, ByteRange{from, d.literal.end}, join_lines(comment_lines));
  if (!prompt_parses(an, cand)) throw NoApplicableSite("comment rewrite does not parse");
  TransformOutcome out;
  out.prompt = std::move(cand);
  out.changed = true;
  return out;
}

namespace {

// Line-boundary insertion points that are not inside any string token.
std::vector<std::size_t> blank_line_points(const std::string& text) {
  std::vector<ByteRange> strings;
  for (const auto& t : pytok::tokenize(text, /*keep_comments=*/true))
    if (t.kind == pytok::TokKind::string) strings.push_back(t.range);
  auto inside_string = [&](std::size_t p) {
    for (const auto& r : strings)
      if (p > r.start && p < r.end) return true;
    return false;
  };
  std::vector<std::size_t> points;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    bool boundary = i == 0 || text[i - 1] == '\n' || i == text.size();
    if (boundary && !inside_string(i)) points.push_back(i);
  }
  return points;
}

}  // namespace

TransformOutcome newline_random(PyAnalyzer& an, const PromptDocument& doc, Rng& rng) {
  auto points = blank_line_points(doc.full_text);
  if (points.empty()) throw NoApplicableSite("no insertion point");

  std::size_t count = 1 + rng.uniform_index(3);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < count; ++i) chosen.push_back(points[rng.uniform_index(points.size())]);
  std::sort(chosen.rbegin(), chosen.rend());

  std::string cand = doc.full_text;
  for (std::size_t p : chosen) {
    // At end-of-text without a trailing newline, terminate the line first.
    std::string ins = (p == cand.size() && !cand.empty() && cand.back() != '\n') ? "\n\n" : "\n";
    cand.insert(p, ins);
  }
  if (!prompt_parses(an, cand)) throw NoApplicableSite("blank-line insertion does not parse");
  TransformOutcome out;
  out.prompt = std::move(cand);
  out.changed = true;
  return out;
}

TransformOutcome newline_after_doc(PyAnalyzer& an, const PromptDocument& doc,
                                   const std::string& entry_point) {
  Analysis a = analyze_doc(an, doc, entry_point);
  if (!a.docstring || a.docstring->literal.end > doc.full_text.size())
    throw NoApplicableSite("no docstring for NewlineAfterDoc");
  std::size_t at = next_line_start(doc.full_text, a.docstring->literal.end);
  TransformOutcome out;
  out.prompt = doc.full_text;
  out.prompt.insert(at, "\n");
  out.changed = true;
  if (!prompt_parses(an, out.prompt)) throw NoApplicableSite("insertion does not parse");
  return out;
}

TransformOutcome newline_after_code(const PromptDocument& doc) {
  TransformOutcome out;
  out.prompt = doc.full_text;
  if (out.prompt.empty() || out.prompt.back() != '\n') out.prompt.push_back('\n');
  out.prompt.push_back('\n');
  out.changed = true;
  return out;
}

TransformOutcome apply_code_transform(PyAnalyzer& an, const PromptDocument& doc,
                                      const std::string& entry_point, const TransformSpec& spec,
                                      std::uint64_t seed, const Providers& providers) {
  Rng rng(seed);
  if (spec.name == "DeadCodeInserter") return insert_dead_code(an, doc, entry_point, rng);
  if (spec.name == "OperandSwap") return operand_swap(an, doc, entry_point, rng);
  if (spec.name == "ForWhileTransformer") return for_while_switch(an, doc, entry_point, rng);
  if (spec.name == "VarRenamerNaive")
    return var_rename(an, doc, entry_point, VarRenameKind::naive, rng, providers);
  if (spec.name == "VarRenamerRN")
    return var_rename(an, doc, entry_point, VarRenameKind::rn, rng, providers);
  if (spec.name == "VarRenamerCB")
    return var_rename(an, doc, entry_point, VarRenameKind::cb, rng, providers);
  if (spec.name == "TabIndent") return tab_indent(doc);
  if (spec.name == "LineSplit") return line_split(an, doc);
  if (spec.name == "Doc2Comments") return doc2comments(an, doc, entry_point);
  if (spec.name == "NewlineRandom") return newline_random(an, doc, rng);
  if (spec.name == "NewlineAfterDoc") return newline_after_doc(an, doc, entry_point);
  if (spec.name == "NewlineAfterCode") return newline_after_code(doc);
  throw ValidationError("unknown code transform: " + spec.name);
}

}  // namespace robeval
