#include "robeval/pyfacade.hpp"

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstdio>
#include <cstring>

#include <nlohmann/json.hpp>

#include "robeval/pytok.hpp"

namespace robeval {

namespace {

// Grammar helper: answers structural queries over stdin/stdout, one JSON
// object per line.
const char* kHelperScript = R"PY(
import ast, json, sys

def line_offsets(b):
    offs = [0]
    for i, ch in enumerate(b):
        if ch == 0x0A:
            offs.append(i + 1)
    return offs

def mkspan(offs, node):
    s = offs[node.lineno - 1] + node.col_offset
    e = offs[node.end_lineno - 1] + node.end_col_offset
    return [s, e]

OPS = {ast.Lt: '<', ast.Gt: '>', ast.LtE: '<=', ast.GtE: '>=', ast.Eq: '==', ast.NotEq: '!='}

def analyze(source, entry):
    try:
        tree = ast.parse(source)
    except (SyntaxError, ValueError, MemoryError, RecursionError) as ex:
        return {'ok': False, 'error': str(ex)}
    b = source.encode('utf-8')
    offs = line_offsets(b)
    res = {'ok': True}

    def seg(node):
        s, e = mkspan(offs, node)
        return b[s:e].decode('utf-8')

    fn = None
    for node in ast.walk(tree):
        if isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
            if node.name == entry:
                fn = node
                break
            if fn is None:
                fn = node
    if fn is not None and fn.body and isinstance(fn.body[0], ast.Expr) \
            and isinstance(fn.body[0].value, ast.Constant) and isinstance(fn.body[0].value.value, str):
        lit = fn.body[0].value
        s, e = mkspan(offs, lit)
        i = s
        while i < e and chr(b[i]).isalpha():
            i += 1
        q = b[i:i+1]
        qn = 3 if b[i:i+3] == q * 3 else 1
        res['docstring'] = {
            'content': [i + qn, e - qn], 'literal': [s, e],
            'indent': fn.body[0].col_offset,
            'line_start': fn.body[0].lineno, 'line_end': fn.body[0].end_lineno,
        }

    comps = []
    for node in ast.walk(tree):
        if isinstance(node, ast.Compare) and len(node.ops) == 1 and type(node.ops[0]) in OPS:
            ls, le = mkspan(offs, node.left)
            rs, re_ = mkspan(offs, node.comparators[0])
            comps.append({'span': mkspan(offs, node), 'left': [ls, le],
                          'right': [rs, re_], 'op': OPS[type(node.ops[0])],
                          'op_span': [le, rs]})
    res['comparisons'] = comps

    for_loops, while_loops, other = [], [], 0

    def body_span(stmts):
        s, _ = mkspan(offs, stmts[0])
        _, e = mkspan(offs, stmts[-1])
        return [s, e]

    def scan(stmts, depth):
        nonlocal other
        for idx, st in enumerate(stmts):
            if isinstance(st, ast.For):
                t, it = st.target, st.iter
                if (isinstance(t, ast.Name) and isinstance(it, ast.Call)
                        and isinstance(it.func, ast.Name) and it.func.id == 'range'
                        and 1 <= len(it.args) <= 3 and not it.keywords and not st.orelse):
                    for_loops.append({
                        'span': mkspan(offs, st), 'body': body_span(st.body),
                        'target': t.id, 'args': [seg(a) for a in it.args],
                        'indent': st.col_offset, 'body_indent': st.body[0].col_offset,
                    })
                else:
                    other += 1
            elif isinstance(st, ast.While):
                prev = stmts[idx - 1] if idx > 0 else None
                last = st.body[-1] if st.body else None
                ok = (prev is not None and isinstance(prev, ast.Assign)
                      and len(prev.targets) == 1 and isinstance(prev.targets[0], ast.Name)
                      and isinstance(st.test, ast.Compare) and len(st.test.ops) == 1
                      and type(st.test.ops[0]) in (ast.Lt, ast.Gt, ast.LtE, ast.GtE)
                      and isinstance(st.test.left, ast.Name)
                      and st.test.left.id == prev.targets[0].id
                      and isinstance(last, ast.AugAssign) and isinstance(last.op, ast.Add)
                      and isinstance(last.target, ast.Name)
                      and last.target.id == prev.targets[0].id
                      and len(st.body) >= 2 and not st.orelse)
                if ok:
                    while_loops.append({
                        'init_span': mkspan(offs, prev), 'while_span': mkspan(offs, st),
                        'incr_span': mkspan(offs, last),
                        'body_wo_incr': body_span(st.body[:-1]),
                        'var': prev.targets[0].id, 'init_src': seg(prev.value),
                        'limit_src': seg(st.test.comparators[0]), 'step_src': seg(last.value),
                        'op': OPS[type(st.test.ops[0])],
                        'indent': st.col_offset, 'body_indent': st.body[0].col_offset,
                    })
                else:
                    other += 1
            for sub in ast.iter_child_nodes(st):
                pass
            for name in ('body', 'orelse', 'finalbody'):
                sub = getattr(st, name, None)
                if isinstance(sub, list) and sub and isinstance(sub[0], ast.stmt):
                    scan(sub, depth + 1)
            for h in getattr(st, 'handlers', []):
                if h.body:
                    scan(h.body, depth + 1)

    scan(tree.body, 0)
    res['for_range_loops'] = for_loops
    res['while_counter_loops'] = while_loops
    res['other_loops'] = other

    stmts = []

    def collect(body, depth):
        for st in body:
            stmts.append({'span': mkspan(offs, st), 'line_start': st.lineno,
                          'line_end': st.end_lineno, 'indent': st.col_offset,
                          'depth': depth, 'kind': type(st).__name__})
            for name in ('body', 'orelse', 'finalbody'):
                sub = getattr(st, name, None)
                if isinstance(sub, list) and sub and isinstance(sub[0], ast.stmt):
                    collect(sub, depth + 1)
            for h in getattr(st, 'handlers', []):
                collect(h.body, depth + 1)

    collect(tree.body, 0)
    res['statements'] = stmts

    stored = set()
    counts = {}
    for node in ast.walk(tree):
        if isinstance(node, ast.Name):
            counts[node.id] = counts.get(node.id, 0) + 1
            if isinstance(node.ctx, (ast.Store, ast.Del)):
                stored.add(node.id)
        elif isinstance(node, ast.arg):
            stored.add(node.arg)
            counts[node.arg] = counts.get(node.arg, 0) + 1
    freqs = {k: v for k, v in counts.items() if k in stored and k != entry}
    res['variable_frequencies'] = freqs
    return res

for line in sys.stdin:
    if not line.strip():
        continue
    req = json.loads(line)
    op = req.get('op')
    if op == 'parse':
        try:
            ast.parse(req['source'])
            out = {'ok': True}
        except (SyntaxError, ValueError, MemoryError, RecursionError) as ex:
            out = {'ok': False, 'error': str(ex)}
    elif op == 'analyze':
        out = analyze(req['source'], req.get('entry', ''))
    elif op == 'ping':
        out = {'ok': True}
    else:
        out = {'ok': False, 'error': 'unknown op'}
    sys.stdout.write(json.dumps(out) + '\n')
    sys.stdout.flush()
)PY";

ByteRange span_of(const json& j) {
  return ByteRange{j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()};
}

}  // namespace

struct PyAnalyzer::Impl {
  pid_t pid = -1;
  FILE* to_child = nullptr;
  FILE* from_child = nullptr;

  Impl() {
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
      throw std::runtime_error("pipe() failed for grammar helper");
    pid = fork();
    if (pid < 0) throw std::runtime_error("fork() failed for grammar helper");
    if (pid == 0) {
      dup2(in_pipe[0], STDIN_FILENO);
      dup2(out_pipe[1], STDOUT_FILENO);
      close(in_pipe[0]);
      close(in_pipe[1]);
      close(out_pipe[0]);
      close(out_pipe[1]);
      execlp("python3", "python3", "-c", kHelperScript, (char*)nullptr);
      _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    to_child = fdopen(in_pipe[1], "w");
    from_child = fdopen(out_pipe[0], "r");
    if (!to_child || !from_child) throw std::runtime_error("fdopen() failed for grammar helper");
  }

  ~Impl() {
    if (to_child) fclose(to_child);
    if (from_child) fclose(from_child);
    if (pid > 0) {
      kill(pid, SIGKILL);
      waitpid(pid, nullptr, 0);
    }
  }

  json request(const json& req) {
    std::string line = req.dump();
    line.push_back('\n');
    if (fwrite(line.data(), 1, line.size(), to_child) != line.size() || fflush(to_child) != 0)
      throw std::runtime_error("grammar helper write failed (interpreter missing?)");
    std::string out;
    char buf[4096];
    while (fgets(buf, sizeof(buf), from_child)) {
      out += buf;
      if (!out.empty() && out.back() == '\n') break;
    }
    if (out.empty()) throw std::runtime_error("grammar helper produced no response");
    return json::parse(out);
  }
};

PyAnalyzer::PyAnalyzer() : impl_(std::make_unique<Impl>()) {
  impl_->request({{"op", "ping"}});
}

PyAnalyzer::~PyAnalyzer() = default;

bool PyAnalyzer::parse_ok(const std::string& source) {
  return impl_->request({{"op", "parse"}, {"source", source}}).at("ok").get<bool>();
}

Analysis PyAnalyzer::analyze(const std::string& source, const std::string& entry_point) {
  json r = impl_->request({{"op", "analyze"}, {"source", source}, {"entry", entry_point}});
  Analysis a;
  a.ok = r.at("ok").get<bool>();
  if (!a.ok) {
    a.error = r.value("error", "parse failure");
    throw ValidationError("parse failure: " + a.error);
  }
  if (r.contains("docstring")) {
    const json& d = r["docstring"];
    DocstringLoc loc;
    loc.content = span_of(d.at("content"));
    loc.literal = span_of(d.at("literal"));
    loc.indent = d.at("indent").get<int>();
    loc.line_start = d.at("line_start").get<int>();
    loc.line_end = d.at("line_end").get<int>();
    a.docstring = loc;
  }
  for (const json& c : r.at("comparisons")) {
    ComparisonRef ref;
    ref.span = span_of(c.at("span"));
    ref.left = span_of(c.at("left"));
    ref.right = span_of(c.at("right"));
    ref.op_span = span_of(c.at("op_span"));
    ref.op = c.at("op").get<std::string>();
    a.comparisons.push_back(ref);
  }
  for (const json& l : r.at("for_range_loops")) {
    ForRangeLoop loop;
    loop.span = span_of(l.at("span"));
    loop.body = span_of(l.at("body"));
    loop.target = l.at("target").get<std::string>();
    loop.range_args = l.at("args").get<std::vector<std::string>>();
    loop.indent = l.at("indent").get<int>();
    loop.body_indent = l.at("body_indent").get<int>();
    a.for_range_loops.push_back(loop);
  }
  for (const json& l : r.at("while_counter_loops")) {
    WhileCounterLoop loop;
    loop.init_span = span_of(l.at("init_span"));
    loop.while_span = span_of(l.at("while_span"));
    loop.incr_span = span_of(l.at("incr_span"));
    loop.body_wo_incr = span_of(l.at("body_wo_incr"));
    loop.var = l.at("var").get<std::string>();
    loop.init_src = l.at("init_src").get<std::string>();
    loop.limit_src = l.at("limit_src").get<std::string>();
    loop.step_src = l.at("step_src").get<std::string>();
    loop.op = l.at("op").get<std::string>();
    loop.indent = l.at("indent").get<int>();
    loop.body_indent = l.at("body_indent").get<int>();
    a.while_counter_loops.push_back(loop);
  }
  a.other_loops = r.at("other_loops").get<int>();
  for (const json& s : r.at("statements")) {
    StatementRef ref;
    ref.span = span_of(s.at("span"));
    ref.line_start = s.at("line_start").get<int>();
    ref.line_end = s.at("line_end").get<int>();
    ref.indent = s.at("indent").get<int>();
    ref.depth = s.at("depth").get<int>();
    ref.kind = s.at("kind").get<std::string>();
    a.statements.push_back(ref);
  }
  a.variable_frequencies = r.at("variable_frequencies").get<std::map<std::string, int>>();
  return a;
}

std::optional<std::string> analysis_unit(PyAnalyzer& an, const std::string& prompt) {
  if (an.parse_ok(prompt)) return prompt;
  std::string base = prompt;
  if (base.empty() || base.back() != '\n') base.push_back('\n');
  // Guess the open block's indent from the last non-blank line.
  int guess = 4;
  {
    std::size_t end = base.find_last_not_of(" \t\n");
    if (end != std::string::npos) {
      std::size_t ls = base.rfind('\n', end);
      ls = (ls == std::string::npos) ? 0 : ls + 1;
      int indent = 0;
      while (ls + indent < base.size() && base[ls + indent] == ' ') ++indent;
      guess = (base[end] == ':') ? indent + 4 : indent;
    }
  }
  for (int indent : {guess, 4, 8, 12, 0}) {
    std::string candidate = base + std::string(static_cast<std::size_t>(indent), ' ') + "pass\n";
    if (an.parse_ok(candidate)) return candidate;
  }
  return std::nullopt;
}

const std::set<std::string>& builtin_type_names() {
  static const std::set<std::string> names = {
      "int",   "float",     "complex", "bool",  "str",   "bytes", "bytearray",
      "list",  "tuple",     "dict",    "set",   "frozenset", "range", "object",
      "type",  "memoryview", "slice",  "None",  "True",  "False"};
  return names;
}

std::set<std::string> extract_blacklist(PyAnalyzer& an, const std::string& prompt,
                                        const std::string& canonical_solution) {
  std::string unit = prompt + canonical_solution;
  if (!an.parse_ok(unit)) {
    auto padded = analysis_unit(an, unit);
    if (!padded) throw ValidationError("extract_blacklist: prompt + solution does not parse");
  }
  std::set<std::string> out = builtin_type_names();
  for (const auto& t : pytok::tokenize(unit))
    if (t.kind == pytok::TokKind::identifier) out.emplace(t.text(unit));
  return out;
}

std::size_t longest_line(const std::string& code) {
  std::size_t best = 0, best_len = 0, idx = 0, start = 0;
  for (std::size_t i = 0; i <= code.size(); ++i) {
    if (i == code.size() || code[i] == '\n') {
      std::size_t len = i - start;
      if (len > best_len) {
        best_len = len;
        best = idx;
      }
      ++idx;
      start = i + 1;
    }
  }
  return best;
}

}  // namespace robeval
