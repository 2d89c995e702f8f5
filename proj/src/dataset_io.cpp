#include "robeval/dataset_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace robeval {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  return out;
}

json parse_line(const std::string& line, const std::string& path, int lineno) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
  }
}

}  // namespace

std::vector<Task> load_tasks(const std::string& path) {
  auto in = open_in(path);
  std::vector<Task> tasks;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    Task t;
    try {
      t = task_from_json(j);
    } catch (const std::exception& e) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!seen.insert(t.task_id).second)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": duplicate task id '" +
                            t.task_id + "'");
    tasks.push_back(std::move(t));
  }
  if (tasks.empty()) throw ValidationError(path + ": dataset contains no tasks");
  return tasks;
}

void write_tasks(const std::string& path, const std::vector<Task>& tasks) {
  auto out = open_out(path);
  for (const auto& t : tasks) out << to_json(t).dump() << "\n";
}

Task derive_partial(const Task& task) {
  // Physical lines of the solution after stripping trailing blank lines.
  std::string body = task.canonical_solution;
  while (true) {
    std::size_t nl = body.find_last_of('\n');
    std::string tail = nl == std::string::npos ? body : body.substr(nl + 1);
    bool blank = tail.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank || nl == std::string::npos) break;
    body.resize(nl);
  }
  if (body.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ValidationError("task '" + task.task_id + "' has an empty canonical solution");

  int k = 1;
  for (char c : body)
    if (c == '\n') ++k;
  int moved = k / 2;

  // Split point in the ORIGINAL solution so reassembly stays byte-exact.
  std::size_t split = 0;
  for (int i = 0; i < moved; ++i) split = task.canonical_solution.find('\n', split) + 1;

  Task out = task;
  out.prompt = task.prompt + task.canonical_solution.substr(0, split);
  out.canonical_solution = task.canonical_solution.substr(split);
  return out;
}

void write_instances(const std::string& path, const std::vector<PerturbedInstance>& instances) {
  auto out = open_out(path);
  for (const auto& pi : instances) out << to_json(pi).dump() << "\n";
}

std::vector<PerturbedInstance> load_instances(const std::string& path) {
  auto in = open_in(path);
  std::vector<PerturbedInstance> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(instance_from_json(parse_line(line, path, lineno)));
    } catch (const std::exception& e) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_completions(const std::string& path, const std::vector<CompletionRecord>& records) {
  auto out = open_out(path);
  for (const auto& r : records) {
    json j{{"task_id", r.task_id},
           {"variant_index", r.variant_index},
           {"completions", r.completions}};
    out << j.dump() << "\n";
  }
}

std::vector<CompletionRecord> load_completions(const std::string& path) {
  auto in = open_in(path);
  std::vector<CompletionRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    try {
      CompletionRecord r;
      r.task_id = j.at("task_id").get<std::string>();
      r.variant_index = j.at("variant_index").get<int>();
      r.completions = j.at("completions").get<std::vector<std::string>>();
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!out.empty()) {
    std::size_t n = out.front().completions.size();
    std::ostringstream offenders;
    for (const auto& r : out)
      if (r.completions.size() != n)
        offenders << " " << r.task_id << "/v" << r.variant_index << "=" << r.completions.size();
    if (!offenders.str().empty())
      throw ValidationError(path + ": non-uniform completion counts (expected " +
                            std::to_string(n) + "):" + offenders.str());
  }
  return out;
}

void write_matrix(const std::string& path, const CorrectnessMatrix& m) {
  auto out = open_out(path);
  out << to_json(m).dump() << "\n";
}

CorrectnessMatrix load_matrix(const std::string& path) {
  auto in = open_in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return matrix_from_json(json::parse(buf.str()));
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void export_matrix_csv(const std::string& path, const CorrectnessMatrix& m) {
  auto out = open_out(path);
  out << "task_id,variant,sample,correct\n";
  for (std::size_t t = 0; t < m.task_count(); ++t)
    for (int v = 0; v <= m.s(); ++v)
      for (int i = 1; i <= m.n(); ++i)
        out << m.tasks()[t] << "," << v << "," << i << "," << (m.get(t, v, i) ? 1 : 0) << "\n";
}

}  // namespace robeval
