#include "robeval/types.hpp"

namespace robeval {

std::string family_name(Family f) {
  switch (f) {
    case Family::docstring: return "docstring";
    case Family::func_name: return "func_name";
    case Family::syntax: return "syntax";
    case Family::format: return "format";
  }
  throw std::logic_error("bad family");
}

Family family_from_name(const std::string& s) {
  if (s == "docstring") return Family::docstring;
  if (s == "func_name") return Family::func_name;
  if (s == "syntax") return Family::syntax;
  if (s == "format") return Family::format;
  throw ValidationError("unknown family: " + s);
}

CorrectnessMatrix::CorrectnessMatrix(std::vector<std::string> tasks, int s, int n)
    : tasks_(std::move(tasks)), s_(s), n_(n) {
  if (s_ < 0 || n_ < 1) throw ValidationError("matrix dimensions must satisfy s >= 0, n >= 1");
  cells_.assign(tasks_.size() * (s_ + 1) * n_, 0);
  filled_.assign(cells_.size(), 0);
}

std::size_t CorrectnessMatrix::flat(std::size_t task, int variant, int sample) const {
  if (task >= tasks_.size() || variant < 0 || variant > s_ || sample < 1 || sample > n_)
    throw ValidationError("matrix index out of range");
  return (task * (s_ + 1) + variant) * n_ + (sample - 1);
}

bool CorrectnessMatrix::get(std::size_t task, int variant, int sample) const {
  return cells_[flat(task, variant, sample)] != 0;
}

void CorrectnessMatrix::set(std::size_t task, int variant, int sample, bool correct) {
  std::size_t i = flat(task, variant, sample);
  cells_[i] = correct ? 1 : 0;
  filled_[i] = 1;
}

bool CorrectnessMatrix::is_set(std::size_t task, int variant, int sample) const {
  return filled_[flat(task, variant, sample)] != 0;
}

bool CorrectnessMatrix::fully_populated() const {
  for (auto f : filled_)
    if (!f) return false;
  return true;
}

std::size_t CorrectnessMatrix::task_index(const std::string& task_id) const {
  for (std::size_t i = 0; i < tasks_.size(); ++i)
    if (tasks_[i] == task_id) return i;
  throw ValidationError("task not in matrix: " + task_id);
}

json to_json(const Task& t) {
  return json{{"task_id", t.task_id},
              {"prompt", t.prompt},
              {"canonical_solution", t.canonical_solution},
              {"test", t.test_source},
              {"entry_point", t.entry_point},
              {"language", t.language}};
}

Task task_from_json(const json& j) {
  Task t;
  t.task_id = j.at("task_id").get<std::string>();
  t.prompt = j.at("prompt").get<std::string>();
  t.canonical_solution = j.at("canonical_solution").get<std::string>();
  // "test" is the canonical field name; "test_source" accepted as alias.
  if (j.contains("test"))
    t.test_source = j.at("test").get<std::string>();
  else
    t.test_source = j.at("test_source").get<std::string>();
  t.entry_point = j.at("entry_point").get<std::string>();
  if (j.contains("language")) t.language = j.at("language").get<std::string>();
  if (t.task_id.empty()) throw ValidationError("task_id must be non-empty");
  return t;
}

json to_json(const TransformSpec& s) {
  return json{{"family", family_name(s.family)},
              {"name", s.name},
              {"params", s.params},
              {"deterministic", s.deterministic}};
}

TransformSpec transform_spec_from_json(const json& j) {
  TransformSpec s;
  s.family = family_from_name(j.at("family").get<std::string>());
  s.name = j.at("name").get<std::string>();
  s.params = j.at("params").get<std::map<std::string, double>>();
  s.deterministic = j.at("deterministic").get<bool>();
  return s;
}

json to_json(const PerturbedInstance& pi) {
  json j{{"task_id", pi.task_id},
         {"transform", to_json(pi.transform)},
         {"variant_index", pi.variant_index},
         {"seed", pi.seed},
         {"perturbed_prompt", pi.perturbed_prompt},
         {"changed", pi.changed},
         {"applicable", pi.applicable},
         {"degraded", pi.degraded}};
  if (pi.new_entry_point) j["new_entry_point"] = *pi.new_entry_point;
  if (pi.new_test_source) j["new_test_source"] = *pi.new_test_source;
  return j;
}

PerturbedInstance instance_from_json(const json& j) {
  PerturbedInstance pi;
  pi.task_id = j.at("task_id").get<std::string>();
  pi.transform = transform_spec_from_json(j.at("transform"));
  pi.variant_index = j.at("variant_index").get<int>();
  pi.seed = j.at("seed").get<std::uint64_t>();
  pi.perturbed_prompt = j.at("perturbed_prompt").get<std::string>();
  pi.changed = j.at("changed").get<bool>();
  pi.applicable = j.value("applicable", true);
  pi.degraded = j.value("degraded", false);
  if (j.contains("new_entry_point")) pi.new_entry_point = j.at("new_entry_point").get<std::string>();
  if (j.contains("new_test_source")) pi.new_test_source = j.at("new_test_source").get<std::string>();
  return pi;
}

json to_json(const CorrectnessMatrix& m) {
  json cells = json::array();
  for (std::size_t t = 0; t < m.task_count(); ++t) {
    json variants = json::array();
    for (int v = 0; v <= m.s(); ++v) {
      json samples = json::array();
      for (int i = 1; i <= m.n(); ++i) samples.push_back(m.get(t, v, i));
      variants.push_back(std::move(samples));
    }
    cells.push_back(std::move(variants));
  }
  return json{{"tasks", m.tasks()}, {"s", m.s()}, {"n", m.n()}, {"cells", std::move(cells)}};
}

CorrectnessMatrix matrix_from_json(const json& j) {
  CorrectnessMatrix m(j.at("tasks").get<std::vector<std::string>>(), j.at("s").get<int>(),
                      j.at("n").get<int>());
  const json& cells = j.at("cells");
  if (cells.size() != m.task_count()) throw ValidationError("matrix cells/tasks mismatch");
  for (std::size_t t = 0; t < m.task_count(); ++t) {
    if (cells[t].size() != static_cast<std::size_t>(m.s() + 1))
      throw ValidationError("matrix variant dimension mismatch");
    for (int v = 0; v <= m.s(); ++v) {
      if (cells[t][v].size() != static_cast<std::size_t>(m.n()))
        throw ValidationError("matrix sample dimension mismatch");
      for (int i = 1; i <= m.n(); ++i) m.set(t, v, i, cells[t][v][i - 1].get<bool>());
    }
  }
  return m;
}

}  // namespace robeval
