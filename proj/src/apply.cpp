#include "robeval/apply.hpp"

#include "robeval/code_transforms.hpp"
#include "robeval/docstring_transforms.hpp"
#include "robeval/name_transforms.hpp"
#include "robeval/rng.hpp"

namespace robeval {

std::vector<PerturbedInstance> perturb_task(PyAnalyzer& an, const Task& task,
                                            const TransformSpec& spec, int s,
                                            std::uint64_t master_seed,
                                            const Providers& providers) {
  if (s < 1) throw ValidationError("s must be >= 1");
  PromptDocument doc = build_prompt_document(an, task);

  std::vector<PerturbedInstance> out;
  auto base = [&](int variant) {
    PerturbedInstance pi;
    pi.task_id = task.task_id;
    pi.transform = spec;
    pi.variant_index = variant;
    pi.seed = derive_seed(master_seed, task.task_id, spec.name, variant);
    pi.perturbed_prompt = task.prompt;
    return pi;
  };
  out.push_back(base(0));  // nominal

  int variants = spec.deterministic ? 1 : s;
  for (int v = 1; v <= variants; ++v) {
    PerturbedInstance pi = base(v);
    try {
      switch (spec.family) {
        case Family::docstring: {
          auto r = apply_docstring_transform(doc, spec, pi.seed, providers);
          pi.perturbed_prompt = r.prompt;
          pi.changed = r.changed;
          pi.degraded = r.degraded;
          break;
        }
        case Family::func_name: {
          auto r = apply_function_rename(task, doc, spec, pi.seed, providers);
          pi.perturbed_prompt = r.prompt;
          pi.changed = r.changed;
          pi.degraded = r.degraded;
          if (r.changed) {
            pi.new_entry_point = r.entry_point;
            pi.new_test_source = r.test_source;
          }
          break;
        }
        case Family::syntax:
        case Family::format: {
          auto r = apply_code_transform(an, doc, task.entry_point, spec, pi.seed, providers);
          pi.perturbed_prompt = r.prompt;
          pi.changed = r.changed;
          pi.degraded = r.degraded;
          break;
        }
      }
    } catch (const NoApplicableSite&) {
      pi.applicable = false;
      pi.perturbed_prompt = task.prompt;
      pi.changed = false;
    }
    out.push_back(std::move(pi));
  }
  return out;
}

std::vector<PerturbedInstance> perturb_dataset(PyAnalyzer& an, const std::vector<Task>& tasks,
                                               const TransformSpec& spec, int s,
                                               std::uint64_t master_seed,
                                               const Providers& providers) {
  std::vector<PerturbedInstance> out;
  for (const auto& t : tasks) {
    auto part = perturb_task(an, t, spec, s, master_seed, providers);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace robeval
