#pragma once
// Transform dispatch: turns (task, transform spec, s, master seed) into the
// PerturbedInstance records, including the nominal variant 0.

#include <cstdint>
#include <vector>

#include "robeval/document.hpp"
#include "robeval/providers.hpp"
#include "robeval/types.hpp"

namespace robeval {

// Variant 0 is the nominal prompt; randomized transforms emit variants 1..s,
// deterministic ones a single variant 1. NoApplicableSite is absorbed into
// applicable=false records carrying the nominal prompt.
std::vector<PerturbedInstance> perturb_task(PyAnalyzer& an, const Task& task,
                                            const TransformSpec& spec, int s,
                                            std::uint64_t master_seed,
                                            const Providers& providers);

// All tasks x one transform, in task order.
std::vector<PerturbedInstance> perturb_dataset(PyAnalyzer& an, const std::vector<Task>& tasks,
                                               const TransformSpec& spec, int s,
                                               std::uint64_t master_seed,
                                               const Providers& providers);

}  // namespace robeval
