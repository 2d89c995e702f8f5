// robeval command-line driver: derive -> perturb -> generate -> exec ->
// report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "robeval/apply.hpp"
#include "robeval/catalog.hpp"
#include "robeval/dataset_io.hpp"
#include "robeval/exec_harness.hpp"
#include "robeval/metrics.hpp"
#include "robeval/providers.hpp"
#include "robeval/pyfacade.hpp"
#include "robeval/report.hpp"

namespace fs = std::filesystem;
using namespace robeval;

namespace {

std::vector<TransformSpec> select_transforms(const std::string& family,
                                             const std::string& transform) {
  if (transform != "all") return {catalog_lookup(transform)};
  if (family.empty()) return catalog();
  return catalog_family(family_from_name(family));
}

Providers make_providers(const std::string& lexicon_path) {
  Providers p;
  if (!lexicon_path.empty()) p.lexicon = Lexicon::load(lexicon_path);
  return p;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  out << text;
}

int cmd_derive(const std::string& dataset, const std::string& out) {
  auto tasks = load_tasks(dataset);
  std::vector<Task> derived;
  derived.reserve(tasks.size());
  for (const auto& t : tasks) derived.push_back(derive_partial(t));
  write_tasks(out, derived);
  std::cerr << "derived " << derived.size() << " partial tasks -> " << out << "\n";
  return 0;
}

int cmd_perturb(const std::string& dataset, const std::string& family,
                const std::string& transform, int s, std::uint64_t seed,
                const std::string& out, const std::string& lexicon_path) {
  auto tasks = load_tasks(dataset);
  auto specs = select_transforms(family, transform);
  Providers providers = make_providers(lexicon_path);
  PyAnalyzer an;

  bool as_dir = specs.size() > 1 || fs::is_directory(out) ||
                (!out.ends_with(".jsonl") && !out.ends_with(".json"));
  if (as_dir) fs::create_directories(out);

  for (const auto& spec : specs) {
    auto instances = perturb_dataset(an, tasks, spec, s, seed, providers);
    std::string path = as_dir ? (fs::path(out) / (spec.name + ".jsonl")).string() : out;
    write_instances(path, instances);
    std::cerr << spec.name << ": " << instances.size() << " instances -> " << path << "\n";
  }
  return 0;
}

int cmd_generate(const std::string& instances_path, const std::string& endpoint, int n,
                 double temperature, int max_tokens, const std::string& out) {
  auto instances = load_instances(instances_path);
  std::set<std::string> names;
  for (const auto& pi : instances) names.insert(pi.transform.name);
  if (names.size() > 1)
    throw ValidationError("instance file mixes transforms; generate one file per transform");

  CompletionClient client(endpoint);
  CompletionParams params;
  params.temperature = temperature;
  params.max_tokens = max_tokens;

  std::vector<CompletionRecord> records;
  for (const auto& pi : instances) {
    CompletionRecord r;
    r.task_id = pi.task_id;
    r.variant_index = pi.variant_index;
    r.completions = client.complete(pi.perturbed_prompt, n, params);
    records.push_back(std::move(r));
  }
  write_completions(out, records);
  std::cerr << records.size() << " completion records -> " << out << "\n";
  return 0;
}

int cmd_exec(const std::string& dataset, const std::string& instances_path,
             const std::string& completions_path, int jobs, double timeout_secs, bool trim,
             const std::string& interpreter, const std::string& out) {
  auto tasks = load_tasks(dataset);
  auto instances = load_instances(instances_path);
  auto records = load_completions(completions_path);

  CompletionMap completions;
  int n = 0;
  for (const auto& r : records) {
    completions[{r.task_id, r.variant_index}] = r.completions;
    n = static_cast<int>(r.completions.size());
  }
  if (n == 0) throw ValidationError("no completions in " + completions_path);

  ExecOptions opts;
  opts.jobs = jobs;
  opts.timeout_secs = timeout_secs;
  opts.trim_stop_sequences = trim;
  if (!interpreter.empty()) opts.interpreter = interpreter;
  if (const char* env = std::getenv("ROBEVAL_INTERPRETER"); env && interpreter.empty())
    opts.interpreter = env;

  CorrectnessMatrix m = evaluate_matrix(tasks, instances, completions, n, opts);
  write_matrix(out, m);
  std::cerr << "matrix " << m.task_count() << "x" << (m.s() + 1) << "x" << m.n() << " -> "
            << out << "\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& matrices,
               const std::vector<std::string>& instance_files, int k, int s,
               const std::string& format, bool ablation, const std::string& out) {
  if (matrices.size() != instance_files.size())
    throw ValidationError("--matrices and --instances must pair up one-to-one");
  if (matrices.empty()) throw ValidationError("no matrices given");

  std::vector<TransformRun> runs;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    auto m = load_matrix(matrices[i]);
    auto instances = load_instances(instance_files[i]);
    if (instances.empty()) throw ValidationError(instance_files[i] + " is empty");
    runs.push_back(make_run(instances.front().transform, std::move(m), instances));
  }

  std::string text;
  if (ablation) {
    for (int si = 1; si <= s; ++si) {
      auto rows = build_report(runs, k, si);
      text += format == "csv" ? render_csv(rows) : render_summary(rows);
    }
  } else {
    auto rows = build_report(runs, k, s);
    text = format == "csv" ? render_csv(rows) : render_summary(rows);
  }
  if (out.empty()) std::cout << text;
  else write_text(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robustness evaluation toolkit for code-generation prompts"};
  app.require_subcommand(1);

  std::string dataset, out, family, transform = "all", lexicon, endpoint, instances_path,
              completions_path, interpreter, format = "summary";
  std::vector<std::string> matrix_files, instance_files;
  int s = 5, n = 1, k = 1, jobs = 1, max_tokens = 512;
  std::uint64_t seed = 0;
  double timeout_secs = 10.0, temperature = 0.0;
  bool trim = false, ablation = false;

  auto* derive = app.add_subcommand("derive", "move half of each canonical solution into the prompt");
  derive->add_option("--dataset", dataset)->required();
  derive->add_option("--out", out)->required();

  auto* perturb = app.add_subcommand("perturb", "emit perturbed prompt instances");
  perturb->add_option("--dataset", dataset)->required();
  perturb->add_option("--family", family);
  perturb->add_option("--transform", transform);
  perturb->add_option("--s", s);
  perturb->add_option("--seed", seed);
  perturb->add_option("--lexicon", lexicon);
  perturb->add_option("--out", out)->required();

  auto* generate = app.add_subcommand("generate", "fetch completions from an HTTP endpoint");
  generate->add_option("--instances", instances_path)->required();
  generate->add_option("--endpoint", endpoint)->required();
  generate->add_option("--n", n);
  generate->add_option("--temperature", temperature);
  generate->add_option("--max-tokens", max_tokens);
  generate->add_option("--out", out)->required();

  auto* exec = app.add_subcommand("exec", "run completions against unit tests");
  exec->add_option("--dataset", dataset)->required();
  exec->add_option("--instances", instances_path)->required();
  exec->add_option("--completions", completions_path)->required();
  exec->add_option("--jobs", jobs);
  exec->add_option("--timeout-secs", timeout_secs);
  exec->add_flag("--trim-stop-sequences", trim);
  exec->add_option("--interpreter", interpreter);
  exec->add_option("--out", out)->required();

  auto* report = app.add_subcommand("report", "compute robustness metrics from matrices");
  report->add_option("--matrices", matrix_files)->required()->expected(-1);
  report->add_option("--instances", instance_files)->required()->expected(-1);
  report->add_option("--k", k);
  report->add_option("--s", s);
  report->add_option("--format", format)->check(CLI::IsMember({"csv", "summary"}));
  report->add_flag("--ablation", ablation);
  report->add_option("--out", out);

  try {
    app.parse(argc, argv);
    if (derive->parsed()) return cmd_derive(dataset, out);
    if (perturb->parsed()) return cmd_perturb(dataset, family, transform, s, seed, out, lexicon);
    if (generate->parsed())
      return cmd_generate(instances_path, endpoint, n, temperature, max_tokens, out);
    if (exec->parsed())
      return cmd_exec(dataset, instances_path, completions_path, jobs, timeout_secs, trim,
                      interpreter, out);
    if (report->parsed())
      return cmd_report(matrix_files, instance_files, k, s, format, ablation, out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExecEnvironmentError& e) {
    std::cerr << "environment error: " << e.what() << "\n";
    return 3;
  } catch (const CompletionError& e) {
    std::cerr << "environment error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
