#include "robeval/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace robeval {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

std::string fmt_rd(const std::optional<double>& rd) { return rd ? fmt(*rd) : "—"; }

ReportRow row_for(const TransformRun& run, int k, int s) {
  ReportRow row;
  row.transform = run.spec.name;
  row.category = family_name(run.spec.family);
  row.k = k;
  row.s = run.spec.deterministic ? 1 : s;
  row.n_tasks = run.included.size();
  row.n_excluded = run.excluded;
  row.degraded = run.degraded;
  row.nominal_pass = nominal_pass(run.matrix, k, &run.included);
  row.rp = robust_pass(run.matrix, row.s, k, &run.included);
  row.rd = robust_drop(row.nominal_pass, row.rp);
  row.rr = robust_relative(run.matrix, row.s, k, &run.included);
  return row;
}

}  // namespace

TransformRun make_run(const TransformSpec& spec, CorrectnessMatrix matrix,
                      const std::vector<PerturbedInstance>& instances) {
  TransformRun run;
  run.spec = spec;
  run.matrix = std::move(matrix);

  std::set<std::string> inapplicable;
  for (const auto& pi : instances) {
    if (pi.transform.name != spec.name) continue;
    if (!pi.applicable) inapplicable.insert(pi.task_id);
    if (pi.degraded) run.degraded = true;
  }
  for (std::size_t t = 0; t < run.matrix.task_count(); ++t) {
    if (inapplicable.count(run.matrix.tasks()[t])) ++run.excluded;
    else run.included.push_back(t);
  }
  return run;
}

std::vector<ReportRow> build_report(const std::vector<TransformRun>& runs, int k, int s) {
  std::vector<ReportRow> rows;
  for (const auto& run : runs) rows.push_back(row_for(run, k, s));

  // Category aggregates, in family declaration order.
  std::map<Family, std::vector<const TransformRun*>> by_family;
  for (const auto& run : runs) by_family[run.spec.family].push_back(&run);

  for (const auto& [family, members] : by_family) {
    // Reconcile task sets: a task participates only when applicable under
    // every member transform.
    std::set<std::size_t> keep(members.front()->included.begin(),
                               members.front()->included.end());
    for (const auto* run : members) {
      std::set<std::size_t> own(run->included.begin(), run->included.end());
      std::set<std::size_t> both;
      std::set_intersection(keep.begin(), keep.end(), own.begin(), own.end(),
                            std::inserter(both, both.begin()));
      keep = std::move(both);
    }
    std::vector<std::size_t> include(keep.begin(), keep.end());
    std::vector<const CorrectnessMatrix*> matrices;
    bool degraded = false;
    for (const auto* run : members) {
      matrices.push_back(&run->matrix);
      degraded = degraded || run->degraded;
    }
    CategoryMetrics cm = category_worst(matrices, s, k, &include);

    ReportRow row;
    row.transform = "*";
    row.category = family_name(family);
    row.k = k;
    row.s = s;
    row.nominal_pass = cm.nominal;
    row.rp = cm.rp;
    row.rd = cm.rd;
    row.rr = cm.rr;
    row.n_tasks = cm.n_tasks;
    row.n_excluded = members.front()->matrix.task_count() - cm.n_tasks;
    row.degraded = degraded;
    rows.push_back(row);
  }
  return rows;
}

std::string render_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "transform,category,k,s,nominal_pass,rp,rd,rr,n_tasks,n_excluded,degraded\n";
  for (const auto& r : rows) {
    os << r.transform << "," << r.category << "," << r.k << "," << r.s << ","
       << fmt(r.nominal_pass) << "," << fmt(r.rp) << "," << fmt_rd(r.rd) << "," << fmt(r.rr)
       << "," << r.n_tasks << "," << r.n_excluded << "," << (r.degraded ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string render_summary(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(30) << "transform" << std::setw(11) << "category"
     << std::setw(4) << "k" << std::setw(4) << "s" << std::setw(10) << "nominal"
     << std::setw(10) << "rp" << std::setw(10) << "rd" << std::setw(10) << "rr"
     << std::setw(8) << "tasks" << std::setw(6) << "excl" << "flags\n";
  for (const auto& r : rows) {
    std::string flags;
    if (r.degraded) flags += "degraded ";
    os << std::left << std::setw(30) << r.transform << std::setw(11) << r.category
       << std::setw(4) << r.k << std::setw(4) << r.s << std::setw(10) << fmt(r.nominal_pass)
       << std::setw(10) << fmt(r.rp) << std::setw(10) << fmt_rd(r.rd) << std::setw(10)
       << fmt(r.rr) << std::setw(8) << r.n_tasks << std::setw(6) << r.n_excluded << flags
       << "\n";
  }
  return os.str();
}

}  // namespace robeval
