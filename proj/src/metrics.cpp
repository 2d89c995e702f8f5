#include "robeval/metrics.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace robeval {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

void check_nck(int n, int c, int k) {
  if (n < 1 || k < 1 || k > n) throw ValidationError("pass@k requires 1 <= k <= n");
  if (c < 0 || c > n) throw ValidationError("pass@k requires 0 <= c <= n");
}

cpp_int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// C(n-c,k)/C(n,k) as the correctly rounded double of the exact rational;
// the miss probability shared by all metrics.
double miss_ratio(int n, int c, int k) {
  if (n - c < k) return 0.0;
  cpp_rational miss(binom(n - c, k), binom(n, k));
  return miss.convert_to<double>();
}

std::vector<std::size_t> all_tasks(const CorrectnessMatrix& m) {
  std::vector<std::size_t> v(m.task_count());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::size_t> resolve(const CorrectnessMatrix& m, TaskFilter include) {
  if (!include) return all_tasks(m);
  for (auto t : *include)
    if (t >= m.task_count()) throw ValidationError("task filter index out of range");
  return *include;
}

void require_populated(const CorrectnessMatrix& m) {
  if (!m.fully_populated()) throw ValidationError("correctness matrix is incomplete");
}

}  // namespace

double pass_at_k(int n, int c, int k) {
  check_nck(n, c, k);
  // Correctly rounded double of the exact rational (C(n,k)-C(n-c,k))/C(n,k),
  // so the value agrees bit-for-bit with exhaustive subset enumeration.
  cpp_rational p(binom(n, k) - binom(n - c, k), binom(n, k));
  return p.convert_to<double>();
}

double pass_at_k_exact(int n, int c, int k) {
  check_nck(n, c, k);
  if (n - c < k) return 1.0;
  cpp_int num = binom(n - c, k), den = binom(n, k);
  return 1.0 - num.convert_to<double>() / den.convert_to<double>();
}

double nominal_pass(const CorrectnessMatrix& m, int k, TaskFilter include) {
  require_populated(m);
  auto tasks = resolve(m, include);
  if (tasks.empty()) return 0.0;
  double sum = 0.0;
  for (auto t : tasks) {
    int c = 0;
    for (int i = 1; i <= m.n(); ++i) c += m.get(t, 0, i) ? 1 : 0;
    sum += pass_at_k(m.n(), c, k);
  }
  return sum / static_cast<double>(tasks.size());
}

double robust_pass(const CorrectnessMatrix& m, int s, int k, TaskFilter include) {
  require_populated(m);
  if (s < 1) throw ValidationError("s must be >= 1");
  int use_s = std::min(s, m.s());
  auto tasks = resolve(m, include);
  if (tasks.empty()) return 0.0;
  double sum = 0.0;
  for (auto t : tasks) {
    int rc = 0;
    for (int i = 1; i <= m.n(); ++i) {
      bool all = true;
      for (int j = 1; j <= use_s && all; ++j) all = m.get(t, j, i);
      rc += all ? 1 : 0;
    }
    sum += pass_at_k(m.n(), rc, k);
  }
  return sum / static_cast<double>(tasks.size());
}

std::optional<double> robust_drop(double pass_k, double rp_k) {
  if (pass_k == 0.0) return std::nullopt;
  return (pass_k - rp_k) / pass_k;
}

double robust_relative(const CorrectnessMatrix& m, int s, int k, TaskFilter include) {
  require_populated(m);
  if (s < 1) throw ValidationError("s must be >= 1");
  int use_s = std::min(s, m.s());
  auto tasks = resolve(m, include);
  if (tasks.empty()) return 0.0;
  double sum = 0.0;
  for (auto t : tasks) {
    int rc_minus = 0, rc_plus = 0;
    for (int i = 1; i <= m.n(); ++i) {
      bool nominal = m.get(t, 0, i);
      bool all = true, any = false;
      for (int j = 1; j <= use_s; ++j) {
        bool cell = m.get(t, j, i);
        all = all && cell;
        any = any || cell;
      }
      if (nominal && !all) ++rc_minus;
      if (!nominal && any) ++rc_plus;
    }
    sum += 2.0 - miss_ratio(m.n(), rc_minus, k) - miss_ratio(m.n(), rc_plus, k);
  }
  return sum / static_cast<double>(tasks.size());
}

CategoryMetrics category_worst(const std::vector<const CorrectnessMatrix*>& matrices, int s,
                               int k, TaskFilter include) {
  if (matrices.empty()) throw ValidationError("category needs at least one matrix");
  const CorrectnessMatrix& first = *matrices.front();
  for (const auto* m : matrices) {
    require_populated(*m);
    if (m->tasks() != first.tasks() || m->n() != first.n())
      throw ValidationError("category matrices disagree on task set or n");
  }

  auto tasks = resolve(first, include);
  CategoryMetrics out;
  out.n_tasks = tasks.size();
  if (tasks.empty()) return out;

  double sum_nom = 0.0, sum_rp = 0.0, sum_rr = 0.0;
  for (auto t : tasks) {
    int c_nom = 0, rc = 0, rc_minus = 0, rc_plus = 0;
    for (int i = 1; i <= first.n(); ++i) {
      bool nominal = first.get(t, 0, i);
      bool all = true, any = false;
      for (const auto* m : matrices) {
        int use_s = std::min(s, m->s());
        for (int j = 1; j <= use_s; ++j) {
          bool cell = m->get(t, j, i);
          all = all && cell;
          any = any || cell;
        }
      }
      c_nom += nominal ? 1 : 0;
      rc += all ? 1 : 0;
      if (nominal && !all) ++rc_minus;
      if (!nominal && any) ++rc_plus;
    }
    sum_nom += pass_at_k(first.n(), c_nom, k);
    sum_rp += pass_at_k(first.n(), rc, k);
    sum_rr += 2.0 - miss_ratio(first.n(), rc_minus, k) - miss_ratio(first.n(), rc_plus, k);
  }
  double n_t = static_cast<double>(tasks.size());
  out.nominal = sum_nom / n_t;
  out.rp = sum_rp / n_t;
  out.rr = sum_rr / n_t;
  out.rd = robust_drop(out.nominal, out.rp);
  return out;
}

}  // namespace robeval
