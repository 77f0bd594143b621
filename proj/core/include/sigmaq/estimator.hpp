#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace sigmaq {

/// Mean and standard error of a Monte Carlo estimate plus the documented
/// discretization allowance.
struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  double bias_budget = 0.0;

  /// An exactly known value: zero standard error.
  static EstimatorResult exact(double value, std::size_t n = 0) { return {value, 0.0, n, 0.0}; }
};

/// Mean and sample standard error of `values`, summed in index order.
EstimatorResult summarize(const std::vector<double>& values, double bias_budget = 0.0);

/// Sample variance (n - 1 denominator) in index order.
double sample_variance(const std::vector<double>& values);

/// Number of worker threads to use when `requested` is 0.
unsigned default_thread_count() noexcept;

/// Calls fn(i) for i in [0, n) on `threads` workers (0 = hardware default).
/// Indices are split into contiguous blocks; fn must only write to slots
/// owned by index i, which keeps every result independent of the schedule.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Evaluates fn(i) for every index and returns the values in index order.
std::vector<double> evaluate_samples(std::size_t n, unsigned threads,
                                     const std::function<double(std::size_t)>& fn);

enum class Verdict { kPass, kFail, kInconclusive };

const char* to_string(Verdict v) noexcept;

/// Paired comparison of two estimates of the same quantity.
struct IdentityReport {
  std::string identity_id;
  EstimatorResult lhs;
  EstimatorResult rhs;
  double z = 0.0;
  double z_crit = 4.0;
  Verdict verdict = Verdict::kPass;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double step = 0.0;
  double horizon = 0.0;
  /// Auxiliary named estimates (e.g. one-sided masses) that make up lhs/rhs.
  std::vector<std::pair<std::string, EstimatorResult>> components;
  std::string note;

  double bias_budget() const noexcept { return lhs.bias_budget + rhs.bias_budget; }
  double difference() const noexcept { return lhs.mean - rhs.mean; }
  double pooled_stderr() const noexcept;
};

/// z = (lhs - rhs) / sqrt(se_l^2 + se_r^2); +-inf when both standard errors
/// vanish and the means differ, 0 when they agree.
double z_score(const EstimatorResult& lhs, const EstimatorResult& rhs) noexcept;

/// PASS when |z| <= z_crit. Otherwise INCONCLUSIVE when the gap is covered
/// by the bias budgets plus z_crit pooled standard errors, else FAIL.
Verdict decide(const EstimatorResult& lhs, const EstimatorResult& rhs, double z_crit) noexcept;

IdentityReport make_report(std::string id, const EstimatorResult& lhs, const EstimatorResult& rhs,
                           double z_crit);

}  // namespace sigmaq
