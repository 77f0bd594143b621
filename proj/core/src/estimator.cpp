#include "sigmaq/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace sigmaq {

EstimatorResult summarize(const std::vector<double>& values, double bias_budget) {
  EstimatorResult out;
  out.n = values.size();
  out.bias_budget = bias_budget;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    out.std_error = std::sqrt(sample_variance(values) / static_cast<double>(values.size()));
  }
  return out;
}

double sample_variance(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

unsigned default_thread_count() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = default_thread_count();
  const std::size_t workers = std::min<std::size_t>(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> evaluate_samples(std::size_t n, unsigned threads,
                                     const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(n);
  parallel_for(n, threads, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kPass:
      return "PASS";
    case Verdict::kFail:
      return "FAIL";
    case Verdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "FAIL";
}

double IdentityReport::pooled_stderr() const noexcept {
  return std::hypot(lhs.std_error, rhs.std_error);
}

double z_score(const EstimatorResult& lhs, const EstimatorResult& rhs) noexcept {
  const double diff = lhs.mean - rhs.mean;
  const double se = std::hypot(lhs.std_error, rhs.std_error);
  if (se > 0.0) return diff / se;
  const double scale = std::max({1.0, std::abs(lhs.mean), std::abs(rhs.mean)});
  if (std::abs(diff) <= 1e-12 * scale) return 0.0;
  return diff > 0.0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
}

Verdict decide(const EstimatorResult& lhs, const EstimatorResult& rhs, double z_crit) noexcept {
  const double z = z_score(lhs, rhs);
  if (std::abs(z) <= z_crit) return Verdict::kPass;
  const double pooled = std::hypot(lhs.std_error, rhs.std_error);
  const double budget = lhs.bias_budget + rhs.bias_budget;
  if (budget > 0.0 && std::abs(lhs.mean - rhs.mean) <= budget + z_crit * pooled) {
    return Verdict::kInconclusive;
  }
  return Verdict::kFail;
}

IdentityReport make_report(std::string id, const EstimatorResult& lhs, const EstimatorResult& rhs,
                           double z_crit) {
  IdentityReport r;
  r.identity_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.z_crit = z_crit;
  r.z = z_score(lhs, rhs);
  r.verdict = decide(lhs, rhs, z_crit);
  r.n = std::max(lhs.n, rhs.n);
  return r;
}

}  // namespace sigmaq
