#include "bmf/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "bmf/sampling.hpp"
#include "bmf/statistics.hpp"

namespace bmf {

EstimateResult estimate_from_samples(std::span<const double> samples, std::uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("estimate_from_samples: empty sample");
  EstimateResult r;
  r.trials = static_cast<int>(samples.size());
  r.seed = seed;
  r.point = mean(samples);
  const double sd = sample_stddev(samples, r.point);
  r.stderr_value = sd / std::sqrt(static_cast<double>(samples.size()));
  r.ci_low = r.point - 1.96 * r.stderr_value;
  r.ci_high = r.point + 1.96 * r.stderr_value;
  return r;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  if (count <= 0) return;
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<int> next{0};
  std::mutex err_mutex;
  int err_index = -1;
  std::exception_ptr err;

  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (err_index < 0 || i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::vector<std::vector<double>> per_trial_statistics(
    const DistributionSpec& dist, int degree, int trials, std::uint64_t seed, int jobs,
    std::size_t n_stats, const std::function<std::vector<double>(const Polynomial&, int)>& fn) {
  if (trials < 1) throw std::invalid_argument("per_trial_statistics: trials must be >= 1");

  std::vector<std::vector<double>> columns(n_stats,
                                           std::vector<double>(static_cast<std::size_t>(trials)));
  parallel_for(trials, jobs, [&](int trial) {
    const Polynomial p =
        sample_coefficients(dist, degree, seed, static_cast<std::uint64_t>(trial));
    std::vector<double> row;
    try {
      row = fn(p, trial);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string(e.what()) + " (seed=" + std::to_string(seed) +
                               ", stream_id=" + std::to_string(trial) + ")");
    }
    if (row.size() != n_stats) {
      throw std::logic_error("per_trial_statistics: statistic row has wrong arity (seed=" +
                             std::to_string(seed) + ", stream_id=" + std::to_string(trial) + ")");
    }
    for (std::size_t s = 0; s < n_stats; ++s) {
      columns[s][static_cast<std::size_t>(trial)] = row[s];
    }
  });
  return columns;
}

}  // namespace bmf
