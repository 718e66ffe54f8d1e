#pragma once

#include "lvs/linalg.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace lvs {

/// Half the l1 distance. Throws InputError on a length mismatch.
double tv_distance(const Distribution& p, const Distribution& q);
double l1_distance(const Distribution& p, const Distribution& q);

/// Relative frequencies of `draws` over [0, size).
Distribution empirical_distribution(const std::vector<Index>& draws, std::size_t size);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Linear-interpolated quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Runs fn(i) for i in [0, count) on up to `threads` workers; results are
/// stored by index so the output does not depend on scheduling.
template <typename T>
std::vector<T> parallel_map(std::size_t count, std::size_t threads, const std::function<T(std::size_t)>& fn);

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

template <typename T>
std::vector<T> parallel_map(std::size_t count, std::size_t threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace lvs
