#include "lvs/error.hpp"
#include "lvs/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lvs {

namespace {

constexpr std::size_t kMaxGrid = std::size_t{1} << 18;

// Probability of grid outcome y when the true phase is theta.
double fejer(double theta, std::size_t y, std::size_t m) {
  const double mm = static_cast<double>(m);
  const double x = std::numbers::pi * (theta - static_cast<double>(y) / mm);
  const double s = std::sin(x);
  if (std::abs(s) < 1e-12) return 1.0;
  const double num = std::sin(mm * x);
  return num * num / (mm * mm * s * s);
}

double lemma_bound(double a, std::size_t m) {
  const double mm = static_cast<double>(m);
  return 2.0 * std::numbers::pi * std::sqrt(std::max(0.0, a * (1.0 - a))) / mm +
         std::numbers::pi * std::numbers::pi / (mm * mm);
}

}  // namespace

double ae_simulate(double a, std::size_t m, Rng& rng) {
  if (m == 0) throw ParameterError("ae_simulate: M must be at least 1");
  if (!(a >= 0.0 && a <= 1.0)) {
    if (a > 1.0 && a < 1.0 + 1e-9) {
      a = 1.0;
    } else {
      throw ParameterError("ae_simulate: a must lie in [0, 1]");
    }
  }
  const double theta = std::asin(std::sqrt(a)) / std::numbers::pi;
  const auto centre = static_cast<std::size_t>(std::llround(theta * static_cast<double>(m))) % m;

  // Inverse CDF, visiting outcomes outward from the most likely one.
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t y = centre;
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t k = (step + 1) / 2;
    y = (step % 2 == 1) ? (centre + k) % m : (centre + m - k) % m;
    acc += fejer(theta, y, m);
    if (acc > u) break;
  }
  const double s = std::sin(std::numbers::pi * static_cast<double>(y) / static_cast<double>(m));
  return s * s;
}

double ae_boosted(double a, std::size_t m, std::size_t boost, Rng& rng) {
  if (boost == 0) throw ParameterError("ae_boosted: boost must be at least 1");
  std::vector<double> runs(boost);
  for (auto& v : runs) v = ae_simulate(a, m, rng);
  std::sort(runs.begin(), runs.end());
  if (boost % 2 == 1) return runs[boost / 2];
  return 0.5 * (runs[boost / 2 - 1] + runs[boost / 2]);
}

AmplitudeEstimate estimate_amplitude_relative(double a, double relerr, std::size_t m0, std::size_t boost, Rng& rng,
                                              CostLedger* ledger) {
  if (!(relerr > 0.0 && relerr < 1.0)) throw ParameterError("estimate_amplitude_relative: relerr must lie in (0, 1)");
  AmplitudeEstimate est;
  std::size_t m = std::max<std::size_t>(m0, 8);
  while (true) {
    est.value = ae_boosted(a, m, boost, rng);
    est.m = m;
    if (ledger) {
      ledger->ae_calls += boost;
      ledger->ae_iterations += boost * m;
    }
    if (est.value > 0.0 && lemma_bound(est.value, m) <= relerr * est.value) {
      est.converged = true;
      break;
    }
    if (m >= kMaxGrid) break;
    m = std::min(2 * m, kMaxGrid);
  }
  return est;
}

double encoded_score(const BlockEncoding& w, Index j, Side side) {
  if (side == Side::column) {
    if (j < 0 || j >= w.block_cols()) throw InputError("encoded_score: column index out of range");
    return w.block.col(j).squaredNorm();
  }
  if (j < 0 || j >= w.block_rows()) throw InputError("encoded_score: row index out of range");
  return w.block.row(j).squaredNorm();
}

double estimate_leverage_score(const BlockEncoding& w, Index j, double eps, std::size_t boost, Rng& rng, Side side,
                               CostLedger* ledger) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("estimate_leverage_score: eps must lie in (0, 1)");
  const double a = std::min(1.0, encoded_score(w, j, side));
  const auto m = static_cast<std::size_t>(std::ceil(std::numbers::pi / eps));
  if (ledger) {
    ledger->ae_calls += boost;
    ledger->ae_iterations += boost * m;
  }
  return ae_boosted(a, m, boost, rng);
}

AmplitudeEstimate estimate_score_relative(const BlockEncoding& w, Index j, Side side, double relerr, std::size_t m0,
                                          std::size_t boost, Rng& rng, CostLedger* ledger) {
  return estimate_amplitude_relative(std::min(1.0, encoded_score(w, j, side)), relerr, m0, boost, rng, ledger);
}

double estimate_rank(const BlockEncoding& w, double eps, Rng& rng, std::size_t boost, CostLedger* ledger) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("estimate_rank: eps must lie in (0, 1)");
  const double d = static_cast<double>(w.block_cols());
  const double a = std::min(1.0, w.block.squaredNorm() / d);
  if (a == 0.0) return 0.0;
  return d * estimate_amplitude_relative(a, eps, 8, boost, rng, ledger).value;
}

}  // namespace lvs
