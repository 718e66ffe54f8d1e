#include "lvs/error.hpp"
#include "lvs/quantum.hpp"

#include <cmath>
#include <sstream>

namespace lvs {

PrecisionBudget precision_budget(double eps_hat, double delta, double alpha, double d, double k) {
  if (!(eps_hat > 0.0) || !(delta > 0.0) || !(alpha > 0.0) || !(d > 0.0) || !(k > 0.0)) {
    throw ParameterError("precision_budget: all inputs must be positive");
  }
  PrecisionBudget b;
  b.eps_hat = eps_hat;
  const double root = std::sqrt(k / d);
  b.eps_tilde = eps_hat * root;
  b.eps_tilde_safe = root * (std::sqrt(1.0 + eps_hat / (1.0 + eps_hat)) - 1.0);

  auto excess = [&](double e) { return (2.0 * std::sqrt(d * k) + d * e) * e; };
  b.guard_literal = excess(b.eps_tilde) <= k * eps_hat;
  b.guard_safe = excess(b.eps_tilde_safe) <= k * eps_hat * (1.0 + 1e-12);
  const double x = excess(b.eps_tilde_safe);
  b.tv_bound = x < k ? x / (k - x) : 1.0;

  const double e = b.eps_tilde_safe;
  const double log_term = std::max(1.0, std::log(8.0 * std::sqrt(alpha) / (e * delta)));
  b.eps_raw = e * e * delta * delta / (256.0 * alpha) / (log_term * log_term);
  return b;
}

void CostLedger::add(const CostLedger& other) {
  block_applications += other.block_applications;
  amplification_rounds += other.amplification_rounds;
  ae_iterations += other.ae_iterations;
  ae_calls += other.ae_calls;
  if (theoretical_cost_string.empty()) theoretical_cost_string = other.theoretical_cost_string;
}

void CostLedger::export_to(SolveReport& report) const {
  report.cost_counters["block_applications"] += static_cast<double>(block_applications);
  report.cost_counters["amplification_rounds"] += static_cast<double>(amplification_rounds);
  report.cost_counters["ae_iterations"] += static_cast<double>(ae_iterations);
  report.cost_counters["ae_calls"] += static_cast<double>(ae_calls);
  if (!theoretical_cost_string.empty()) report.notes.push_back("cost: " + theoretical_cost_string);
}

Distribution PureState::marginal(Side role) const {
  if (shape.size() != 2 || roles.size() != 2) throw InputError("PureState: expected two registers");
  const int axis = roles[0] == role ? 0 : (roles[1] == role ? 1 : -1);
  if (axis < 0) throw InputError(std::string("PureState: no register with role ") + to_string(role));
  const Index outer = shape[0];
  const Index inner = shape[1];
  Vector w = Vector::Zero(shape[static_cast<std::size_t>(axis)]);
  for (Index i = 0; i < outer; ++i) {
    for (Index j = 0; j < inner; ++j) {
      const double amp = amplitudes(i * inner + j);
      w(axis == 0 ? i : j) += amp * amp;
    }
  }
  return Distribution::from_weights(w);
}

namespace {

// State sum_j |j> (x) M|j> / ||M||_F for M of shape (inner x outer).
PureState entangled_state(const Matrix& m, Side outer_role, Side inner_role) {
  const double fro = m.norm();
  if (!(fro > 0.0)) throw DegenerateError("leverage state: encoded matrix is zero, empty support");
  PureState s;
  s.shape = {m.cols(), m.rows()};
  s.roles = {outer_role, inner_role};
  s.amplitudes.resize(m.size());
  // Column-major storage of M already puts column j contiguously.
  s.amplitudes = Eigen::Map<const Vector>(m.data(), m.size()) / fro;
  return s;
}

std::string cost_string(const BlockEncoding& w, double fro2) {
  std::ostringstream out;
  const Index n = w.block_rows();
  const Index d = w.block_cols();
  const double rr = std::max(fro2, 1e-300);
  const double root = std::sqrt(static_cast<double>(std::min(n, d)) / rr);
  if (w.svt) {
    const double factor = w.svt->source_alpha / w.svt->source_sigma_r;
    out << "(T*alpha/sigma_r)*sqrt(min(n,d)/r) with alpha=" << w.svt->source_alpha
        << ", sigma_r=" << w.svt->source_sigma_r << ", n=" << n << ", d=" << d << ", r~" << fro2 << " => T*"
        << factor * root;
  } else {
    out << "T*sqrt(min(n,d)/r) with n=" << n << ", d=" << d << ", r~" << fro2 << " => T*" << root;
  }
  return out.str();
}

StatePrep prepare_from(const BlockEncoding& w, const Matrix& m, Side outer_role, Side inner_role) {
  StatePrep p;
  p.state = entangled_state(m, outer_role, inner_role);
  const double fro2 = m.squaredNorm();
  p.success_prob = fro2 / static_cast<double>(m.cols());
  p.ledger.amplification_rounds = static_cast<std::size_t>(std::ceil(std::sqrt(1.0 / p.success_prob) - 1e-12));
  p.ledger.block_applications = p.ledger.amplification_rounds;
  p.ledger.theoretical_cost_string = cost_string(w, fro2);
  return p;
}

}  // namespace

StatePrep prepare_col_leverage_state(const BlockEncoding& w) {
  return prepare_from(w, w.block, Side::column, Side::row);
}

StatePrep prepare_row_leverage_state(const BlockEncoding& w) {
  return prepare_from(w, w.block.transpose(), Side::row, Side::column);
}

std::vector<Index> sample_leverage(const PureState& state, Side which, std::size_t count, Rng& rng) {
  const DiscreteSampler sampler(state.marginal(which));
  std::vector<Index> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) out.push_back(static_cast<Index>(sampler.draw(rng)));
  return out;
}

}  // namespace lvs
