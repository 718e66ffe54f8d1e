#include "lvs/error.hpp"
#include "lvs/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace lvs {

namespace {

std::string oracle_note(double sigma_r, Index r) {
  std::ostringstream out;
  out << "sigma_r=" << sigma_r << " and r=" << r << " taken from the exact SVD (oracle-provided)";
  return out.str();
}

// Per-draw sampling probabilities from relative-error score estimates; one
// estimate per distinct index.
std::vector<double> estimated_probs(const BlockEncoding& w, const std::vector<Index>& draws, Side side,
                                    double normalizer, double relerr, std::size_t m0, std::size_t boost, Rng& rng,
                                    CostLedger& ledger, SolveReport& report) {
  std::map<Index, double> cache;
  std::size_t capped = 0;
  for (Index j : draws) {
    if (cache.count(j)) continue;
    const AmplitudeEstimate est = estimate_score_relative(w, j, side, relerr, m0, boost, rng, &ledger);
    if (!est.converged) ++capped;
    cache[j] = est.value / normalizer;
  }
  if (capped > 0) {
    report.warnings.push_back(std::to_string(capped) + " score estimates hit the amplitude-estimation grid cap");
  }
  std::vector<double> probs;
  probs.reserve(draws.size());
  for (Index j : draws) probs.push_back(cache[j]);
  return probs;
}

}  // namespace

RidgeStatePrep prepare_ridge_leverage_state(const Matrix& a, double lambda, double eps_hat, Rng& rng,
                                            const QuantumConfig& cfg) {
  require_finite(a, "prepare_ridge_leverage_state");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("prepare_ridge_leverage_state: lambda must be positive");
  }
  if (!(eps_hat > 0.0 && eps_hat < 1.0)) throw ParameterError("prepare_ridge_leverage_state: eps_hat must lie in (0, 1)");

  RidgeStatePrep out;
  const Index n = a.rows();
  const Index d = a.cols();
  const BlockEncoding be = dilate_block_encoding(a);
  const BlockEncoding ext = extend_block_encoding(be, lambda);
  const double norm_a = spectral_norm(a);
  if (lambda > norm_a) out.warnings.push_back("lambda exceeds ||A||; ridge scores are nearly flat");

  // sigma_min([A; lambda I]) >= lambda, so its block has sigma_min >= 3 delta.
  const double delta = std::min(lambda / (3.0 * ext.alpha), 1.0 / 6.0);
  // ||U_hat||_F^2 = sd_lambda >= alpha^2 / (alpha^2 + lambda^2) for alpha = ||A||.
  const double k = norm_a > 0.0 ? norm_a * norm_a / (norm_a * norm_a + lambda * lambda) : 1e-300;
  out.budget = precision_budget(eps_hat, delta, ext.alpha, static_cast<double>(d), std::max(k, 1e-300));
  const QsvtPolynomial poly = build_sign_polynomial(delta, std::min(0.49, out.budget.eps_tilde_safe / 2.0));
  out.poly_degree = poly.degree;
  out.poly_eps = poly.eps;

  const BlockEncoding w = apply_svt(ext, poly);
  out.w_top = w;
  out.w_top.block = w.block.topRows(n);

  const StatePrep prep = prepare_col_leverage_state(out.w_top);
  out.state = prep.state;
  out.success_prob = prep.success_prob;
  out.ledger = prep.ledger;
  out.ledger.block_applications += poly.degree * out.ledger.amplification_rounds;

  const AmplitudeEstimate sd = estimate_amplitude_relative(out.success_prob, 0.25, 8, cfg.boost, rng, &out.ledger);
  out.sd_estimate = static_cast<double>(d) * sd.value;
  if (out.success_prob < 0.01) {
    std::ostringstream msg;
    msg << "low post-selection probability " << out.success_prob;
    out.warnings.push_back(msg.str());
  }
  return out;
}

SolveReport algorithm2_quantum_ls(const Matrix& a, const Vector& b, double eps, Rng& rng, const QuantumConfig& cfg) {
  validate_system(a, b);
  validate_eps(eps);

  SolveReport report;
  report.method = "algorithm2";
  report.score_mode = ScoreMode::quantum_sim;
  report.seed = rng.seed();

  const SvdFactors f = svd(a);
  if (f.degenerate()) throw DegenerateError("algorithm2_quantum_ls: A is zero");
  const Index n = a.rows();
  const Index r = f.rank();
  report.notes.push_back(oracle_note(f.sigma_min(), r));

  const BlockEncoding be = dilate_block_encoding(a);
  const double delta = std::min(f.sigma_min() / (3.0 * be.alpha), 1.0 / 6.0);
  const PrecisionBudget budget =
      precision_budget(cfg.distribution_tv, delta, be.alpha, static_cast<double>(std::min(n, a.cols())),
                       static_cast<double>(r));
  const QsvtPolynomial poly = build_sign_polynomial(delta, std::min(0.49, budget.eps_tilde_safe / 2.0));
  const BlockEncoding w = apply_svt(be, poly);

  StatePrep prep = prepare_row_leverage_state(w);
  CostLedger ledger = prep.ledger;

  report.q = ls_sample_count(r, eps, cfg.solver.c_q);
  const std::vector<Index> draws = sample_leverage(prep.state, Side::row, report.q, rng);
  ledger.block_applications += report.q * poly.degree * ledger.amplification_rounds;

  const auto m0 = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n) / eps)));
  const std::vector<double> probs = estimated_probs(w, draws, Side::row, static_cast<double>(r), cfg.score_relerr, m0,
                                                    cfg.boost, rng, ledger, report);
  const SamplingMatrix s = make_sampler(Side::row, n, draws, probs);
  report.cost_counters["rows_sampled"] = static_cast<double>(s.count());
  report.cost_counters["distinct_rows"] = static_cast<double>(s.distinct());
  report.cost_counters["poly_degree"] = static_cast<double>(poly.degree);
  ledger.export_to(report);

  report.solution = solve_reduced(apply_sampler(s, a), apply_sampler(s, b), cfg.solver, report);
  finish_ls_report(a, b, cfg.solver, report);
  return report;
}

SolveReport algorithm4_quantum_ridge(const Matrix& a, const Vector& b, double lambda, double eps, Rng& rng,
                                     const QuantumConfig& cfg) {
  validate_system(a, b);
  validate_eps(eps);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("algorithm4: lambda must be positive");

  SolveReport report;
  report.method = "algorithm4-quantum";
  report.score_mode = ScoreMode::quantum_sim;
  report.seed = rng.seed();

  const SvdFactors f = svd(a);
  if (f.degenerate()) {
    report.solution = Vector::Zero(a.cols());
    report.warnings.push_back("A is zero; returning x = 0");
    finish_ridge_report(a, b, lambda, cfg.solver, report);
    return report;
  }
  const Index n = a.rows();
  const Index r = f.rank();
  report.notes.push_back(oracle_note(f.sigma_min(), r));

  RidgeStatePrep prep = prepare_ridge_leverage_state(a, lambda, cfg.distribution_tv, rng, cfg);
  for (const auto& w : prep.warnings) report.warnings.push_back(w);
  CostLedger ledger = prep.ledger;

  report.q = ridge_row_count(r, eps, cfg.solver.c_q);
  const std::vector<Index> draws = sample_leverage(prep.state, Side::row, report.q, rng);
  ledger.block_applications += report.q * prep.poly_degree * ledger.amplification_rounds;

  const auto m0 = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n) / eps)));
  const double sd = prep.sd_estimate > 0.0 ? prep.sd_estimate : static_cast<double>(r);
  const std::vector<double> probs =
      estimated_probs(prep.w_top, draws, Side::row, sd, cfg.score_relerr, m0, cfg.boost, rng, ledger, report);
  const SamplingMatrix s = make_sampler(Side::row, n, draws, probs);
  report.cost_counters["rows_sampled"] = static_cast<double>(s.count());
  report.cost_counters["distinct_rows"] = static_cast<double>(s.distinct());
  report.cost_counters["poly_degree"] = static_cast<double>(prep.poly_degree);
  report.cost_counters["sd_estimate"] = prep.sd_estimate;
  ledger.export_to(report);

  SolverConfig inner_cfg = cfg.solver;
  inner_cfg.compute_reference = false;
  const SolveReport inner =
      algorithm3_ridge(apply_sampler(s, a), apply_sampler(s, b), lambda, eps, rng, ScoreMode::exact, inner_cfg);
  report.c = inner.c;
  report.solution = inner.solution;
  for (const auto& [key, value] : inner.cost_counters) report.cost_counters[key] += value;
  for (const auto& w : inner.warnings) {
    if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) {
      report.warnings.push_back(w);
    }
  }
  finish_ridge_report(a, b, lambda, cfg.solver, report);
  return report;
}

RankResult quantum_rank(const Matrix& a, double eps, Rng& rng, std::size_t boost) {
  require_finite(a, "quantum_rank");
  RankResult out;
  const SvdFactors f = svd(a);
  out.exact_rank = f.rank();
  if (f.degenerate()) return out;
  const BlockEncoding be = dilate_block_encoding(a);
  const double delta = std::min(f.sigma_min() / (3.0 * be.alpha), 1.0 / 6.0);
  // Keep the polynomial error well inside the requested relative error.
  const QsvtPolynomial poly = build_sign_polynomial(delta, std::min(1e-3, eps / 20.0));
  out.poly_degree = poly.degree;
  const BlockEncoding w = apply_svt(be, poly);
  const StatePrep prep = prepare_col_leverage_state(w);
  out.ledger = prep.ledger;
  out.estimate = estimate_rank(w, eps, rng, boost, &out.ledger);
  return out;
}

}  // namespace lvs
