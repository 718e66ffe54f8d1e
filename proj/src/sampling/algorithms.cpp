#include "lvs/error.hpp"
#include "lvs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lvs {

const char* to_string(ScoreMode mode) {
  switch (mode) {
    case ScoreMode::exact:
      return "exact";
    case ScoreMode::sketched:
      return "sketched";
    case ScoreMode::quantum_sim:
      return "quantum-sim";
  }
  return "?";
}

std::size_t ls_sample_count(Index r, double eps, double c_q) {
  const double rr = static_cast<double>(r);
  return stable_ceil(c_q * (rr * std::log(rr + 1.0) + rr / eps));
}

std::size_t ridge_column_count(Index r, double eps, double sigma1, double lambda, double c_c) {
  const double rr = static_cast<double>(r);
  const double ratio = sigma1 / lambda;
  return stable_ceil(c_c * (rr * std::log(rr + 1.0) + (rr / eps) * ratio * ratio));
}

std::size_t ridge_row_count(Index r, double eps, double c_q) {
  const double rr = static_cast<double>(r);
  return stable_ceil(c_q * (rr / eps) * std::log(rr + 1.0));
}

void validate_system(const Matrix& a, const Vector& b) {
  require_finite(a, "A");
  require_finite(b, "b");
  if (b.size() != a.rows()) {
    throw InputError("b has length " + std::to_string(b.size()) + " but A has " + std::to_string(a.rows()) +
                     " rows");
  }
}

void validate_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
}

Vector solve_reduced(const Matrix& sa, const Vector& sb, const SolverConfig& cfg, SolveReport& report) {
  const double flops = static_cast<double>(sa.rows()) * static_cast<double>(sa.cols()) *
                       static_cast<double>(sa.cols());
  if (flops <= cfg.direct_flop_limit) {
    report.cost_counters["direct_solves"] += 1;
    return solve_ls_direct(sa, sb);
  }
  const CgnrResult res = solve_ls_cgnr(sa, sb);
  report.cost_counters["cgnr_iterations"] += static_cast<double>(res.iterations);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "CGNR stopped after " << res.iterations << " iterations with normal residual " << res.normal_residual;
    report.warnings.push_back(msg.str());
  }
  return res.x;
}

namespace {

// Both values below this fraction of the scale count as zero.
std::optional<double> safe_ratio(double value, double reference, double scale) {
  const double tiny = 1e-10 * scale;
  if (reference > tiny) return value / reference;
  if (value <= tiny) return 1.0;
  return std::nullopt;
}

}  // namespace

void finish_ls_report(const Matrix& a, const Vector& b, const SolverConfig& cfg, SolveReport& report) {
  report.objective = residual_norm(a, b, report.solution);
  if (!cfg.compute_reference) return;
  const Vector x_opt = solve_ls_direct(a, b);
  report.reference_objective = residual_norm(a, b, x_opt);
  report.ratio = safe_ratio(report.objective, *report.reference_objective, b.norm());
  if (!report.ratio) report.warnings.push_back("reference residual is zero; ratio undefined");
}

void finish_ridge_report(const Matrix& a, const Vector& b, double lambda, const SolverConfig& cfg,
                         SolveReport& report) {
  report.objective = objective_ridge(a, b, lambda, report.solution);
  if (!cfg.compute_reference) return;
  const Vector x_opt = ridge_solution_exact(a, b, lambda);
  report.reference_objective = objective_ridge(a, b, lambda, x_opt);
  report.ratio = safe_ratio(report.objective, *report.reference_objective, b.squaredNorm());
  if (!report.ratio) report.warnings.push_back("reference objective is zero; ratio undefined");
}

SolveReport algorithm1_ls(const Matrix& a, const Vector& b, double eps, Rng& rng, ScoreMode mode,
                          const SolverConfig& cfg) {
  validate_system(a, b);
  validate_eps(eps);
  if (mode == ScoreMode::quantum_sim) throw ParameterError("algorithm1_ls: quantum scores belong to algorithm 2");

  SolveReport report;
  report.method = "algorithm1";
  report.score_mode = mode;
  report.seed = rng.seed();

  ScoreVector scores;
  Index r = 0;
  if (mode == ScoreMode::exact) {
    const SvdFactors f = svd(a);
    scores = row_leverage_scores(f);
    r = f.rank();
  } else {
    scores = approx_leverage_scores_sketched(a, cfg.score_relerr, rng, &r);
  }
  if (scores.degenerate || r == 0) throw DegenerateError("algorithm1_ls: A is zero");

  report.q = ls_sample_count(r, eps, cfg.c_q);
  const SamplingMatrix s = draw_row_sampler(Distribution::from_scores(scores), report.q, rng);
  report.cost_counters["rows_sampled"] = static_cast<double>(s.count());
  report.cost_counters["distinct_rows"] = static_cast<double>(s.distinct());
  report.solution = solve_reduced(apply_sampler(s, a), apply_sampler(s, b), cfg, report);
  finish_ls_report(a, b, cfg, report);
  return report;
}

SolveReport algorithm3_ridge(const Matrix& a, const Vector& b, double lambda, double eps, Rng& rng, ScoreMode mode,
                             const SolverConfig& cfg) {
  validate_system(a, b);
  validate_eps(eps);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("algorithm3_ridge: lambda must be positive");
  if (mode == ScoreMode::quantum_sim) {
    throw ParameterError("algorithm3_ridge: column scores are classical; use algorithm 4 for the quantum path");
  }

  SolveReport report;
  report.method = "algorithm3";
  report.score_mode = mode;
  report.seed = rng.seed();

  const SvdFactors f = svd(a);
  if (f.degenerate()) {
    report.solution = Vector::Zero(a.cols());
    report.warnings.push_back("A is zero; returning x = 0");
    finish_ridge_report(a, b, lambda, cfg, report);
    return report;
  }
  if (lambda > f.sigma_max()) {
    report.warnings.push_back("lambda exceeds ||A||; x = 0 is already a good approximation");
  }

  ScoreVector scores;
  if (mode == ScoreMode::exact) {
    scores = col_leverage_scores(f);
  } else {
    scores = approx_leverage_scores_sketched(a.transpose(), cfg.score_relerr, rng);
    scores.kind = ScoreKind::column;
  }

  report.c = ridge_column_count(f.rank(), eps, f.sigma_max(), lambda, cfg.c_c);
  const SamplingMatrix r = draw_sampler(Distribution::from_scores(scores), report.c, Side::column, rng);
  report.cost_counters["columns_sampled"] = static_cast<double>(r.count());
  report.cost_counters["distinct_columns"] = static_cast<double>(r.distinct());
  report.solution = ridge_estimator(a, r, b, lambda);
  finish_ridge_report(a, b, lambda, cfg, report);
  return report;
}

SolveReport algorithm4_classical(const Matrix& a, const Vector& b, double lambda, double eps, Rng& rng,
                                 ScoreMode mode, const SolverConfig& cfg) {
  validate_system(a, b);
  validate_eps(eps);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("algorithm4: lambda must be positive");
  if (mode == ScoreMode::quantum_sim) throw ParameterError("algorithm4_classical: use algorithm4_quantum_ridge");

  SolveReport report;
  report.method = "algorithm4-classical";
  report.score_mode = mode;
  report.seed = rng.seed();

  const SvdFactors f = svd(a);
  if (f.degenerate()) {
    report.solution = Vector::Zero(a.cols());
    report.warnings.push_back("A is zero; returning x = 0");
    finish_ridge_report(a, b, lambda, cfg, report);
    return report;
  }
  if (lambda > f.sigma_max()) {
    report.warnings.push_back("lambda exceeds ||A||; x = 0 is already a good approximation");
  }

  ScoreVector scores;
  if (mode == ScoreMode::exact) {
    scores = ridge_row_scores(f, lambda);
  } else {
    // Ridge scores are the leverage scores of the first n rows of [A; lambda I].
    const ScoreVector ext = approx_leverage_scores_sketched(extended_matrix(a, lambda), cfg.score_relerr, rng);
    scores.kind = ScoreKind::ridge_row;
    scores.scores = ext.scores.head(a.rows());
    scores.total = scores.scores.sum();
  }

  report.q = ridge_row_count(f.rank(), eps, cfg.c_q);
  const SamplingMatrix s = draw_row_sampler(Distribution::from_scores(scores), report.q, rng);
  report.cost_counters["rows_sampled"] = static_cast<double>(s.count());
  report.cost_counters["distinct_rows"] = static_cast<double>(s.distinct());

  SolverConfig inner_cfg = cfg;
  inner_cfg.compute_reference = false;
  const SolveReport inner = algorithm3_ridge(apply_sampler(s, a), apply_sampler(s, b), lambda, eps, rng, mode, inner_cfg);
  report.c = inner.c;
  report.solution = inner.solution;
  for (const auto& [key, value] : inner.cost_counters) report.cost_counters[key] += value;
  for (const auto& w : inner.warnings) {
    if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) {
      report.warnings.push_back(w);
    }
  }
  finish_ridge_report(a, b, lambda, cfg, report);
  return report;
}

}  // namespace lvs
