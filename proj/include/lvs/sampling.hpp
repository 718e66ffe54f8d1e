#pragma once

#include "lvs/linalg.hpp"
#include "lvs/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lvs {

/// Probabilities below this are raised to it before computing 1/sqrt(q p).
inline constexpr double kProbabilityFloor = 1e-15;

/// Inverse-CDF sampler over a fixed Distribution. Indices with zero
/// probability are never returned.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const Distribution& dist);
  std::size_t draw(Rng& rng) const;
  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
  std::size_t last_positive_ = 0;
};

struct Draw {
  Index index = 0;
  double weight = 0.0;
};

/// Sparse selector S (row side, q x ambient) or R (column side, ambient x q)
/// whose t-th row (resp. column) is weight_t * e_{index_t}. Draw order is
/// kept and duplicates are separate entries.
struct SamplingMatrix {
  Side side = Side::row;
  Index ambient = 0;
  std::vector<Draw> draws;

  std::size_t count() const { return draws.size(); }
  std::size_t distinct() const;
};

/// q i.i.d. draws from `dist` with weights 1/sqrt(q p_i).
SamplingMatrix draw_sampler(const Distribution& dist, std::size_t q, Side side, Rng& rng);
SamplingMatrix draw_row_sampler(const Distribution& dist, std::size_t q, Rng& rng);

/// Builds a selector from externally drawn indices. `probs[t]` is the
/// probability used in the weight of draw t; it is floored at
/// kProbabilityFloor.
SamplingMatrix make_sampler(Side side, Index ambient, const std::vector<Index>& indices,
                            const std::vector<double>& probs);

/// Row side: S A (q x d). Column side: A R (n x q).
Matrix apply_sampler(const SamplingMatrix& s, const Matrix& a);
/// Row side only: S b.
Vector apply_sampler(const SamplingMatrix& s, const Vector& b);
/// Dense form of the selector, for tests and small inputs.
Matrix to_dense(const SamplingMatrix& s);

/// Two-stage sketched row leverage scores: a CountSketch of A with
/// ceil(d^2 / relerr^2) rows (skipped when that is not smaller than n)
/// supplies R^{-1} from its SVD, and a Gaussian JL map with
/// ceil(8 ln n / relerr^2) columns compresses A R^{-1} when that is cheaper.
/// `rank_out` receives the rank of the sketch.
ScoreVector approx_leverage_scores_sketched(const Matrix& a, double relerr, Rng& rng,
                                            Index* rank_out = nullptr);

/// Minimum-norm least-squares solution (complete orthogonal decomposition).
Vector solve_ls_direct(const Matrix& a, const Vector& b);

struct CgnrResult {
  Vector x;
  std::size_t iterations = 0;
  bool converged = false;
  /// ||A^T (b - A x)|| at exit.
  double normal_residual = 0.0;
};

/// Conjugate gradient on the normal equations. Stops once
/// ||A^T r|| <= tol ||A^T b||; `maxit` = 0 means 10 d.
CgnrResult solve_ls_cgnr(const Matrix& a, const Vector& b, double tol = 1e-10, std::size_t maxit = 0);

/// Z(x) = ||A x - b||^2 + lambda^2 ||x||^2.
double objective_ridge(const Matrix& a, const Vector& b, double lambda, const Vector& x);
double residual_norm(const Matrix& a, const Vector& b, const Vector& x);

/// A^T (A R R^T A^T + lambda^2 I)^{-1} b by a symmetric positive-definite
/// solve. Repeated columns of R are merged first, and the Woodbury form is
/// used when R selects fewer distinct columns than A has rows. lambda = 0
/// is accepted only when the n x n system is nonsingular.
Vector ridge_estimator(const Matrix& a, const SamplingMatrix& r, const Vector& b, double lambda);

/// (A^T A + lambda^2 I)^{-1} A^T b through the SVD.
Vector ridge_solution_exact(const Matrix& a, const Vector& b, double lambda);
Vector ridge_solution_exact(const SvdFactors& f, const Vector& b, double lambda);

enum class ScoreMode { exact, sketched, quantum_sim };

const char* to_string(ScoreMode mode);

struct SolverConfig {
  double c_q = 4.0;
  double c_c = 4.0;
  double score_relerr = 0.25;
  /// Reduced problems with q d^2 above this go to CGNR.
  double direct_flop_limit = 1e8;
  /// Solve the full problem exactly to fill reference_objective and ratio.
  bool compute_reference = true;
};

struct SolveReport {
  std::string method;
  Vector solution;
  /// Residual norm ||A x - b|| for least squares, Z(x) for ridge.
  double objective = 0.0;
  std::optional<double> reference_objective;
  std::optional<double> ratio;
  std::size_t q = 0;
  std::size_t c = 0;
  ScoreMode score_mode = ScoreMode::exact;
  std::uint64_t seed = 0;
  std::map<std::string, double> cost_counters;
  std::vector<std::string> warnings;
  /// Informational lines: oracle-provided inputs, complexity strings.
  std::vector<std::string> notes;
};

/// ceil(c_q (r ln(r+1) + r/eps)).
std::size_t ls_sample_count(Index r, double eps, double c_q);
/// ceil(c_c (r ln(r+1) + (r/eps) (sigma_1/lambda)^2)).
std::size_t ridge_column_count(Index r, double eps, double sigma1, double lambda, double c_c);
/// ceil(c_q (r/eps) ln(r+1)).
std::size_t ridge_row_count(Index r, double eps, double c_q);

/// Last step of Algorithms 1 and 2: solve the sampled problem directly or
/// by CGNR depending on its size. Iteration counts land in `report`.
Vector solve_reduced(const Matrix& sa, const Vector& sb, const SolverConfig& cfg, SolveReport& report);

/// Fill objective, reference and ratio of a least-squares report.
void finish_ls_report(const Matrix& a, const Vector& b, const SolverConfig& cfg, SolveReport& report);
/// Same for ridge.
void finish_ridge_report(const Matrix& a, const Vector& b, double lambda, const SolverConfig& cfg,
                         SolveReport& report);

void validate_system(const Matrix& a, const Vector& b);
void validate_eps(double eps);

SolveReport algorithm1_ls(const Matrix& a, const Vector& b, double eps, Rng& rng,
                          ScoreMode mode = ScoreMode::exact, const SolverConfig& cfg = {});

SolveReport algorithm3_ridge(const Matrix& a, const Vector& b, double lambda, double eps, Rng& rng,
                             ScoreMode mode = ScoreMode::exact, const SolverConfig& cfg = {});

/// Ridge-leverage row sampling followed by algorithm3_ridge on (S A, S b).
SolveReport algorithm4_classical(const Matrix& a, const Vector& b, double lambda, double eps, Rng& rng,
                                 ScoreMode mode = ScoreMode::exact, const SolverConfig& cfg = {});

}  // namespace lvs
