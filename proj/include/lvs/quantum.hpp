#pragma once

#include "lvs/linalg.hpp"
#include "lvs/rng.hpp"
#include "lvs/sampling.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lvs {

/// Largest unitary the simulator will materialize.
inline constexpr Index kMaxUnitaryDim = 4096;

/// Record of the sign transform that produced an encoding.
struct SvtInfo {
  std::size_t degree = 0;
  double delta = 0.0;
  double poly_eps = 0.0;
  /// Normalization and smallest nonzero singular value of the matrix that
  /// was transformed (not of its block).
  double source_alpha = 0.0;
  double source_sigma_r = 0.0;
};

/// Block-encoding U_A of A: the top-left block of the unitary is A / alpha.
///
/// Only the block is stored. The unitary dilation
///   [[B, (I - B B^T)^{1/2}], [(I - B^T B)^{1/2}, -B^T]]
/// of the zero-padded square block B is built on request by unitary().
struct BlockEncoding {
  Matrix block;  ///< A / alpha, block_rows x block_cols
  double alpha = 1.0;
  std::size_t ancilla_count = 1;
  double err = 0.0;
  std::optional<SvtInfo> svt;

  Index block_rows() const { return block.rows(); }
  Index block_cols() const { return block.cols(); }
  /// Size of the dilation: twice the padded block size.
  Index dimension() const { return 2 * std::max(block.rows(), block.cols()); }
  /// alpha * block
  Matrix encoded() const { return alpha * block; }
  /// Throws ConstructionError when dimension() > kMaxUnitaryDim.
  Matrix unitary() const;
};

/// Exact encoding with one dilation ancilla. alpha defaults to
/// ||A|| (1 + 1e-12) (1 for a zero matrix).
BlockEncoding dilate_block_encoding(const Matrix& a, std::optional<double> alpha = std::nullopt);

/// Encoding of [A; lambda I] with normalization alpha + lambda and two more
/// ancillas.
BlockEncoding extend_block_encoding(const BlockEncoding& be, double lambda);

/// Odd Chebyshev series Q approximating sign(x) outside [-3 delta, 3 delta].
struct QsvtPolynomial {
  Vector cheb_coeffs;
  std::size_t degree = 0;
  double delta = 0.0;
  double eps = 0.0;
  /// degree / ceil(ln(1/eps) / delta)
  double degree_constant = 0.0;
  /// Slope of the erf kernel behind P.
  double kappa = 0.0;

  double eval(double x) const;
  Vector eval(const Vector& x) const;
};

struct PolyCertificate {
  double max_abs = 0.0;          ///< max |Q| on the grid
  double max_sign_error = 0.0;   ///< max |Q - sign| for |x| >= 3 delta
  double max_window = 0.0;       ///< max |Q| for |x| <= delta
  std::size_t grid_points = 0;
  bool ok = false;
};

/// Grid check of |Q| <= 1, |Q - sign| <= 2 eps off [-3d, 3d] and |Q| <= 2 eps
/// on [-d, d].
PolyCertificate certify(const QsvtPolynomial& poly, std::size_t grid_points = 10001);

/// Q(x) = (1 - eps) (P(x + 2 delta) - P(-x + 2 delta)) / 2 with P a
/// normalized Chebyshev fit of erf(kappa x) on [-2, 2]. The degree starts at
/// the odd integer above ln(1/eps)/delta and doubles until certify() passes.
/// delta in (0, 1/6], eps in (0, 1/2); throws ConstructionError past degree
/// 4096.
QsvtPolynomial build_sign_polynomial(double delta, double eps);

/// Encoding of W = U Q(D) V^T computed from the SVD of the block, with
/// alpha 1, one more ancilla and err = 4 m sqrt(err / alpha) + 2 eps.
/// Requires poly.delta <= sigma_r(block) / 3.
BlockEncoding apply_svt(const BlockEncoding& be, const QsvtPolynomial& poly);

struct PrecisionBudget {
  double eps_hat = 0.0;
  /// eps_hat sqrt(k / d)
  double eps_tilde = 0.0;
  /// Largest operator-norm error for which the TV bound below stays within
  /// eps_hat: sqrt(k/d) (sqrt(1 + eps_hat / (1 + eps_hat)) - 1).
  double eps_tilde_safe = 0.0;
  /// eps_tilde_safe^2 delta^2 / (256 alpha) / ln^2(8 sqrt(alpha) / (eps_tilde_safe delta))
  double eps_raw = 0.0;
  /// X / (k - X) with X = (2 sqrt(d k) + d e) e, e = eps_tilde_safe.
  double tv_bound = 0.0;
  /// (2 sqrt(d k) + d e) e <= k eps_hat, for e = eps_tilde and eps_tilde_safe.
  bool guard_literal = false;
  bool guard_safe = false;
};

PrecisionBudget precision_budget(double eps_hat, double delta, double alpha, double d, double k);

struct CostLedger {
  std::size_t block_applications = 0;
  std::size_t amplification_rounds = 0;
  std::size_t ae_iterations = 0;
  std::size_t ae_calls = 0;
  std::string theoretical_cost_string;

  void add(const CostLedger& other);
  void export_to(SolveReport& report) const;
};

/// Amplitudes over a product of registers, stored with the first register
/// major.
struct PureState {
  Vector amplitudes;
  std::vector<Index> shape;
  std::vector<Side> roles;

  /// Marginal distribution of the register holding `role`.
  Distribution marginal(Side role) const;
};

struct StatePrep {
  PureState state;
  double success_prob = 0.0;
  CostLedger ledger;
};

/// (1/||W||_F) sum_j |j> (x) W|j> for the encoded W (first register: columns).
StatePrep prepare_col_leverage_state(const BlockEncoding& w);
/// Same built from W^T (first register: rows).
StatePrep prepare_row_leverage_state(const BlockEncoding& w);

/// i.i.d. measurements of the register with the given role.
std::vector<Index> sample_leverage(const PureState& state, Side which, std::size_t count, Rng& rng);

/// One run of phase-estimation amplitude estimation with M grid points.
double ae_simulate(double a, std::size_t m, Rng& rng);
/// Median of `boost` independent runs.
double ae_boosted(double a, std::size_t m, std::size_t boost, Rng& rng);

struct AmplitudeEstimate {
  double value = 0.0;
  std::size_t m = 0;
  /// True when the stopping rule was met before the 2^18 cap.
  bool converged = false;
};

/// Relative-error estimate: M starts at max(m0, 8) and doubles until
/// 2 pi sqrt(e (1 - e)) / M + pi^2 / M^2 <= relerr e for the current estimate e.
AmplitudeEstimate estimate_amplitude_relative(double a, double relerr, std::size_t m0, std::size_t boost, Rng& rng,
                                              CostLedger* ledger = nullptr);

/// Squared norm of column (or row) j of the encoded block.
double encoded_score(const BlockEncoding& w, Index j, Side side);

/// Median-of-boost amplitude estimate of the score of j with M = ceil(pi / eps).
double estimate_leverage_score(const BlockEncoding& w, Index j, double eps, std::size_t boost, Rng& rng,
                               Side side = Side::column, CostLedger* ledger = nullptr);

/// Relative-error score estimate used by the hybrid solvers.
AmplitudeEstimate estimate_score_relative(const BlockEncoding& w, Index j, Side side, double relerr, std::size_t m0,
                                          std::size_t boost, Rng& rng, CostLedger* ledger = nullptr);

/// d times an estimate of ||W||_F^2 / d at relative error eps. Zero block
/// gives 0.
double estimate_rank(const BlockEncoding& w, double eps, Rng& rng, std::size_t boost = 15,
                     CostLedger* ledger = nullptr);

struct QuantumConfig {
  /// Target TV distance of the simulated sampling distribution.
  double distribution_tv = 0.05;
  std::size_t boost = 15;
  double score_relerr = 0.25;
  SolverConfig solver;
};

struct RidgeStatePrep {
  PureState state;
  /// Top n rows of the transformed encoding; row norms give ridge scores.
  BlockEncoding w_top;
  double success_prob = 0.0;
  double sd_estimate = 0.0;
  PrecisionBudget budget;
  std::size_t poly_degree = 0;
  double poly_eps = 0.0;
  CostLedger ledger;
  std::vector<std::string> warnings;
};

/// Ridge-leverage state from the sign transform of the encoding of
/// [A; lambda I], restricted to the first n row indices.
RidgeStatePrep prepare_ridge_leverage_state(const Matrix& a, double lambda, double eps_hat, Rng& rng,
                                            const QuantumConfig& cfg = {});

/// Algorithm 1 with scores and samples from the simulated quantum routines.
SolveReport algorithm2_quantum_ls(const Matrix& a, const Vector& b, double eps, Rng& rng,
                                  const QuantumConfig& cfg = {});

/// Quantum ridge-leverage row sampling followed by algorithm3_ridge.
SolveReport algorithm4_quantum_ridge(const Matrix& a, const Vector& b, double lambda, double eps, Rng& rng,
                                     const QuantumConfig& cfg = {});

/// Pipeline behind the rank command: dilate, sign transform with
/// delta = min(sigma_r / 3 alpha, 1/6), then estimate_rank.
struct RankResult {
  double estimate = 0.0;
  Index exact_rank = 0;
  std::size_t poly_degree = 0;
  CostLedger ledger;
};

RankResult quantum_rank(const Matrix& a, double eps, Rng& rng, std::size_t boost = 15);

}  // namespace lvs
