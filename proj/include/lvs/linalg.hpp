#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string_view>
#include <vector>

namespace lvs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Singular values at or below `kDefaultRankTol * sigma_1` count as zero.
inline constexpr double kDefaultRankTol = 1e-10;

/// Which side of a matrix a score, sampler or register refers to.
enum class Side { row, column };

const char* to_string(Side side);

/// Throws InputError if the matrix is empty or holds a non-finite entry.
void require_finite(const Matrix& a, std::string_view what = "matrix");
void require_finite(const Vector& v, std::string_view what = "vector");

double spectral_norm(const Matrix& a);

/// Compact, rank-revealing SVD: A ~= U diag(singulars) V^T with U (n x r) and
/// V (d x r) orthonormal and singulars strictly above rank_tol * sigma_1.
struct SvdFactors {
  Matrix u;
  Vector singulars;
  Matrix v;
  double rank_tol = kDefaultRankTol;
  Index rows = 0;
  Index cols = 0;

  Index rank() const { return singulars.size(); }
  /// Zero input matrix: r = 0 and U, V have no columns.
  bool degenerate() const { return singulars.size() == 0; }
  double sigma_max() const { return degenerate() ? 0.0 : singulars(0); }
  double sigma_min() const { return degenerate() ? 0.0 : singulars(singulars.size() - 1); }
  Matrix reconstruct() const;
};

enum class ScoreKind { row, column, ridge_row };

const char* to_string(ScoreKind kind);

struct ScoreVector {
  Vector scores;
  double total = 0.0;
  ScoreKind kind = ScoreKind::row;
  /// Set when the source matrix was zero; scores are then all zero.
  bool degenerate = false;
};

/// Probability vector, nonnegative and summing to one within 1e-12.
class Distribution {
 public:
  /// Validates `probs` as given; throws InputError otherwise.
  explicit Distribution(std::vector<double> probs);

  /// Normalizes nonnegative weights. Throws DegenerateError when they sum
  /// to zero.
  static Distribution from_weights(const Vector& weights);
  static Distribution from_scores(const ScoreVector& scores) { return from_weights(scores.scores); }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

SvdFactors svd(const Matrix& a, double rank_tol = kDefaultRankTol);

/// U V^T, the closest isometry to A. Throws DegenerateError when r = 0.
Matrix polar_factor(const SvdFactors& f);

ScoreVector row_leverage_scores(const SvdFactors& f);
ScoreVector col_leverage_scores(const SvdFactors& f);

/// The (n + d) x d stack [A; lambda I_d].
Matrix extended_matrix(const Matrix& a, double lambda);

/// SVD of the stacked matrix [A; lambda I] written as U_tilde * Sigma^{-1} * V^T
/// with U_tilde = [U D Sigma; lambda V Sigma] and Sigma = (D^T D + lambda^2 I)^{-1/2}.
///
/// When rank(A) < d the right factor is completed to an orthonormal d x d
/// basis and D is padded with zeros, so `v` is always square and `u_tilde`
/// always has d orthonormal columns.
struct ExtendedSvd {
  Matrix u_tilde;  ///< (n + d) x d
  Vector sigma;    ///< diagonal of Sigma, length d
  Matrix v;        ///< d x d orthogonal
};

ExtendedSvd extended_svd(const SvdFactors& f, double lambda);

/// sd_lambda = sum_i s_i^2 / (s_i^2 + lambda^2). Exactly r at lambda = 0.
double statistical_dimension(const Vector& singulars, double lambda);

ScoreVector ridge_row_scores(const Matrix& a, double lambda);
ScoreVector ridge_row_scores(const SvdFactors& f, double lambda);

enum class TailStatus { holds, fails, assumption_violated };

const char* to_string(TailStatus status);

struct TailCheck {
  TailStatus status = TailStatus::assumption_violated;
  std::size_t index = 0;        ///< ceil(r / eps), 1-based
  double score_at_index = 0.0;  ///< sorted (descending) score at `index`
  double bound = 0.0;           ///< eps / 2n
};

/// Checks that the ceil(r/eps)-th largest row score is at least eps / 2n,
/// provided r/n - eps/2n <= eps <= 1 - eps/2n and ceil(r/eps) <= n.
/// The rank is read off the score total.
TailCheck score_tail_check(const ScoreVector& scores, double eps);

/// ceil(x) that ignores rounding noise just above an integer.
std::size_t stable_ceil(double x);

}  // namespace lvs
