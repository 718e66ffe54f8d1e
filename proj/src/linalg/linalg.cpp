#include "lvs/linalg.hpp"

#include "lvs/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lvs {

const char* to_string(Side side) { return side == Side::row ? "row" : "column"; }

const char* to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::row:
      return "row";
    case ScoreKind::column:
      return "column";
    case ScoreKind::ridge_row:
      return "ridge-row";
  }
  return "?";
}

const char* to_string(TailStatus status) {
  switch (status) {
    case TailStatus::holds:
      return "holds";
    case TailStatus::fails:
      return "fails";
    case TailStatus::assumption_violated:
      return "assumption-violated";
  }
  return "?";
}

void require_finite(const Matrix& a, std::string_view what) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw InputError(std::string(what) + ": empty matrix");
  }
  if (!a.allFinite()) {
    throw InputError(std::string(what) + ": non-finite entry");
  }
}

void require_finite(const Vector& v, std::string_view what) {
  if (v.size() < 1) {
    throw InputError(std::string(what) + ": empty vector");
  }
  if (!v.allFinite()) {
    throw InputError(std::string(what) + ": non-finite entry");
  }
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> dec(a);
  return dec.singularValues().size() ? dec.singularValues()(0) : 0.0;
}

std::size_t stable_ceil(double x) {
  const double slack = 1e-9 * std::max(1.0, std::abs(x));
  const double c = std::ceil(x - slack);
  return c <= 0.0 ? 0 : static_cast<std::size_t>(c);
}

Matrix SvdFactors::reconstruct() const {
  if (degenerate()) return Matrix::Zero(rows, cols);
  return u * singulars.asDiagonal() * v.transpose();
}

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InputError("distribution: empty support");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw InputError("distribution: negative or non-finite probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InputError("distribution: probabilities sum to " + std::to_string(sum));
  }
}

Distribution Distribution::from_weights(const Vector& weights) {
  if (weights.size() == 0) throw InputError("distribution: empty support");
  double sum = 0.0;
  for (Index i = 0; i < weights.size(); ++i) {
    const double w = weights(i);
    if (!std::isfinite(w) || w < 0.0) throw InputError("distribution: negative or non-finite weight");
    sum += w;
  }
  if (!(sum > 0.0)) throw DegenerateError("distribution: weights sum to zero");
  std::vector<double> probs(static_cast<std::size_t>(weights.size()));
  for (Index i = 0; i < weights.size(); ++i) probs[static_cast<std::size_t>(i)] = weights(i) / sum;
  return Distribution(std::move(probs));
}

// ---------------------------------------------------------------------------
// SVD and scores

SvdFactors svd(const Matrix& a, double rank_tol) {
  require_finite(a, "svd");
  if (!(rank_tol > 0.0) || rank_tol > 1e-3) {
    throw ParameterError("svd: rank_tol must lie in (0, 1e-3]");
  }
  // Jacobi rather than divide-and-conquer: Eigen 3.4 BDCSVD loses accuracy on
  // clustered spectra such as [A; lambda I] with rank(A) < d.
  Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = dec.singularValues();

  SvdFactors f;
  f.rank_tol = rank_tol;
  f.rows = a.rows();
  f.cols = a.cols();
  Index r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cut = rank_tol * s(0);
    while (r < s.size() && s(r) > cut) ++r;
  }
  f.u = dec.matrixU().leftCols(r);
  f.singulars = s.head(r);
  f.v = dec.matrixV().leftCols(r);
  return f;
}

Matrix polar_factor(const SvdFactors& f) {
  if (f.degenerate()) throw DegenerateError("polar_factor: matrix has rank 0");
  return f.u * f.v.transpose();
}

namespace {

ScoreVector squared_row_norms(const Matrix& basis, Index length, ScoreKind kind) {
  ScoreVector out;
  out.kind = kind;
  if (basis.cols() == 0) {
    out.scores = Vector::Zero(length);
    out.degenerate = true;
    return out;
  }
  out.scores = basis.rowwise().squaredNorm();
  out.total = out.scores.sum();
  return out;
}

}  // namespace

ScoreVector row_leverage_scores(const SvdFactors& f) {
  return squared_row_norms(f.u, f.rows, ScoreKind::row);
}

ScoreVector col_leverage_scores(const SvdFactors& f) {
  return squared_row_norms(f.v, f.cols, ScoreKind::column);
}

Matrix extended_matrix(const Matrix& a, double lambda) {
  require_finite(a, "extended_matrix");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("extended_matrix: lambda must be positive");
  }
  const Index n = a.rows();
  const Index d = a.cols();
  Matrix out(n + d, d);
  out.topRows(n) = a;
  out.bottomRows(d) = lambda * Matrix::Identity(d, d);
  return out;
}

ExtendedSvd extended_svd(const SvdFactors& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("extended_svd: lambda must be positive");
  }
  const Index n = f.rows;
  const Index d = f.cols;
  const Index r = f.rank();

  Matrix v_full(d, d);
  if (r == 0) {
    v_full.setIdentity();
  } else {
    // Householder QR of an orthonormal V yields Q = [V * diag(+-1), V_perp].
    Eigen::HouseholderQR<Matrix> qr(f.v);
    const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    v_full.leftCols(r) = f.v;
    v_full.rightCols(d - r) = q.rightCols(d - r);
  }

  Vector sing = Vector::Zero(d);
  sing.head(r) = f.singulars;

  ExtendedSvd out;
  out.sigma = (sing.array().square() + lambda * lambda).rsqrt().matrix();
  out.u_tilde = Matrix::Zero(n + d, d);
  if (r > 0) {
    out.u_tilde.topLeftCorner(n, r) =
        f.u * (f.singulars.array() * out.sigma.head(r).array()).matrix().asDiagonal();
  }
  out.u_tilde.bottomRows(d) = lambda * v_full * out.sigma.asDiagonal();
  out.v = std::move(v_full);
  return out;
}

double statistical_dimension(const Vector& singulars, double lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("statistical_dimension: lambda must be nonnegative");
  double sd = 0.0;
  const double l2 = lambda * lambda;
  for (Index i = 0; i < singulars.size(); ++i) {
    const double s2 = singulars(i) * singulars(i);
    if (s2 == 0.0) continue;
    sd += (l2 == 0.0) ? 1.0 : s2 / (s2 + l2);
  }
  return sd;
}

ScoreVector ridge_row_scores(const SvdFactors& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("ridge_row_scores: lambda must be positive");
  }
  ScoreVector out;
  out.kind = ScoreKind::ridge_row;
  if (f.degenerate()) {
    out.scores = Vector::Zero(f.rows);
    out.degenerate = true;
    return out;
  }
  const Vector shrink =
      (f.singulars.array().square() / (f.singulars.array().square() + lambda * lambda)).matrix();
  out.scores = f.u.array().square().matrix() * shrink;
  out.total = out.scores.sum();
  return out;
}

ScoreVector ridge_row_scores(const Matrix& a, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("ridge_row_scores: lambda must be positive");
  }
  return ridge_row_scores(svd(a), lambda);
}

TailCheck score_tail_check(const ScoreVector& scores, double eps) {
  TailCheck out;
  const std::size_t n = static_cast<std::size_t>(scores.scores.size());
  if (n == 0 || !(eps > 0.0)) return out;
  const double nn = static_cast<double>(n);
  const double r = std::round(scores.total);
  out.bound = eps / (2.0 * nn);

  const bool lower_ok = r / nn - eps / (2.0 * nn) <= eps;
  const bool upper_ok = eps <= 1.0 - eps / (2.0 * nn);
  out.index = stable_ceil(r / eps);
  if (!lower_ok || !upper_ok || out.index == 0 || out.index > n) return out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return scores.scores(static_cast<Index>(i)) > scores.scores(static_cast<Index>(j));
  });
  out.score_at_index = scores.scores(static_cast<Index>(order[out.index - 1]));
  out.status = out.score_at_index >= out.bound ? TailStatus::holds : TailStatus::fails;
  return out;
}

}  // namespace lvs
