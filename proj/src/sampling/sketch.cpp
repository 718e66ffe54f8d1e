#include "lvs/error.hpp"
#include "lvs/sampling.hpp"

#include <cmath>

namespace lvs {

namespace {

Matrix count_sketch(const Matrix& a, Index m, Rng& rng) {
  Matrix out = Matrix::Zero(m, a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    const auto bucket = static_cast<Index>(rng.index_below(static_cast<std::size_t>(m)));
    out.row(bucket) += rng.sign() * a.row(i);
  }
  return out;
}

}  // namespace

ScoreVector approx_leverage_scores_sketched(const Matrix& a, double relerr, Rng& rng, Index* rank_out) {
  require_finite(a, "approx_leverage_scores_sketched");
  if (!(relerr > 0.0 && relerr < 1.0)) {
    throw ParameterError("approx_leverage_scores_sketched: relerr must lie in (0, 1)");
  }
  const Index n = a.rows();
  const Index d = a.cols();
  const double inv2 = 1.0 / (relerr * relerr);

  const auto m = static_cast<Index>(std::ceil(static_cast<double>(d) * static_cast<double>(d) * inv2));
  const Matrix pa = m < n ? count_sketch(a, m, rng) : a;
  const SvdFactors f = svd(pa);
  if (rank_out) *rank_out = f.rank();

  ScoreVector out;
  out.kind = ScoreKind::row;
  if (f.degenerate()) {
    out.scores = Vector::Zero(n);
    out.degenerate = true;
    return out;
  }

  // A R^{-1} with R^{-1} = V diag(1/s) has (approximately) orthonormal columns.
  const Matrix rinv = f.v * f.singulars.cwiseInverse().asDiagonal();
  const Matrix ar = a * rinv;
  const auto k = static_cast<Index>(std::ceil(8.0 * std::log(static_cast<double>(n)) * inv2));
  if (k < f.rank()) {
    Matrix g(f.rank(), k);
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    for (Index j = 0; j < k; ++j)
      for (Index i = 0; i < f.rank(); ++i) g(i, j) = scale * rng.normal();
    out.scores = (ar * g).rowwise().squaredNorm();
  } else {
    out.scores = ar.rowwise().squaredNorm();
  }
  out.total = out.scores.sum();
  return out;
}

}  // namespace lvs
