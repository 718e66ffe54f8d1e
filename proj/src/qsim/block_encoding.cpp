#include "lvs/error.hpp"
#include "lvs/quantum.hpp"

#include <cmath>
#include <string>

namespace lvs {

Matrix BlockEncoding::unitary() const {
  const Index n = std::max(block.rows(), block.cols());
  if (2 * n > kMaxUnitaryDim) {
    throw ConstructionError("block-encoding: dilation of size " + std::to_string(2 * n) + " exceeds " +
                            std::to_string(kMaxUnitaryDim));
  }
  Matrix b = Matrix::Zero(n, n);
  b.topLeftCorner(block.rows(), block.cols()) = block;

  Eigen::JacobiSVD<Matrix> dec(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector c = (1.0 - dec.singularValues().array().square()).max(0.0).sqrt().matrix();
  const Matrix& u = dec.matrixU();
  const Matrix& v = dec.matrixV();

  Matrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = b;
  out.topRightCorner(n, n) = u * c.asDiagonal() * u.transpose();
  out.bottomLeftCorner(n, n) = v * c.asDiagonal() * v.transpose();
  out.bottomRightCorner(n, n) = -b.transpose();
  return out;
}

BlockEncoding dilate_block_encoding(const Matrix& a, std::optional<double> alpha) {
  require_finite(a, "dilate_block_encoding");
  const double norm = spectral_norm(a);
  double al;
  if (alpha) {
    al = *alpha;
    if (!(al > 0.0) || !std::isfinite(al)) throw ParameterError("dilate_block_encoding: alpha must be positive");
    if (al < norm * (1.0 - 1e-12)) {
      throw ParameterError("dilate_block_encoding: alpha " + std::to_string(al) + " is below ||A|| = " +
                           std::to_string(norm));
    }
  } else {
    al = norm > 0.0 ? norm * (1.0 + 1e-12) : 1.0;
  }
  BlockEncoding be;
  be.block = a / al;
  be.alpha = al;
  be.ancilla_count = 1;
  be.err = 0.0;
  return be;
}

BlockEncoding extend_block_encoding(const BlockEncoding& be, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("extend_block_encoding: lambda must be positive");
  }
  const double alpha = be.alpha + lambda;
  BlockEncoding out;
  out.block = extended_matrix(be.encoded(), lambda) / alpha;
  out.alpha = alpha;
  out.ancilla_count = be.ancilla_count + 2;
  out.err = be.err;
  return out;
}

BlockEncoding apply_svt(const BlockEncoding& be, const QsvtPolynomial& poly) {
  const SvdFactors f = svd(be.block);
  if (f.degenerate()) throw DegenerateError("apply_svt: encoded matrix is zero");
  const double sigma_r = f.sigma_min();
  if (poly.delta > sigma_r / 3.0 * (1.0 + 1e-12)) {
    throw PreconditionError("apply_svt: delta = " + std::to_string(poly.delta) +
                            " exceeds sigma_r(A)/(3 alpha) = " + std::to_string(sigma_r / 3.0));
  }
  BlockEncoding out;
  out.block = f.u * poly.eval(f.singulars).asDiagonal() * f.v.transpose();
  out.alpha = 1.0;
  out.ancilla_count = be.ancilla_count + 1;
  out.err = 4.0 * static_cast<double>(poly.degree) * std::sqrt(be.err / be.alpha) + 2.0 * poly.eps;
  out.svt = SvtInfo{poly.degree, poly.delta, poly.eps, be.alpha, sigma_r * be.alpha};
  return out;
}

}  // namespace lvs
