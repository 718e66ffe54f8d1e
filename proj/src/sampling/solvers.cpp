#include "lvs/error.hpp"
#include "lvs/sampling.hpp"

#include <cmath>
#include <map>

namespace lvs {

Vector solve_ls_direct(const Matrix& a, const Vector& b) {
  require_finite(a, "solve_ls_direct");
  if (b.size() != a.rows()) throw InputError("solve_ls_direct: b has the wrong length");
  if (a.isZero(0.0)) throw DegenerateError("solve_ls_direct: zero matrix");
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(kDefaultRankTol);
  return cod.solve(b);
}

CgnrResult solve_ls_cgnr(const Matrix& a, const Vector& b, double tol, std::size_t maxit) {
  require_finite(a, "solve_ls_cgnr");
  if (b.size() != a.rows()) throw InputError("solve_ls_cgnr: b has the wrong length");
  if (a.isZero(0.0)) throw DegenerateError("solve_ls_cgnr: zero matrix");
  if (maxit == 0) maxit = 10 * static_cast<std::size_t>(a.cols());

  CgnrResult out;
  out.x = Vector::Zero(a.cols());
  Vector r = b;
  Vector z = a.transpose() * r;
  const double target = tol * z.norm();
  double zz = z.squaredNorm();
  out.normal_residual = std::sqrt(zz);
  if (out.normal_residual <= target) {
    out.converged = true;
    return out;
  }
  Vector p = z;
  while (out.iterations < maxit) {
    const Vector w = a * p;
    const double ww = w.squaredNorm();
    if (ww == 0.0) break;
    const double step = zz / ww;
    out.x += step * p;
    r -= step * w;
    z = a.transpose() * r;
    const double zz_new = z.squaredNorm();
    ++out.iterations;
    out.normal_residual = std::sqrt(zz_new);
    if (out.normal_residual <= target) {
      out.converged = true;
      break;
    }
    p = z + (zz_new / zz) * p;
    zz = zz_new;
  }
  return out;
}

double objective_ridge(const Matrix& a, const Vector& b, double lambda, const Vector& x) {
  if (a.cols() != x.size() || a.rows() != b.size()) throw InputError("objective_ridge: dimension mismatch");
  return (a * x - b).squaredNorm() + lambda * lambda * x.squaredNorm();
}

double residual_norm(const Matrix& a, const Vector& b, const Vector& x) {
  if (a.cols() != x.size() || a.rows() != b.size()) throw InputError("residual_norm: dimension mismatch");
  return (a * x - b).norm();
}

Vector ridge_estimator(const Matrix& a, const SamplingMatrix& r, const Vector& b, double lambda) {
  require_finite(a, "ridge_estimator");
  if (b.size() != a.rows()) throw InputError("ridge_estimator: b has the wrong length");
  if (r.side != Side::column || r.ambient != a.cols()) {
    throw InputError("ridge_estimator: R must be a column sampler over the columns of A");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("ridge_estimator: lambda must be nonnegative");

  // A R R^T A^T = A_J diag(w) A_J^T with w_j the summed squared weights of column j.
  std::map<Index, double> merged;
  for (const auto& d : r.draws) merged[d.index] += d.weight * d.weight;
  const Index n = a.rows();
  const Index k = static_cast<Index>(merged.size());
  Matrix aj(n, k);
  Vector w(k);
  Index t = 0;
  for (const auto& [col, weight] : merged) {
    aj.col(t) = a.col(col);
    w(t) = weight;
    ++t;
  }

  const double l2 = lambda * lambda;
  Vector y;
  if (l2 > 0.0 && n > k) {
    // (l2 I + B W B^T)^{-1} b = (b - B (l2 W^{-1} + B^T B)^{-1} B^T b) / l2
    Matrix small = aj.transpose() * aj;
    small.diagonal() += l2 * w.cwiseInverse();
    Eigen::LLT<Matrix> llt(small);
    if (llt.info() != Eigen::Success) throw PreconditionError("ridge_estimator: reduced system not positive definite");
    y = (b - aj * llt.solve(aj.transpose() * b)) / l2;
  } else {
    Matrix big = aj * w.asDiagonal() * aj.transpose();
    big.diagonal().array() += l2;
    Eigen::LLT<Matrix> llt(big);
    bool ok = llt.info() == Eigen::Success;
    if (ok && l2 == 0.0) {
      const Vector diag = llt.matrixL().toDenseMatrix().diagonal();
      ok = diag.minCoeff() > 1e-8 * diag.maxCoeff();
    }
    if (!ok) throw PreconditionError("ridge_estimator: A R R^T A^T + lambda^2 I is singular (ill-posed)");
    y = llt.solve(b);
  }
  return a.transpose() * y;
}

Vector ridge_solution_exact(const SvdFactors& f, const Vector& b, double lambda) {
  if (b.size() != f.rows) throw InputError("ridge_solution_exact: b has the wrong length");
  if (!(lambda >= 0.0)) throw ParameterError("ridge_solution_exact: lambda must be nonnegative");
  if (f.degenerate()) return Vector::Zero(f.cols);
  const Vector gain =
      (f.singulars.array() / (f.singulars.array().square() + lambda * lambda)).matrix();
  return f.v * gain.asDiagonal() * (f.u.transpose() * b);
}

Vector ridge_solution_exact(const Matrix& a, const Vector& b, double lambda) {
  return ridge_solution_exact(svd(a), b, lambda);
}

}  // namespace lvs
