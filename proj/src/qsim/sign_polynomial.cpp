#include "lvs/error.hpp"
#include "lvs/quantum.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace lvs {

namespace {

constexpr std::size_t kMaxDegree = 4096;

double clenshaw(const Vector& c, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (Index j = c.size() - 1; j >= 1; --j) {
    const double b0 = 2.0 * x * b1 - b2 + c(j);
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c(0);
}

// Coefficients of the degree-m interpolant at the m + 1 Chebyshev points.
Vector chebyshev_interpolate(const std::function<double(double)>& f, std::size_t m) {
  const std::size_t n = m + 1;
  const double nn = static_cast<double>(n);
  std::vector<double> fx(n);
  std::vector<double> theta(n);
  for (std::size_t k = 0; k < n; ++k) {
    theta[k] = std::numbers::pi * (static_cast<double>(k) + 0.5) / nn;
    fx[k] = f(std::cos(theta[k]));
  }
  Vector c(static_cast<Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += fx[k] * std::cos(static_cast<double>(j) * theta[k]);
    c(static_cast<Index>(j)) = 2.0 * acc / nn;
  }
  c(0) *= 0.5;
  return c;
}

void zero_even(Vector& c) {
  for (Index j = 0; j < c.size(); j += 2) c(j) = 0.0;
}

QsvtPolynomial candidate(double delta, double eps, double kappa, std::size_t m) {
  // P(x) = erf(kappa x) on [-2, 2], expanded in T_j(x / 2).
  Vector cp = chebyshev_interpolate([kappa](double y) { return std::erf(2.0 * kappa * y); }, m);
  zero_even(cp);
  double peak = 0.0;
  const int grid = 20001;
  for (int i = 0; i < grid; ++i) {
    const double y = -1.0 + 2.0 * i / (grid - 1);
    peak = std::max(peak, std::abs(clenshaw(cp, y)));
  }
  const double scale = 1.0 / std::max(1.0, peak);
  auto p = [&](double x) { return scale * clenshaw(cp, 0.5 * x); };

  QsvtPolynomial q;
  q.cheb_coeffs = chebyshev_interpolate(
      [&](double x) { return (1.0 - eps) * 0.5 * (p(x + 2.0 * delta) - p(-x + 2.0 * delta)); }, m);
  zero_even(q.cheb_coeffs);
  q.degree = m;
  q.delta = delta;
  q.eps = eps;
  q.kappa = kappa;
  return q;
}

}  // namespace

double QsvtPolynomial::eval(double x) const { return clenshaw(cheb_coeffs, x); }

Vector QsvtPolynomial::eval(const Vector& x) const {
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out(i) = eval(x(i));
  return out;
}

PolyCertificate certify(const QsvtPolynomial& poly, std::size_t grid_points) {
  PolyCertificate cert;
  cert.grid_points = grid_points;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    const double q = poly.eval(x);
    cert.max_abs = std::max(cert.max_abs, std::abs(q));
    const double ax = std::abs(x);
    if (ax >= 3.0 * poly.delta) cert.max_sign_error = std::max(cert.max_sign_error, std::abs(q - (x > 0 ? 1.0 : -1.0)));
    if (ax <= poly.delta) cert.max_window = std::max(cert.max_window, std::abs(q));
  }
  cert.ok = cert.max_abs <= 1.0 && cert.max_sign_error <= 2.0 * poly.eps && cert.max_window <= 2.0 * poly.eps;
  return cert;
}

QsvtPolynomial build_sign_polynomial(double delta, double eps) {
  if (!(delta > 0.0) || delta > 1.0 / 6.0 + 1e-15) throw ParameterError("build_sign_polynomial: delta must lie in (0, 1/6]");
  if (!(eps > 0.0 && eps < 0.5)) throw ParameterError("build_sign_polynomial: eps must lie in (0, 1/2)");

  // |erf(kappa x) - sign(x)| <= eps / 2 once |x| >= delta.
  const double kappa = boost::math::erfc_inv(eps / 2.0) / delta;
  const std::size_t base = stable_ceil(std::log(1.0 / eps) / delta);
  std::size_t m = base | 1U;
  PolyCertificate last;
  while (m <= kMaxDegree) {
    QsvtPolynomial q = candidate(delta, eps, kappa, m);
    last = certify(q);
    if (last.ok) {
      q.degree_constant = static_cast<double>(m) / static_cast<double>(base);
      return q;
    }
    m = (2 * m) | 1U;
  }
  std::ostringstream msg;
  msg << "build_sign_polynomial: no certified polynomial up to degree " << kMaxDegree << " (delta=" << delta
      << ", eps=" << eps << "; last max|Q|=" << last.max_abs << ", sign error=" << last.max_sign_error
      << ", window=" << last.max_window << ")";
  throw ConstructionError(msg.str());
}

}  // namespace lvs
