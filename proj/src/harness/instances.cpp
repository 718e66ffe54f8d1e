#include "lvs/instances.hpp"

#include "lvs/error.hpp"
#include "lvs/io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lvs {

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::file:
      return "file";
    case InstanceKind::random_lowrank:
      return "random-lowrank";
    case InstanceKind::coherent:
      return "coherent";
    case InstanceKind::diag_search:
      return "diag-search";
    case InstanceKind::existence:
      return "existence";
    case InstanceKind::spike:
      return "spike";
  }
  return "?";
}

InstanceKind parse_instance_kind(const std::string& name) {
  for (auto k : {InstanceKind::file, InstanceKind::random_lowrank, InstanceKind::coherent, InstanceKind::diag_search,
                 InstanceKind::existence, InstanceKind::spike}) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown instance kind '" + name + "'");
}

Matrix gaussian_matrix(Index n, Index d, Rng& rng) {
  Matrix g(n, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  return g;
}

Vector gaussian_vector(Index n, Rng& rng) {
  Vector g(n);
  for (Index i = 0; i < n; ++i) g(i) = rng.normal();
  return g;
}

Matrix random_orthonormal(Index n, Index k, Rng& rng) {
  if (k > n) throw ParameterError("random_orthonormal: k exceeds n");
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, k, rng));
  return qr.householderQ() * Matrix::Identity(n, k);
}

namespace {

std::vector<int> make_pattern(const InstanceSpec& spec, Index length, Index ones, Rng& rng) {
  if (!spec.pattern.empty()) {
    if (static_cast<Index>(spec.pattern.size()) != length) {
      throw ParameterError("instance pattern has length " + std::to_string(spec.pattern.size()) + ", expected " +
                           std::to_string(length));
    }
    for (int v : spec.pattern)
      if (v != 0 && v != 1) throw ParameterError("instance pattern must be 0/1");
    return spec.pattern;
  }
  if (ones < 0 || ones > length) throw ParameterError("number of marked entries out of range");
  std::vector<std::size_t> idx(static_cast<std::size_t>(length));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates.
  for (Index t = 0; t < ones; ++t) {
    const std::size_t pick = static_cast<std::size_t>(t) + rng.index_below(idx.size() - static_cast<std::size_t>(t));
    std::swap(idx[static_cast<std::size_t>(t)], idx[pick]);
  }
  std::vector<int> out(static_cast<std::size_t>(length), 0);
  for (Index t = 0; t < ones; ++t) out[idx[static_cast<std::size_t>(t)]] = 1;
  return out;
}

void require_positive(Index v, const char* what) {
  if (v < 1) throw ParameterError(std::string("instance: ") + what + " must be positive");
}

}  // namespace

Instance generate_instance(const InstanceSpec& spec, Rng& rng) {
  Instance out;
  std::ostringstream desc;
  switch (spec.kind) {
    case InstanceKind::file: {
      if (spec.path.empty()) throw ParameterError("instance: file kind needs a path");
      out.a = io::load_matrix(spec.path);
      if (!spec.b_path.empty()) out.b = io::load_vector(spec.b_path);
      desc << "file " << spec.path;
      break;
    }
    case InstanceKind::random_lowrank: {
      require_positive(spec.n, "n");
      require_positive(spec.d, "d");
      const Index r = spec.r == 0 ? std::min(spec.n, spec.d) : spec.r;
      if (r < 1 || r > std::min(spec.n, spec.d)) throw ParameterError("instance: rank out of range");
      if (!(spec.decay > 0.0 && spec.decay <= 1.0)) throw ParameterError("instance: decay must lie in (0, 1]");
      const Matrix u = random_orthonormal(spec.n, r, rng);
      const Matrix v = random_orthonormal(spec.d, r, rng);
      Vector s(r);
      for (Index i = 0; i < r; ++i) s(i) = std::pow(spec.decay, static_cast<double>(i));
      out.a = u * s.asDiagonal() * v.transpose();
      const Vector ax = out.a * gaussian_vector(spec.d, rng);
      const Vector g = gaussian_vector(spec.n, rng);
      out.b = ax + spec.noise * (ax.norm() / g.norm()) * g;
      desc << "random-lowrank n=" << spec.n << " d=" << spec.d << " r=" << r << " decay=" << spec.decay;
      break;
    }
    case InstanceKind::coherent: {
      require_positive(spec.n, "n");
      require_positive(spec.d, "d");
      if (spec.d > spec.n) throw ParameterError("instance: coherent needs n >= d");
      out.a = gaussian_matrix(spec.n, spec.d, rng);
      double scale = 1.0;
      for (int iter = 0; iter < 200; ++iter) {
        if (row_leverage_scores(svd(out.a)).scores(0) >= 0.9) break;
        out.a.row(0) *= 2.0;
        scale *= 2.0;
      }
      out.b = gaussian_vector(spec.n, rng);
      desc << "coherent n=" << spec.n << " d=" << spec.d << " row0 scale=" << scale;
      break;
    }
    case InstanceKind::diag_search: {
      require_positive(spec.n, "n");
      out.pattern = make_pattern(spec, spec.n, spec.pattern.empty() ? spec.r : 0, rng);
      out.a = Matrix::Zero(spec.n, spec.n);
      for (Index i = 0; i < spec.n; ++i) out.a(i, i) = out.pattern[static_cast<std::size_t>(i)];
      out.b = Vector::Ones(spec.n);
      desc << "diag-search n=" << spec.n;
      break;
    }
    case InstanceKind::existence: {
      require_positive(spec.n, "n");
      out.pattern = make_pattern(spec, spec.n, spec.marked, rng);
      out.a = Matrix::Zero(spec.n + 1, 2);
      out.a(0, 0) = 1.0;
      for (Index i = 0; i < spec.n; ++i) out.a(i + 1, 1) = out.pattern[static_cast<std::size_t>(i)];
      out.b = Vector::Ones(spec.n + 1);
      desc << "existence n=" << spec.n;
      break;
    }
    case InstanceKind::spike: {
      require_positive(spec.n, "n");
      out.pattern = make_pattern(spec, spec.n, spec.marked, rng);
      const double root = std::sqrt(static_cast<double>(spec.n));
      out.a = Matrix::Constant(spec.n, 1, 1.0 / root);
      Vector b = Vector::Constant(spec.n, 1.0 / root);
      for (Index i = 0; i < spec.n; ++i) b(i) += root * out.pattern[static_cast<std::size_t>(i)];
      out.b = b;
      desc << "spike n=" << spec.n;
      break;
    }
  }
  out.description = desc.str();
  return out;
}

}  // namespace lvs
