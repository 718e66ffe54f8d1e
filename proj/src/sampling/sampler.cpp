#include "lvs/error.hpp"
#include "lvs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace lvs {

DiscreteSampler::DiscreteSampler(const Distribution& dist) {
  cdf_.resize(dist.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i];
    cdf_[i] = acc;
    if (dist[i] > 0.0) last_positive_ = i;
  }
}

std::size_t DiscreteSampler::draw(Rng& rng) const {
  const double u = rng.uniform() * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto i = static_cast<std::size_t>(it - cdf_.begin());
  return std::min(i, last_positive_);
}

std::size_t SamplingMatrix::distinct() const {
  std::unordered_set<Index> seen;
  for (const auto& d : draws) seen.insert(d.index);
  return seen.size();
}

SamplingMatrix draw_sampler(const Distribution& dist, std::size_t q, Side side, Rng& rng) {
  if (q == 0) throw ParameterError("draw_sampler: q must be at least 1");
  const DiscreteSampler sampler(dist);
  SamplingMatrix s;
  s.side = side;
  s.ambient = static_cast<Index>(dist.size());
  s.draws.reserve(q);
  const double qq = static_cast<double>(q);
  for (std::size_t t = 0; t < q; ++t) {
    const std::size_t i = sampler.draw(rng);
    const double p = std::max(dist[i], kProbabilityFloor);
    s.draws.push_back({static_cast<Index>(i), 1.0 / std::sqrt(qq * p)});
  }
  return s;
}

SamplingMatrix draw_row_sampler(const Distribution& dist, std::size_t q, Rng& rng) {
  return draw_sampler(dist, q, Side::row, rng);
}

SamplingMatrix make_sampler(Side side, Index ambient, const std::vector<Index>& indices,
                            const std::vector<double>& probs) {
  if (indices.empty()) throw ParameterError("make_sampler: no draws");
  if (indices.size() != probs.size()) throw InputError("make_sampler: indices and probs differ in length");
  SamplingMatrix s;
  s.side = side;
  s.ambient = ambient;
  const double q = static_cast<double>(indices.size());
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 0 || indices[t] >= ambient) throw InputError("make_sampler: index out of range");
    if (!std::isfinite(probs[t]) || probs[t] < 0.0) throw InputError("make_sampler: bad probability");
    s.draws.push_back({indices[t], 1.0 / std::sqrt(q * std::max(probs[t], kProbabilityFloor))});
  }
  return s;
}

Matrix apply_sampler(const SamplingMatrix& s, const Matrix& a) {
  const Index q = static_cast<Index>(s.count());
  if (s.side == Side::row) {
    if (a.rows() != s.ambient) {
      throw InputError("apply_sampler: sampler spans " + std::to_string(s.ambient) + " rows, matrix has " +
                       std::to_string(a.rows()));
    }
    Matrix out(q, a.cols());
    for (Index t = 0; t < q; ++t) {
      const Draw& d = s.draws[static_cast<std::size_t>(t)];
      out.row(t) = d.weight * a.row(d.index);
    }
    return out;
  }
  if (a.cols() != s.ambient) {
    throw InputError("apply_sampler: sampler spans " + std::to_string(s.ambient) + " columns, matrix has " +
                     std::to_string(a.cols()));
  }
  Matrix out(a.rows(), q);
  for (Index t = 0; t < q; ++t) {
    const Draw& d = s.draws[static_cast<std::size_t>(t)];
    out.col(t) = d.weight * a.col(d.index);
  }
  return out;
}

Vector apply_sampler(const SamplingMatrix& s, const Vector& b) {
  if (s.side != Side::row) throw InputError("apply_sampler: vectors take a row sampler");
  if (b.size() != s.ambient) throw InputError("apply_sampler: vector length mismatch");
  Vector out(static_cast<Index>(s.count()));
  for (std::size_t t = 0; t < s.count(); ++t) {
    out(static_cast<Index>(t)) = s.draws[t].weight * b(s.draws[t].index);
  }
  return out;
}

Matrix to_dense(const SamplingMatrix& s) {
  const Index q = static_cast<Index>(s.count());
  Matrix out = Matrix::Zero(q, s.ambient);
  for (Index t = 0; t < q; ++t) {
    const Draw& d = s.draws[static_cast<std::size_t>(t)];
    out(t, d.index) = d.weight;
  }
  if (s.side == Side::column) out.transposeInPlace();
  return out;
}

}  // namespace lvs
