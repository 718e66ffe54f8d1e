#include "lvs/error.hpp"
#include "lvs/instances.hpp"
#include "lvs/linalg.hpp"
#include "lvs/rng.hpp"

#include <doctest.h>

#include <Eigen/QR>
#include <cmath>
#include <set>

using namespace lvs;

namespace {

Matrix mat(Index n, Index d, std::initializer_list<double> rowwise) {
  Matrix m(n, d);
  auto it = rowwise.begin();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = *it++;
  return m;
}

// diag(A A^+) through a complete orthogonal decomposition, no SVD involved.
Vector projection_diagonal(const Matrix& a) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(1e-10);
  const Matrix p = a * cod.pseudoInverse();
  return p.diagonal();
}

Matrix random_rank(Index n, Index d, Index r, Rng& rng) {
  return gaussian_matrix(n, r, rng) * gaussian_matrix(r, d, rng);
}

}  // namespace

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a(7), b(7);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng s0 = Rng::stream(7, 0), s1 = Rng::stream(7, 1), s0b = Rng::stream(7, 0);
  CHECK(s0.next_u64() == s0b.next_u64());
  CHECK(Rng::stream(7, 0).next_u64() != s1.next_u64());
  Rng u(3);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    mean += x / 20000;
  }
  CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
  std::set<std::size_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(u.index_below(5));
  CHECK(seen == std::set<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("svd examples") {
  SUBCASE("identity") {
    const SvdFactors f = svd(Matrix::Identity(3, 3));
    CHECK(f.rank() == 3);
    CHECK((f.singulars - Vector::Ones(3)).norm() < 1e-14);
    CHECK((f.u * f.v.transpose() - Matrix::Identity(3, 3)).norm() < 1e-14);
  }
  SUBCASE("diagonal reorders descending") {
    const SvdFactors f = svd(mat(2, 2, {3, 0, 0, 4}));
    CHECK(f.rank() == 2);
    CHECK(f.singulars(0) == doctest::Approx(4.0));
    CHECK(f.singulars(1) == doctest::Approx(3.0));
  }
  SUBCASE("shared direction") {
    const SvdFactors f = svd(mat(3, 2, {1, 0, 1, 0, 0, 1}));
    CHECK(f.rank() == 2);
    CHECK(f.singulars(0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(f.singulars(1) == doctest::Approx(1.0));
  }
  SUBCASE("zero matrix is degenerate, not an error") {
    const SvdFactors f = svd(Matrix::Zero(3, 2));
    CHECK(f.degenerate());
    const ScoreVector s = row_leverage_scores(f);
    CHECK(s.degenerate);
    CHECK(s.scores.size() == 3);
    CHECK(s.scores.isZero());
    CHECK_THROWS_AS(polar_factor(f), DegenerateError);
  }
  SUBCASE("invalid input") {
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(svd(bad), InputError);
    CHECK_THROWS_AS(svd(Matrix::Identity(2, 2), 0.0), ParameterError);
    CHECK_THROWS_AS(svd(Matrix::Identity(2, 2), 0.5), ParameterError);
  }
}

TEST_CASE("polar factor examples") {
  CHECK((polar_factor(svd(Matrix::Identity(2, 2))) - Matrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((polar_factor(svd(mat(2, 2, {3, 0, 0, 4}))) - Matrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((polar_factor(svd(mat(2, 2, {0, 2, 1, 0}))) - mat(2, 2, {0, 1, 1, 0})).norm() < 1e-14);
}

TEST_CASE("leverage score examples") {
  CHECK((row_leverage_scores(svd(Matrix::Identity(3, 3))).scores - Vector::Ones(3)).norm() < 1e-14);
  const Vector s = row_leverage_scores(svd(mat(3, 2, {1, 0, 1, 0, 0, 1}))).scores;
  CHECK(s(0) == doctest::Approx(0.5));
  CHECK(s(1) == doctest::Approx(0.5));
  CHECK(s(2) == doctest::Approx(1.0));
  Matrix diag = Vector((Vector(4) << 0, 1, 0, 1).finished()).asDiagonal();
  const Vector ds = row_leverage_scores(svd(diag)).scores;
  CHECK((ds - (Vector(4) << 0, 1, 0, 1).finished()).norm() < 1e-14);
}

TEST_CASE("property: scores match the projection diagonal, sum to the rank, and are scale invariant") {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + static_cast<Index>(rng.index_below(60));
    const Index d = 1 + static_cast<Index>(rng.index_below(12));
    const Index r = 1 + static_cast<Index>(rng.index_below(static_cast<std::size_t>(std::min(n, d))));
    const Matrix a = random_rank(n, d, r, rng);
    const SvdFactors f = svd(a);
    REQUIRE(f.rank() == r);
    const ScoreVector rows = row_leverage_scores(f);
    const ScoreVector cols = col_leverage_scores(f);
    CHECK((rows.scores - projection_diagonal(a)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((cols.scores - projection_diagonal(a.transpose())).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(rows.total - r) < 1e-8);
    CHECK(std::abs(cols.scores.sum() - r) < 1e-8);
    const double c = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::exp(6.0 * rng.uniform() - 3.0);
    CHECK((row_leverage_scores(svd(c * a)).scores - rows.scores).cwiseAbs().maxCoeff() < 1e-9);
    // Polar factor: singular values all one, row norms reproduce the scores.
    const Matrix w = polar_factor(f);
    const Vector ws = Eigen::JacobiSVD<Matrix>(w).singularValues().head(r);
    CHECK((ws.array() - 1.0).abs().maxCoeff() < 1e-10);
    CHECK((w.rowwise().squaredNorm() - rows.scores).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((f.reconstruct() - a).norm() <= 1e-10 * a.norm());
  }
}

TEST_CASE("distribution validation") {
  CHECK_NOTHROW(Distribution({0.5, 0.5}));
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), InputError);
  CHECK_THROWS_AS(Distribution({-0.1, 1.1}), InputError);
  CHECK_THROWS_AS(Distribution(std::vector<double>{}), InputError);
  CHECK_THROWS_AS(Distribution::from_weights(Vector::Zero(3)), DegenerateError);
  const Distribution p = Distribution::from_weights((Vector(2) << 1, 3).finished());
  CHECK(p[1] == doctest::Approx(0.75));
}

TEST_CASE("extended matrix examples") {
  CHECK((extended_matrix(mat(1, 1, {2}), 1.0) - mat(2, 1, {2, 1})).norm() == 0.0);
  CHECK((extended_matrix(Matrix::Zero(2, 2), 1.0) - mat(4, 2, {0, 0, 0, 0, 1, 0, 0, 1})).norm() == 0.0);
  const Matrix e = extended_matrix(mat(2, 2, {3, 0, 0, 4}), 2.0);
  CHECK(e.rows() == 4);
  CHECK((e.bottomRows(2) - 2.0 * Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK_THROWS_AS(extended_matrix(Matrix::Identity(2, 2), 0.0), ParameterError);
  CHECK_THROWS_AS(extended_matrix(Matrix::Identity(2, 2), -1.0), ParameterError);
}

TEST_CASE("extended svd examples") {
  SUBCASE("scalar") {
    const ExtendedSvd e = extended_svd(svd(mat(1, 1, {2})), 1.0);
    CHECK(e.sigma(0) == doctest::Approx(1.0 / std::sqrt(5.0)));
    CHECK(std::abs(e.u_tilde(0, 0)) == doctest::Approx(2.0 / std::sqrt(5.0)));
    CHECK(std::abs(e.u_tilde(1, 0)) == doctest::Approx(1.0 / std::sqrt(5.0)));
  }
  SUBCASE("identity") {
    const ExtendedSvd e = extended_svd(svd(Matrix::Identity(2, 2)), 1.0);
    const Matrix top = e.u_tilde.topRows(2);
    CHECK((top * top.transpose() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-14);
  }
  SUBCASE("diagonal stack singulars") {
    const ExtendedSvd e = extended_svd(svd(mat(2, 2, {3, 0, 0, 4})), 1.0);
    std::vector<double> s = {1.0 / e.sigma(0), 1.0 / e.sigma(1)};
    std::sort(s.begin(), s.end());
    CHECK(s[0] == doctest::Approx(std::sqrt(10.0)));
    CHECK(s[1] == doctest::Approx(std::sqrt(17.0)));
  }
}

TEST_CASE("property: extended svd reconstructs the stack") {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const Index n = 1 + static_cast<Index>(rng.index_below(30));
    const Index d = 1 + static_cast<Index>(rng.index_below(10));
    const Index r = 1 + static_cast<Index>(rng.index_below(static_cast<std::size_t>(std::min(n, d))));
    const Matrix a = random_rank(n, d, r, rng);
    const double lambda = std::exp(4.0 * rng.uniform() - 2.0);
    const ExtendedSvd e = extended_svd(svd(a), lambda);
    const Matrix rebuilt = e.u_tilde * e.sigma.cwiseInverse().asDiagonal() * e.v.transpose();
    CHECK(spectral_norm(rebuilt - extended_matrix(a, lambda)) <= 1e-8);
    CHECK((e.u_tilde.transpose() * e.u_tilde - Matrix::Identity(d, d)).norm() < 1e-10);
  }
}

TEST_CASE("svd of a tall stack with a clustered spectrum") {
  // [A; lambda I] with rank(A) = 10 < d = 40 has 30 singular values equal to lambda.
  Rng rng(13);
  Vector s(10);
  for (Index i = 0; i < 10; ++i) s(i) = std::pow(0.8, static_cast<double>(i));
  for (int t = 0; t < 5; ++t) {
    const Matrix a = random_orthonormal(2000, 10, rng) * s.asDiagonal() * random_orthonormal(40, 10, rng).transpose();
    const Matrix x = extended_matrix(a, 0.3);
    const SvdFactors f = svd(x);
    CHECK(f.rank() == 40);
    CHECK(f.sigma_min() >= 0.3 * (1 - 1e-12));
    CHECK(spectral_norm(f.reconstruct() - x) <= 1e-12);
  }
}

TEST_CASE("statistical dimension") {
  CHECK(statistical_dimension(Vector::Ones(2), 0.0) == 2.0);
  CHECK(statistical_dimension((Vector(2) << 3, 4).finished(), 1.0) == doctest::Approx(0.9 + 16.0 / 17.0));
  CHECK(statistical_dimension(Vector::Ones(1), 1e8) < 1e-15);
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    Vector s(6);
    for (Index i = 0; i < 6; ++i) s(i) = 3.0 * rng.uniform();
    double prev = 7.0;
    for (double lambda : {0.0, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0}) {
      const double sd = statistical_dimension(s, lambda);
      CHECK(sd <= prev + 1e-15);
      prev = sd;
    }
  }
}

TEST_CASE("ridge row scores") {
  const Vector s = ridge_row_scores(mat(2, 2, {3, 0, 0, 4}), 1.0).scores;
  CHECK(s(0) == doctest::Approx(0.9));
  CHECK(s(1) == doctest::Approx(16.0 / 17.0));
  CHECK((ridge_row_scores(Matrix::Identity(2, 2), 1.0).scores - Vector::Constant(2, 0.5)).norm() < 1e-14);
  CHECK(ridge_row_scores(mat(1, 1, {2}), 1.0).scores(0) == doctest::Approx(0.8));

  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const Index n = 3 + static_cast<Index>(rng.index_below(40));
    const Index d = 1 + static_cast<Index>(rng.index_below(8));
    const Matrix a = gaussian_matrix(n, d, rng);
    const double lambda = std::exp(2.0 * rng.uniform() - 1.0);
    // Oracle: diag(A (A^T A + lambda^2 I)^{-1} A^T) by Cholesky.
    Matrix g = a.transpose() * a;
    g.diagonal().array() += lambda * lambda;
    const Matrix h = a * Eigen::LLT<Matrix>(g).solve(a.transpose());
    CHECK((ridge_row_scores(a, lambda).scores - h.diagonal()).cwiseAbs().maxCoeff() < 1e-10);
    // Limit lambda -> 0 on full column rank.
    if (n >= d) {
      const SvdFactors f = svd(a);
      const Vector lim = ridge_row_scores(f, 1e-6 * f.sigma_min()).scores;
      CHECK((lim - row_leverage_scores(f).scores).cwiseAbs().maxCoeff() < 1e-4);
    }
  }
}

TEST_CASE("score tail check") {
  SUBCASE("identity scores with eps 0.5 fall outside the assumption range") {
    // r/n - eps/2n = 1 - 1/16 > 0.5, so the stated assumption does not hold.
    ScoreVector s = row_leverage_scores(svd(Matrix::Identity(4, 4)));
    CHECK(score_tail_check(s, 0.5).status == TailStatus::assumption_violated);
  }
  SUBCASE("tall random matrix holds") {
    Rng rng(15);
    const ScoreVector s = row_leverage_scores(svd(gaussian_matrix(100, 2, rng)));
    const TailCheck tc = score_tail_check(s, 0.1);
    CHECK(tc.status == TailStatus::holds);
    CHECK(tc.index == 20);
    CHECK(tc.bound == doctest::Approx(0.1 / 200));
    // Brute-force oracle on the sorted scores.
    std::vector<double> sorted(s.scores.data(), s.scores.data() + s.scores.size());
    std::sort(sorted.rbegin(), sorted.rend());
    CHECK(tc.score_at_index == sorted[19]);
  }
  SUBCASE("eps outside the range") {
    Rng rng(16);
    const ScoreVector s = row_leverage_scores(svd(gaussian_matrix(50, 5, rng)));
    CHECK(score_tail_check(s, 0.01).status == TailStatus::assumption_violated);
    CHECK(score_tail_check(s, 0.999).status == TailStatus::assumption_violated);
    CHECK(score_tail_check(s, 0.0).status == TailStatus::assumption_violated);
  }
  SUBCASE("padded identity is a counterexample") {
    // I_2 stacked on zero rows: only two nonzero scores, so the ceil(r/eps)-th is 0.
    Matrix a = Matrix::Zero(100, 2);
    a.topRows(2) = Matrix::Identity(2, 2);
    const TailCheck tc = score_tail_check(row_leverage_scores(svd(a)), 0.5);
    CHECK(tc.status == TailStatus::fails);
  }
}

TEST_CASE("stable ceil ignores rounding noise") {
  CHECK(stable_ceil(3.0) == 3);
  CHECK(stable_ceil(3.0 + 1e-13) == 3);
  CHECK(stable_ceil(3.01) == 4);
  CHECK(stable_ceil(0.2 / 0.1) == 2);
}
