#include "lvs/error.hpp"
#include "lvs/instances.hpp"
#include "lvs/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace lvs;

namespace {

Matrix mat(Index n, Index d, std::initializer_list<double> rowwise) {
  Matrix m(n, d);
  auto it = rowwise.begin();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = *it++;
  return m;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Normal-equation solutions, independent of the SVD and COD paths.
Vector ls_oracle(const Matrix& a, const Vector& b) {
  return (a.transpose() * a).ldlt().solve(a.transpose() * b);
}

Vector ridge_oracle(const Matrix& a, const Vector& b, double lambda) {
  Matrix g = a.transpose() * a;
  g.diagonal().array() += lambda * lambda;
  return g.ldlt().solve(a.transpose() * b);
}

SamplingMatrix identity_sampler(Side side, Index n) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  return make_sampler(side, n, idx, std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n)));
}

}  // namespace

TEST_CASE("row sampler examples") {
  Rng rng(1);
  SUBCASE("uniform pair") {
    const SamplingMatrix s = draw_row_sampler(Distribution({0.5, 0.5}), 2, rng);
    REQUIRE(s.count() == 2);
    for (const auto& d : s.draws) CHECK(d.weight == doctest::Approx(1.0));
  }
  SUBCASE("degenerate support") {
    const SamplingMatrix s = draw_row_sampler(Distribution({1.0, 0.0}), 5, rng);
    for (const auto& d : s.draws) CHECK(d.index == 0);
  }
  SUBCASE("zero-probability tail is never drawn") {
    const SamplingMatrix s = draw_row_sampler(Distribution({0.3, 0.7, 0.0, 0.0}), 20000, rng);
    for (const auto& d : s.draws) CHECK(d.index < 2);
  }
  SUBCASE("multinomial frequencies") {
    const SamplingMatrix s = draw_row_sampler(Distribution({0.25, 0.25, 0.25, 0.25}), 10000, rng);
    std::vector<double> freq(4, 0.0);
    for (const auto& d : s.draws) freq[static_cast<std::size_t>(d.index)] += 1e-4;
    for (double f : freq) CHECK(std::abs(f - 0.25) <= 0.02);
  }
  CHECK_THROWS_AS(draw_row_sampler(Distribution({1.0}), 0, rng), ParameterError);
}

TEST_CASE("apply sampler examples") {
  const Matrix a = mat(3, 2, {1, 2, 3, 4, 5, 6});
  SamplingMatrix s;
  s.side = Side::row;
  s.ambient = 3;
  s.draws = {{2, 0.5}};
  CHECK((apply_sampler(s, a) - mat(1, 2, {2.5, 3.0})).norm() == 0.0);
  CHECK((to_dense(s) * a - apply_sampler(s, a)).norm() == 0.0);

  const SamplingMatrix id = identity_sampler(Side::row, 2);
  CHECK((apply_sampler(id, Matrix(Matrix::Identity(2, 2))) - Matrix::Identity(2, 2)).norm() < 1e-15);

  SamplingMatrix c;
  c.side = Side::column;
  c.ambient = 2;
  c.draws = {{1, 2.0}, {1, 2.0}};
  CHECK((apply_sampler(c, a) - mat(3, 2, {4, 4, 8, 8, 12, 12})).norm() == 0.0);
  CHECK_THROWS_AS(apply_sampler(c, Matrix(Matrix::Identity(3, 3))), InputError);
}

TEST_CASE("property: importance weighting is unbiased") {
  Rng rng(2);
  const Matrix a = gaussian_matrix(50, 5, rng);
  const Distribution p = Distribution::from_scores(row_leverage_scores(svd(a)));
  double fro = 0.0;
  Matrix gram = Matrix::Zero(5, 5);
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const Matrix sa = apply_sampler(draw_row_sampler(p, 10, rng), a);
    fro += sa.squaredNorm() / trials;
    gram += sa.transpose() * sa / trials;
  }
  const Matrix g = a.transpose() * a;
  CHECK(std::abs(fro - a.squaredNorm()) <= 0.03 * a.squaredNorm());
  CHECK((gram - g).norm() <= 0.05 * g.norm());
}

TEST_CASE("property: exact-score sampling embeds the column space") {
  int good = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng = Rng::stream(3, static_cast<std::uint64_t>(seed));
    const Matrix a = gaussian_matrix(400, 6, rng);
    const SvdFactors f = svd(a);
    const std::size_t q = ls_sample_count(f.rank(), 0.25, 4.0);
    const SamplingMatrix s = draw_row_sampler(Distribution::from_scores(row_leverage_scores(f)), q, rng);
    const Vector sv = svd(apply_sampler(s, f.u)).singulars;
    const double lo = 1.0 - 1.0 / std::sqrt(2.0);
    const double hi = 1.0 + 1.0 / std::sqrt(2.0);
    good += sv.size() == 6 && sv.minCoeff() >= lo && sv.maxCoeff() <= hi;
  }
  CHECK(good >= 90);
}

TEST_CASE("sketched leverage scores") {
  SUBCASE("identity") {
    Rng rng(4);
    const ScoreVector s = approx_leverage_scores_sketched(Matrix::Identity(10, 10), 0.25, rng);
    CHECK(((s.scores.array() - 1.0).abs() <= 0.25).all());
  }
  SUBCASE("random tall matrices") {
    int good = 0;
    for (int seed = 0; seed < 100; ++seed) {
      Rng rng = Rng::stream(5, static_cast<std::uint64_t>(seed));
      const Matrix a = gaussian_matrix(500, 10, rng);
      const Vector exact = row_leverage_scores(svd(a)).scores;
      const Vector approx = approx_leverage_scores_sketched(a, 0.25, rng).scores;
      good += ((approx - exact).cwiseAbs().array() / exact.array()).maxCoeff() <= 0.25;
    }
    CHECK(good >= 90);
  }
  SUBCASE("rank deficient") {
    Rng rng(6);
    const Matrix a = gaussian_matrix(100, 5, rng) * gaussian_matrix(5, 10, rng);
    Index rank = 0;
    const ScoreVector s = approx_leverage_scores_sketched(a, 0.25, rng, &rank);
    CHECK(rank == 5);
    CHECK(std::abs(s.total - 5.0) <= 1.0);
  }
  SUBCASE("zero matrix") {
    Rng rng(7);
    const ScoreVector s = approx_leverage_scores_sketched(Matrix::Zero(20, 3), 0.25, rng);
    CHECK(s.degenerate);
    CHECK(s.scores.isZero());
  }
  SUBCASE("bad relerr") {
    Rng rng(8);
    CHECK_THROWS_AS(approx_leverage_scores_sketched(Matrix::Identity(3, 3), 0.0, rng), ParameterError);
    CHECK_THROWS_AS(approx_leverage_scores_sketched(Matrix::Identity(3, 3), 1.0, rng), ParameterError);
  }
}

TEST_CASE("least-squares solvers") {
  CHECK((solve_ls_direct(Matrix::Identity(2, 2), vec({1, 2})) - vec({1, 2})).norm() < 1e-15);
  CHECK(solve_ls_direct(mat(2, 1, {1, 1}), vec({0, 2}))(0) == doctest::Approx(1.0));
  CHECK(solve_ls_cgnr(mat(2, 1, {1, 1}), vec({0, 2})).x(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(solve_ls_direct(Matrix::Zero(3, 2), vec({1, 2, 3})), DegenerateError);
  CHECK_THROWS_AS(solve_ls_direct(Matrix::Identity(2, 2), vec({1, 2, 3})), InputError);

  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = gaussian_matrix(50, 3, rng);
    const Vector b = a * gaussian_vector(3, rng);
    CHECK(residual_norm(a, b, solve_ls_direct(a, b)) <= 1e-8);
    const CgnrResult cg = solve_ls_cgnr(a, b);
    CHECK(cg.converged);
    CHECK(residual_norm(a, b, cg.x) <= 1e-8);
    const Vector c = gaussian_vector(50, rng);
    CHECK((solve_ls_direct(a, c) - ls_oracle(a, c)).norm() <= 1e-9 * ls_oracle(a, c).norm());
    CHECK((solve_ls_cgnr(a, c).x - ls_oracle(a, c)).norm() <= 1e-7 * ls_oracle(a, c).norm());
  }
}

TEST_CASE("ridge objective") {
  CHECK(objective_ridge(Matrix::Identity(2, 2), vec({3, 4}), 1.0, Vector::Zero(2)) == doctest::Approx(25.0));
  CHECK(objective_ridge(Matrix::Identity(2, 2), vec({3, 4}), 0.0, vec({3, 4})) == 0.0);
  CHECK(objective_ridge(mat(1, 1, {2}), vec({2}), 1.0, vec({0.8})) == doctest::Approx(0.8));
}

TEST_CASE("ridge estimator") {
  const SamplingMatrix id1 = identity_sampler(Side::column, 1);
  CHECK(ridge_estimator(mat(1, 1, {2}), id1, vec({2}), 1.0)(0) == doctest::Approx(0.8));
  CHECK(ridge_estimator(Matrix::Zero(3, 2), identity_sampler(Side::column, 2), vec({1, 2, 3}), 1.0).isZero());

  Rng rng(10);
  for (int t = 0; t < 100; ++t) {
    const Index n = 1 + static_cast<Index>(rng.index_below(40));
    const Index d = 1 + static_cast<Index>(rng.index_below(40));
    const Matrix a = gaussian_matrix(n, d, rng);
    const Vector b = gaussian_vector(n, rng);
    const double lambda = std::exp(2.0 * rng.uniform() - 1.0);
    const Vector x = ridge_estimator(a, identity_sampler(Side::column, d), b, lambda);
    const Vector oracle = ridge_oracle(a, b, lambda);
    CHECK((x - oracle).norm() <= 1e-8 * std::max(1.0, oracle.norm()));
    CHECK((ridge_solution_exact(a, b, lambda) - oracle).norm() <= 1e-8 * std::max(1.0, oracle.norm()));
  }
}

TEST_CASE("sample counts") {
  CHECK(ls_sample_count(1, 0.5, 4.0) == static_cast<std::size_t>(std::ceil(4.0 * (std::log(2.0) + 2.0))));
  CHECK(ridge_row_count(3, 0.25, 4.0) == static_cast<std::size_t>(std::ceil(4.0 * 12.0 * std::log(4.0))));
  CHECK(ridge_column_count(2, 0.5, 2.0, 1.0, 4.0) ==
        static_cast<std::size_t>(std::ceil(4.0 * (2.0 * std::log(3.0) + 4.0 * 4.0))));
}

TEST_CASE("algorithm 1") {
  SUBCASE("identity") {
    Rng rng(11);
    const SolveReport rep = algorithm1_ls(Matrix::Identity(3, 3), vec({1, -2, 3}), 0.5, rng);
    CHECK((rep.solution - vec({1, -2, 3})).norm() < 1e-12);
  }
  SUBCASE("consistent system") {
    Rng rng(12);
    const Matrix a = gaussian_matrix(200, 5, rng);
    const Vector b = a * gaussian_vector(5, rng);
    for (ScoreMode mode : {ScoreMode::exact, ScoreMode::sketched}) {
      const SolveReport rep = algorithm1_ls(a, b, 0.25, rng, mode);
      CHECK(rep.objective <= 1e-8);
      CHECK(rep.ratio.has_value());
    }
  }
  SUBCASE("ratios dominate one and meet the guarantee") {
    int good = 0;
    for (int seed = 0; seed < 100; ++seed) {
      Rng rng = Rng::stream(13, static_cast<std::uint64_t>(seed));
      const Matrix a = gaussian_matrix(1024, 20, rng);
      const Vector b = a * gaussian_vector(20, rng) + gaussian_vector(1024, rng);
      const SolveReport rep = algorithm1_ls(a, b, 0.25, rng);
      REQUIRE(rep.ratio.has_value());
      CHECK(*rep.ratio >= 1.0 - 1e-9);
      CHECK(*rep.reference_objective == doctest::Approx(residual_norm(a, b, ls_oracle(a, b))));
      good += *rep.ratio <= 1.25;
    }
    CHECK(good >= 90);
  }
  SUBCASE("determinism") {
    Rng g(14);
    const Matrix a = gaussian_matrix(300, 4, g);
    const Vector b = gaussian_vector(300, g);
    Rng r1(99), r2(99);
    const SolveReport x = algorithm1_ls(a, b, 0.3, r1, ScoreMode::sketched);
    const SolveReport y = algorithm1_ls(a, b, 0.3, r2, ScoreMode::sketched);
    CHECK(x.solution == y.solution);
    CHECK(x.q == y.q);
  }
  SUBCASE("errors") {
    Rng rng(15);
    CHECK_THROWS_AS(algorithm1_ls(Matrix::Zero(4, 2), Vector::Ones(4), 0.5, rng), DegenerateError);
    CHECK_THROWS_AS(algorithm1_ls(Matrix::Identity(2, 2), Vector::Ones(2), 0.0, rng), ParameterError);
    CHECK_THROWS_AS(algorithm1_ls(Matrix::Identity(2, 2), Vector::Ones(3), 0.5, rng), InputError);
    CHECK_THROWS_AS(algorithm1_ls(Matrix::Identity(2, 2), Vector::Ones(2), 0.5, rng, ScoreMode::quantum_sim),
                    ParameterError);
  }
}

TEST_CASE("algorithm 3") {
  SUBCASE("identity") {
    Rng rng(16);
    const SolveReport rep = algorithm3_ridge(Matrix::Identity(5, 5), vec({1, 2, 3, 4, 5}), 1.0, 0.5, rng);
    REQUIRE(rep.ratio.has_value());
    CHECK(*rep.ratio <= 1.5);
  }
  SUBCASE("wide rank-8 instances") {
    int good = 0;
    for (int seed = 0; seed < 100; ++seed) {
      Rng rng = Rng::stream(17, static_cast<std::uint64_t>(seed));
      const Matrix a = gaussian_matrix(30, 8, rng) * gaussian_matrix(8, 500, rng);
      const Vector b = gaussian_vector(30, rng);
      const double lambda = 0.5 * spectral_norm(a);
      const SolveReport rep = algorithm3_ridge(a, b, lambda, 0.25, rng);
      const double z_opt = objective_ridge(a, b, lambda, ridge_oracle(a, b, lambda));
      CHECK(*rep.reference_objective == doctest::Approx(z_opt).epsilon(1e-8));
      CHECK(*rep.ratio >= 1.0 - 1e-9);
      good += *rep.ratio <= 1.25;
    }
    CHECK(good >= 90);
  }
  SUBCASE("b orthogonal to the column space") {
    Rng rng(18);
    Matrix a = Matrix::Zero(6, 3);
    a.topRows(3) = gaussian_matrix(3, 3, rng);
    Vector b = Vector::Zero(6);
    b.tail(3) = gaussian_vector(3, rng);
    const SolveReport rep = algorithm3_ridge(a, b, 100.0 * spectral_norm(a), 0.25, rng);
    CHECK(rep.solution.norm() < 1e-12);
    CHECK(rep.objective == doctest::Approx(b.squaredNorm()));
  }
  SUBCASE("zero matrix") {
    Rng rng(19);
    const SolveReport rep = algorithm3_ridge(Matrix::Zero(4, 3), Vector::Ones(4), 1.0, 0.25, rng);
    CHECK(rep.solution.isZero());
    CHECK_FALSE(rep.warnings.empty());
  }
}

TEST_CASE("algorithm 4, classical mode") {
  SUBCASE("identity") {
    Rng rng(20);
    const SolveReport rep = algorithm4_classical(Matrix::Identity(4, 4), vec({1, 2, 3, 4}), 1.0, 0.25, rng);
    CHECK(*rep.ratio <= 1.25);
  }
  SUBCASE("large lambda warns but returns") {
    Rng rng(21);
    const Matrix a = gaussian_matrix(40, 4, rng);
    const SolveReport rep = algorithm4_classical(a, gaussian_vector(40, rng), 10.0 * spectral_norm(a), 0.25, rng);
    CHECK_FALSE(rep.warnings.empty());
    CHECK(rep.ratio.has_value());
    CHECK(std::isfinite(rep.objective));
  }
  SUBCASE("sketched scores") {
    Rng rng(22);
    InstanceSpec spec;
    spec.n = 600;
    spec.d = 12;
    spec.r = 5;
    const Instance inst = generate_instance(spec, rng);
    const double lambda = 0.3 * spectral_norm(inst.a);
    const SolveReport rep = algorithm4_classical(inst.a, *inst.b, lambda, 0.25, rng, ScoreMode::sketched);
    CHECK(*rep.ratio <= 1.25);
    CHECK(rep.score_mode == ScoreMode::sketched);
  }
}
