#pragma once

#include "lvs/linalg.hpp"
#include "lvs/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lvs {

enum class InstanceKind { file, random_lowrank, coherent, diag_search, existence, spike };

const char* to_string(InstanceKind kind);
/// Throws ParameterError for an unknown name.
InstanceKind parse_instance_kind(const std::string& name);

struct InstanceSpec {
  InstanceKind kind = InstanceKind::random_lowrank;
  Index n = 100;
  Index d = 10;
  /// Rank for random-lowrank (0 means min(n, d)); Hamming weight for
  /// diag-search when no pattern is given.
  Index r = 0;
  /// sigma_i = decay^i for random-lowrank.
  double decay = 0.9;
  /// Noise added to b = A x0, relative to ||A x0||.
  double noise = 0.1;
  /// 0/1 pattern: f for diag-search, a for existence and spike. Generated at
  /// random with `marked` ones when empty.
  std::vector<int> pattern;
  Index marked = 1;
  std::string path;
  std::string b_path;
};

struct Instance {
  Matrix a;
  std::optional<Vector> b;
  std::vector<int> pattern;
  std::string description;
};

/// Builds the matrix (and right-hand side when the kind defines one).
///   random-lowrank: U diag(decay^i) V^T with Haar-like U, V; b = A x0 + noise.
///   coherent: Gaussian n x d with row 0 scaled until its leverage score >= 0.9.
///   diag-search: diag(f); row scores equal f.
///   existence: [[1, 0], [0, a]] of size (n+1) x 2 with b all ones.
///   spike: A = 1/sqrt(n) * ones(n, 1), b = A + sqrt(n) * a.
Instance generate_instance(const InstanceSpec& spec, Rng& rng);

/// n x k matrix with orthonormal columns from the QR of a Gaussian matrix.
Matrix random_orthonormal(Index n, Index k, Rng& rng);
Matrix gaussian_matrix(Index n, Index d, Rng& rng);
Vector gaussian_vector(Index n, Rng& rng);

}  // namespace lvs
