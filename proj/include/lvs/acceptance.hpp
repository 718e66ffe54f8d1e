#pragma once

#include "lvs/quantum.hpp"
#include "lvs/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lvs {

struct AcceptanceConfig {
  /// "all", "classical" or "quantum".
  std::string suite = "all";
  std::uint64_t seed = 1;
  /// Quantum criteria whose dilation would exceed this size are skipped.
  Index quantum_dim_limit = kMaxUnitaryDim;
  /// 0 uses every hardware thread.
  std::size_t threads = 0;
  /// When non-empty, only these criterion ids run.
  std::vector<std::string> only;
};

struct CriterionDef {
  std::string id;
  std::string suite;
  std::string paper_ref;
  /// Runtime ceiling in seconds, 0 for none.
  double time_limit = 0.0;
  std::function<Criterion(const AcceptanceConfig&)> run;
};

const std::vector<CriterionDef>& acceptance_criteria();

/// Runs one criterion by id, including its runtime ceiling.
Criterion run_criterion(const std::string& id, const AcceptanceConfig& cfg);

RunReport run_acceptance_suite(const AcceptanceConfig& cfg, const std::string& command = "bench acceptance");

}  // namespace lvs
