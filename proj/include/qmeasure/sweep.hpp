#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmeasure/quantities.hpp"
#include "qmeasure/relations.hpp"

namespace qmeasure {

struct SweepRecord {
  double phi = 0.0;
  QuantitySet quantities;
  SuiteResult suite;
};

struct SweepResult {
  std::string scenario;
  std::string parameter_name;
  std::vector<SweepRecord> records;  // ordered by parameter value
  std::uint64_t seed = 0;
  Tolerances tol;
};

// Projective readout along the axis at angle phi in the xy-plane, evaluated
// against A = sigma_x, B = sigma_y on the +z eigenstate, over a uniform grid
// of `steps` angles.  The full relation suite runs at every grid point; the
// two-pointer relations are recorded as skipped.  The seed is carried for
// bookkeeping only; the sweep itself is deterministic.
SweepResult run_spin_sweep(double phi_start, double phi_end, int steps,
                           std::uint64_t seed = 0,
                           const Tolerances& tol = Tolerances());

// One row per grid point.  Header and column order are a stable contract:
// phi,eps_A,eta_B,sigma_A,sigma_B,bound_half,bound_full,naive_lhs,ozawa_lhs,
// uvh_lhs,modak_lhs,sigma_Mout,sigma_Bout,r4_status,r5_status,r6_status,
// r7_status
std::string sweep_csv(const SweepResult& result);

nlohmann::json sweep_to_json(const SweepResult& result);

}  // namespace qmeasure
