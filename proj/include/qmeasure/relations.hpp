#pragma once

#include "qmeasure/quantities.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qmeasure {

// The inequality family. r1..r12 are evaluated on measurement-model scenarios;
// r13 is the periodic-interval position-momentum relation (see box.hpp).
enum class RelationId {
  r1_robertson,            // sigma(A) sigma(B)                    >= half-bound
  r2_error_error,          // sigma(Mout-A) sigma(Nout-B)          >= half-bound
  r3_arthurs_kelly,        // sigma(Mout) sigma(Nout)              >= full-bound
  r4_naive_error_disturbance,  // eps(A) eta(B)                    >= half-bound
  r5_ozawa,                // eps eta + sigma(A) eta + eps sigma(B) >= half-bound
  r6_heisenberg_universal,  // (eps + sigma(A)) (eta + sigma(B))   >= full-bound
  r7_arthurs_kelly_modified,   // sigma(Mout) sigma(Bout)          >= full-bound
  r8_sigma_sum,            // s(M-A)s(B-B') + s(M-A)s(B) + s(A)s(B-B') >= half-bound
  r9_sigma_product_sum,    // (s(M-A)+s(A)) (s(B-B')+s(B))         >= full-bound
  r10_difference_robertson,    // s(M-A)s(B-B') >= |<[M-A, B-B']>|/2 (true Robertson)
  r11_error_error_rms,     // eps(A) eps(B)                        >= half-bound
  r12_precise_zero,        // eps(A) eta(B)                        >= 0, saturates when precise
  r13_box_momentum_position,   // dp dx >= (hbar/2)|1 - L|psi(L/2)|^2|
};

enum class Universality { universal, conditional };
enum class RelationStatus { satisfied, saturated, violated };

// A relation never violated by any model/state; conditional relations carry
// extra assumptions (unbiasedness, a second commuting pointer) and may fail.
Universality universality_of(RelationId id);

std::string to_string(RelationId id);
std::string to_string(RelationStatus status);
std::string to_string(Universality u);

struct RelationReport {
  RelationId id;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // lhs - rhs
  RelationStatus status = RelationStatus::satisfied;
  Universality universality = Universality::universal;
};

// Thrown when a relation that can never fail fails anyway: a solver bug or
// corrupted input, not a physical result.
struct UniversalViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |margin| <= rel * max(1, rhs) reads as saturated, margin below the negative
// of that band as violated.
RelationStatus classify(double lhs, double rhs, const Tolerances& tol);

RelationReport make_report(RelationId id, double lhs, double rhs,
                           const Tolerances& tol);

// Plain Robertson bound sigma(X) sigma(Y) >= |<[X,Y]>|/2 on an arbitrary
// state; r1 and r10 are instances of this.
RelationReport robertson_report(const ComplexOperator& x, const ComplexOperator& y,
                                const PureState& s, const Tolerances& tol = {});

// r1..r12 in order.
const std::vector<RelationId>& all_relation_ids();

// Evaluates one relation on a scenario. q must come from quantity_set on the
// same (model, a, b, psi). r2/r3/r11 require pointer "N"; r13 is rejected
// here (it has no measurement-model reading).
RelationReport evaluate(RelationId id, const QuantitySet& q,
                        const MeasurementModel& model, const ComplexOperator& a,
                        const ComplexOperator& b, const PureState& psi,
                        const Tolerances& tol = {});

struct SuiteResult {
  std::vector<RelationReport> reports;
  std::vector<std::pair<RelationId, std::string>> skipped;
};

// Evaluates every requested relation, skipping (with a reason) those whose
// preconditions the model cannot meet. Default: all of r1..r12.
SuiteResult evaluate_all(const MeasurementModel& model, const ComplexOperator& a,
                         const ComplexOperator& b, const PureState& psi,
                         const std::vector<RelationId>& ids = all_relation_ids(),
                         const Tolerances& tol = {});

}  // namespace qmeasure
