#pragma once

// The acceptance suite. Each criterion is deterministic given the seed and
// reports its own wall time; time limits are part of the pass condition.

#include <cstdint>
#include <string>
#include <vector>

namespace toric_ic {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

// Closed form vs Koszul oracle: exhaustive rank <= 3, order <= 6, plus 200
// random cases with rank <= 5, order <= 12. Under 30 s.
CriterionResult criterion_torus_cohomology(const AcceptanceOptions& o);
// Every corpus fan, 50 twisted characters, four perversities: all Vanishes
// with replayable certificates. Under 120 s.
CriterionResult criterion_twisted_vanishing(const AcceptanceOptions& o);
// Trivial character: Inconclusive with a witness on a cone of dim >= 1.
CriterionResult criterion_trivial_control(const AcceptanceOptions& o);
// One-step stalks equal the oracle for every cone and 20 characters. Under 60 s.
CriterionResult criterion_stalk_exactness(const AcceptanceOptions& o);
// 1000 cases each: shift invariance, truncation soundness, two-out-of-three.
CriterionResult criterion_shift_truncate_properties(const AcceptanceOptions& o);
// 100 duality triples: involution and verdict invariance.
CriterionResult criterion_duality(const AcceptanceOptions& o);
// affine:2, trivial character, middle perversity.
CriterionResult criterion_smooth_sanity(const AcceptanceOptions& o);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o);

// "[PASS] 1  title  (0.12 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace toric_ic
