#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toric_ic/fan.hpp"
#include "toric_ic/icengine.hpp"
#include "toric_ic/report.hpp"
#include "toric_ic/toruscoh.hpp"

namespace toric_ic {

struct CheckOptions {
  // Used instead of the formed dual perversity when set.
  std::optional<Perversity> dual_perversity;
  // Reject perversities that are not strict-GM.
  bool strict_gm = false;
  bool timing = false;
};

/// Runs the vanishing certificate and assembles the report. Throws
/// DimensionMismatch, PerversityUndefined, and engine errors prefixed with
/// the offending orbit.
RunReport run_check(const Fan& f, const Character& chi, const Perversity& p, const CheckOptions& options = {});

/// 0 for Vanishes, 2 for Inconclusive. Errors map to 1.
int exit_code(Verdict v);

/// One-cone stalk of Rj_* L_chi[n]: engine rule against the Koszul oracle.
struct StalkComparison {
  ConeId cone = -1;
  int dim = 0;
  Character restriction;
  // Degrees of both are shifted so that the open-torus entry sits in degree 0.
  GradedRanks engine;
  GradedRanks oracle;
  std::optional<Character> engine_character;
  std::optional<Character> expected_character;
  bool engine_exact = false;

  bool agrees() const {
    return engine == oracle && engine_character == expected_character && (engine.is_zero() || engine_exact);
  }
};

/// Throws UnknownCone and DimensionMismatch.
StalkComparison stalk_at(const Fan& f, const Character& chi, ConeId tau);

struct OracleCase {
  std::size_t rank = 0;
  Character character;
  GradedRanks closed_form;
  GradedRanks oracle;
};

struct OracleSummary {
  std::size_t cases = 0;
  std::size_t agreements = 0;
  std::vector<OracleCase> mismatches;
  // Every case, kept only when requested.
  std::vector<OracleCase> all;
};

/// Compares the closed form with the Koszul oracle. samples == 0 sweeps
/// every rank 1..max_rank and every character of order <= max_order;
/// otherwise draws `samples` cases from a seeded generator. Throws
/// InvalidArgument on zero bounds.
OracleSummary run_oracle_crosscheck(std::size_t max_rank, unsigned max_order, std::size_t samples, std::uint64_t seed,
                                    bool keep_cases = false);

// --- seeded samplers -------------------------------------------------------

using Rng = std::mt19937_64;

/// Uniform in [0, bound).
std::uint64_t draw(Rng& rng, std::uint64_t bound);

/// Random character with order dividing some m in 1..max_order.
Character random_character(Rng& rng, std::size_t rank, unsigned max_order);
/// As random_character, redrawn until nontrivial. max_order must be >= 2.
Character random_twisted_character(Rng& rng, std::size_t rank, unsigned max_order);
/// Character trivial on N_tau: pullback of a random quotient character.
Character random_character_trivial_on(Rng& rng, const Fan& f, ConeId tau, unsigned max_order);
/// p(1) = p(2) = 0 and random steps of 0 or 1.
Perversity random_strict_gm(Rng& rng, int n);

/// Runs task(i) for i in [0, count) on up to `jobs` threads (0 = hardware
/// concurrency). Results are index-addressed, so output order never depends
/// on scheduling. The first exception is rethrown after all threads join.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task);

}  // namespace toric_ic
