#pragma once

// Split model of torus-constructible complexes on a toric variety and
// Deligne's construction of intersection complexes with rank-one twisted
// coefficients.
//
// A complex is recorded per orbit as entries (cone, degree window, character
// multiset, per-degree rank bounds). Pushforward from the open torus to a
// single orbit is computed exactly: the stalk at O_tau of Rj_* L_chi is
// Lambda^q(Q^{dim tau}) ⊗ L_{chi-bar} when chi is trivial on N_tau and zero
// otherwise. Pushforwards of complexes living on several orbits are
// over-approximated by summing the one-step contributions of every entry;
// such entries carry exact = false. The character bookkeeping is exact in
// both cases, which is all a vanishing certificate needs.

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toric_ic/charsys.hpp"
#include "toric_ic/fan.hpp"

namespace toric_ic {

inline constexpr int kUnboundedDegree = INT_MAX;

/// Integer function of stratum codimension, defined on 1..n.
class Perversity {
 public:
  Perversity() = default;
  explicit Perversity(std::map<int, int> values);

  // Presets with the codimension-one value pinned to 0.
  static Perversity zero(int n);
  static Perversity middle(int n);  // floor((c - 2) / 2)
  static Perversity top(int n);     // c - 2
  // "middle" | "zero" | "top" | "p(1)=0,p(2)=0,...". Throws ParseError.
  static Perversity parse(std::string_view text, int n);

  // Throws PerversityUndefined for a codimension without a value.
  int operator()(int codim) const;
  const std::map<int, int>& values() const noexcept { return values_; }
  bool defined_on(int n) const;
  // p(1) = 0, p(2) = 0, and p(c) <= p(c+1) <= p(c) + 1.
  bool is_strict_gm(int n) const;

  // "p(1)=0,p(2)=0"
  std::string to_string() const;

  friend bool operator==(const Perversity&, const Perversity&) = default;

 private:
  std::map<int, int> values_;
};

/// q(c) = c - 2 - p(c) for c >= 2 and q(1) = 0. Throws PerversityUndefined
/// unless p is strict-GM on 1..n.
Perversity dual_perversity(const Perversity& p, int n);

struct ComplexEntry {
  ConeId cone = -1;
  int degree_low = 0;
  int degree_high = 0;  // kUnboundedDegree before any truncation
  LocalSystemClass factors;
  std::map<int, long long> rank_bounds;
  bool exact = false;

  // The single distinct character carried by a canonical entry.
  const Character& character() const;

  friend bool operator==(const ComplexEntry& a, const ComplexEntry& b) {
    return a.cone == b.cone && a.degree_low == b.degree_low && a.degree_high == b.degree_high &&
           a.factors == b.factors && a.rank_bounds == b.rank_bounds && a.exact == b.exact;
  }
};

struct FanComplex {
  const Fan* fan = nullptr;
  std::vector<ComplexEntry> entries;

  std::vector<ConeId> support() const;
  std::vector<const ComplexEntry*> entries_on(ConeId cone) const;

  friend bool operator==(const FanComplex& a, const FanComplex& b) { return a.entries == b.entries; }
};

/// Sorts entries and merges those on the same cone with the same character
/// and overlapping windows (window union, rank-bound addition).
void canonicalize(FanComplex& F);

/// L_chi[n] on the open torus. Throws DimensionMismatch.
FanComplex initial_complex(const Fan& f, const Character& chi);

/// F[m]: every window moves by -m.
FanComplex shift(const FanComplex& F, int m);

/// tau_{<= cutoff}; std::nullopt means +infinity.
FanComplex truncate(const FanComplex& F, std::optional<int> cutoff);

/// Image of N_tau in N / N_sigma, in sigma's quotient coordinates.
Sublattice relative_sublattice(const Fan& f, ConeId sigma, ConeId tau);

/// Pushes F across the orbits of the dim-k cones. Throws SupportTooDeep if F
/// already has entries on cones of dimension >= k.
FanComplex pushforward_step(const FanComplex& F, int k);

/// tau_{<= p(n)-n} Rj_* ... tau_{<= p(1)-n} Rj_* L_chi[n]. Throws
/// DimensionMismatch and PerversityUndefined.
FanComplex deligne_ic(const Fan& f, const Character& chi, const Perversity& p);

enum class LogStatus { Nontrivial, TrivialWitness, Empty };
std::string_view to_string(LogStatus s);

/// One line of a certificate: why the E_1 contribution of one entry on one
/// orbit vanishes, or the trivial character that blocks the argument.
struct LogRecord {
  ConeId cone = -1;
  LogStatus status = LogStatus::Empty;
  std::optional<Character> character;
  int degree_low = 0;
  int degree_high = 0;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

struct CertificateRun {
  bool twisted = true;
  std::vector<LogRecord> log;

  friend bool operator==(const CertificateRun&, const CertificateRun&) = default;
};

/// Scans every cone of F's fan; twisted iff no entry carries a trivial
/// character.
CertificateRun twistedness_certificate(const FanComplex& F);

enum class Verdict { Vanishes, Inconclusive };
std::string_view to_string(Verdict v);

struct VanishingCertificate {
  Verdict verdict = Verdict::Inconclusive;
  Character character;
  Perversity perversity;
  Perversity dual_perversity;
  CertificateRun primal;
  CertificateRun dual;

  friend bool operator==(const VanishingCertificate&, const VanishingCertificate&) = default;
};

/// Runs the certificate on IC_p(chi) and on IC_q(dual chi). q defaults to
/// dual_perversity(p) (PerversityUndefined if p is not strict-GM).
/// Vanishes is emitted only when both runs are twisted.
VanishingCertificate vanishing_verdict(const Fan& f, const Character& chi, const Perversity& p,
                                       const std::optional<Perversity>& q = std::nullopt);

/// Re-checks a certificate against the fan: statuses agree with the logged
/// characters, every cone is covered in both runs, the verdict follows from
/// the logs, and recomputation reproduces the logs.
bool replay_certificate(const Fan& f, const VanishingCertificate& cert);

}  // namespace toric_ic
