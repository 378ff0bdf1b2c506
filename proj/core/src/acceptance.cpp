#include "toric_ic/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "toric_ic/check.hpp"
#include "toric_ic/error.hpp"
#include "toric_ic/fan_io.hpp"

namespace toric_ic {

namespace {

constexpr double kTorusCohomologyLimitSeconds = 30.0;
constexpr double kTwistedVanishingLimitSeconds = 120.0;
constexpr double kTrivialControlLimitSeconds = 10.0;
constexpr double kStalkLimitSeconds = 60.0;

constexpr unsigned kMaxOrder = 12;

using Clock = std::chrono::steady_clock;

// Runs body, which returns an empty string on success or a failure
// description, and applies the time limit (0 = none).
CriterionResult run_criterion(int id, std::string title, double limit_seconds, const std::function<std::string()>& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  const auto start = Clock::now();
  std::string failure;
  try {
    failure = body();
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (failure.empty() && limit_seconds > 0 && r.seconds > limit_seconds) {
    std::ostringstream os;
    os << "took " << r.seconds << " s, limit " << limit_seconds << " s";
    failure = os.str();
  }
  r.passed = failure.empty();
  if (!r.passed) r.detail = failure;
  return r;
}

std::vector<Fan> corpus() {
  std::vector<Fan> fans;
  for (const std::string& name : corpus_fan_names()) fans.push_back(builtin_fan(name));
  return fans;
}

std::uint64_t criterion_seed(const AcceptanceOptions& o, int id) { return o.seed * 1000003ULL + static_cast<std::uint64_t>(id); }

}  // namespace

CriterionResult criterion_torus_cohomology(const AcceptanceOptions& o) {
  std::string detail;
  auto r = run_criterion(1, "torus cohomology: closed form equals Koszul oracle", kTorusCohomologyLimitSeconds, [&]() {
    OracleSummary sweep = run_oracle_crosscheck(3, 6, 0, 0);
    OracleSummary sample = run_oracle_crosscheck(5, kMaxOrder, 200, criterion_seed(o, 1));
    std::ostringstream os;
    os << "exhaustive " << sweep.agreements << "/" << sweep.cases << ", random " << sample.agreements << "/"
       << sample.cases;
    detail = os.str();
    for (const OracleSummary* s : {&sweep, &sample}) {
      if (!s->mismatches.empty()) {
        const OracleCase& c = s->mismatches.front();
        return detail + "; first mismatch at rank " + std::to_string(c.rank) + ", chi = (" + c.character.to_string() + ")";
      }
    }
    if (sample.cases != 200 || sweep.cases == 0) return detail + "; wrong case count";
    return std::string();
  });
  if (r.passed) r.detail = detail;
  return r;
}

CriterionResult criterion_twisted_vanishing(const AcceptanceOptions& o) {
  constexpr std::size_t kCharacters = 50;
  std::string detail;
  auto r = run_criterion(2, "twisted coefficients: every corpus verdict is Vanishes", kTwistedVanishingLimitSeconds, [&]() {
    const std::vector<Fan> fans = corpus();
    const std::vector<std::string> names = corpus_fan_names();
    struct Task {
      std::size_t fan;
      Character chi;
      Perversity p;
    };
    std::vector<Task> tasks;
    Rng rng(criterion_seed(o, 2));
    for (std::size_t i = 0; i < fans.size(); ++i) {
      const int n = static_cast<int>(fans[i].ambient_rank());
      for (std::size_t c = 0; c < kCharacters; ++c) {
        Character chi = random_twisted_character(rng, fans[i].ambient_rank(), kMaxOrder);
        for (const Perversity& p : {Perversity::middle(n), Perversity::zero(n), Perversity::top(n), random_strict_gm(rng, n)}) {
          tasks.push_back({i, chi, p});
        }
      }
    }
    std::vector<std::string> failures(tasks.size());
    parallel_for(tasks.size(), o.jobs, [&](std::size_t t) {
      const Task& task = tasks[t];
      const Fan& f = fans[task.fan];
      VanishingCertificate cert = vanishing_verdict(f, task.chi, task.p);
      std::string where = names[task.fan] + ", chi = (" + task.chi.to_string() + "), " + task.p.to_string();
      if (cert.verdict != Verdict::Vanishes) failures[t] = "Inconclusive on " + where;
      else if (!replay_certificate(f, cert)) failures[t] = "certificate does not replay on " + where;
    });
    std::size_t bad = 0;
    std::string first;
    for (const std::string& s : failures) {
      if (s.empty()) continue;
      if (bad++ == 0) first = s;
    }
    detail = std::to_string(tasks.size() - bad) + "/" + std::to_string(tasks.size()) + " Vanishes with replayed certificate";
    return bad == 0 ? std::string() : detail + "; first failure: " + first;
  });
  if (r.passed) r.detail = detail;
  return r;
}

CriterionResult criterion_trivial_control(const AcceptanceOptions&) {
  std::string detail;
  auto r = run_criterion(3, "trivial coefficients: Inconclusive with a witness off the open orbit", kTrivialControlLimitSeconds,
                         [&]() {
                           const std::vector<Fan> fans = corpus();
                           const std::vector<std::string> names = corpus_fan_names();
                           std::size_t runs = 0;
                           for (std::size_t i = 0; i < fans.size(); ++i) {
                             const Fan& f = fans[i];
                             const int n = static_cast<int>(f.ambient_rank());
                             const Character chi = Character::trivial(f.ambient_rank());
                             for (const Perversity& p : {Perversity::middle(n), Perversity::zero(n), Perversity::top(n)}) {
                               ++runs;
                               VanishingCertificate cert = vanishing_verdict(f, chi, p);
                               if (cert.verdict != Verdict::Inconclusive) return "false Vanishes on " + names[i];
                               bool witness = false;
                               for (const LogRecord& l : cert.primal.log) {
                                 if (l.status == LogStatus::TrivialWitness && f.cone(l.cone).dim >= 1) witness = true;
                               }
                               if (!witness) return "no witness on a cone of dim >= 1 for " + names[i] + ", " + p.to_string();
                               if (!replay_certificate(f, cert)) return "certificate does not replay on " + names[i];
                             }
                           }
                           detail = std::to_string(runs) + "/" + std::to_string(runs) + " Inconclusive with witness";
                           return std::string();
                         });
  if (r.passed) r.detail = detail;
  return r;
}

CriterionResult criterion_stalk_exactness(const AcceptanceOptions& o) {
  constexpr std::size_t kCharacters = 20;
  std::string detail;
  auto r = run_criterion(4, "one-step stalks equal the Koszul oracle", kStalkLimitSeconds, [&]() {
    const std::vector<Fan> fans = corpus();
    const std::vector<std::string> names = corpus_fan_names();
    Rng rng(criterion_seed(o, 4));
    std::size_t checked = 0, nonzero = 0;
    for (std::size_t i = 0; i < fans.size(); ++i) {
      const Fan& f = fans[i];
      for (const Cone& tau : f.cones()) {
        for (std::size_t c = 0; c < kCharacters; ++c) {
          // Half of the sample is trivial on N_tau so the nonzero branch is exercised.
          Character chi = c % 2 == 0 ? random_character(rng, f.ambient_rank(), kMaxOrder)
                                     : random_character_trivial_on(rng, f, tau.id, kMaxOrder);
          StalkComparison s = stalk_at(f, chi, tau.id);
          ++checked;
          if (!s.engine.is_zero()) ++nonzero;
          if (!s.agrees()) {
            return names[i] + ", " + describe(tau) + ", chi = (" + chi.to_string() + "): engine and oracle disagree";
          }
        }
      }
    }
    detail = std::to_string(checked) + " stalks agree (" + std::to_string(nonzero) + " nonzero)";
    return std::string();
  });
  if (r.passed) r.detail = detail;
  return r;
}

namespace {

// A complex from a partial Deligne run with random cutoffs.
FanComplex random_complex(Rng& rng, const Fan& f) {
  const int n = static_cast<int>(f.ambient_rank());
  FanComplex F = initial_complex(f, random_character(rng, f.ambient_rank(), kMaxOrder));
  const int steps = static_cast<int>(draw(rng, static_cast<std::uint64_t>(n + 1)));
  for (int k = 1; k <= steps; ++k) {
    F = pushforward_step(F, k);
    if (draw(rng, 4) != 0) F = truncate(F, -n + static_cast<int>(draw(rng, static_cast<std::uint64_t>(n + 1))));
  }
  return F;
}

std::map<ConeId, std::set<Character>> characters_by_cone(const FanComplex& F) {
  std::map<ConeId, std::set<Character>> out;
  for (const ComplexEntry& e : F.entries)
    for (const auto& [chi, m] : e.factors.factors) out[e.cone].insert(chi);
  return out;
}

std::string check_shift(Rng& rng, const Fan& f) {
  FanComplex F = random_complex(rng, f);
  const int m = static_cast<int>(draw(rng, 13)) - 6;
  FanComplex S = shift(F, m);
  if (S.entries.size() != F.entries.size()) return "shift changed the entry count";
  for (std::size_t i = 0; i < F.entries.size(); ++i) {
    const ComplexEntry& a = F.entries[i];
    const ComplexEntry& b = S.entries[i];
    if (a.cone != b.cone || !(a.factors == b.factors)) return "shift changed the characters";
    if (is_twisted(a.factors) != is_twisted(b.factors)) return "shift changed twistedness";
    if (b.degree_low != a.degree_low - m) return "shift moved the window incorrectly";
  }
  if (!(shift(S, -m) == F)) return "shift by m then -m is not the identity";
  if (twistedness_certificate(F).twisted != twistedness_certificate(S).twisted) return "shift changed the certificate";
  return {};
}

std::string check_truncate(Rng& rng, const Fan& f) {
  FanComplex F = random_complex(rng, f);
  const int n = static_cast<int>(f.ambient_rank());
  const int cutoff = -n - 2 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(n + 5)));
  FanComplex T = truncate(F, cutoff);
  auto before = characters_by_cone(F);
  auto after = characters_by_cone(T);
  for (const auto& [cone, chars] : after) {
    for (const Character& chi : chars)
      if (!before[cone].count(chi)) return "truncate introduced a character";
  }
  for (const ComplexEntry& e : T.entries) {
    if (e.degree_high > cutoff) return "entry above the cutoff survived";
    for (const auto& [d, r] : e.rank_bounds)
      if (d > cutoff || d < e.degree_low) return "rank bound outside the window";
  }
  for (const ComplexEntry& e : F.entries) {
    bool has_low_rank = false;
    for (const auto& [d, r] : e.rank_bounds)
      if (d <= cutoff && r > 0) has_low_rank = true;
    bool kept = false;
    for (const ComplexEntry& t : T.entries)
      if (t.cone == e.cone && t.degree_low == e.degree_low && t.factors.factors.begin()->first == e.character()) kept = true;
    if (has_low_rank && !kept) return "entry with degrees below the cutoff was dropped";
    if (kept && e.degree_low > cutoff) return "entry kept with degree_low > cutoff";
  }
  if (!(truncate(T, cutoff) == T)) return "truncate is not idempotent";
  if (twistedness_certificate(F).twisted && !twistedness_certificate(T).twisted) return "truncate broke twistedness";
  return {};
}

std::string check_two_out_of_three(Rng& rng) {
  const std::size_t rank = 1 + draw(rng, 3);
  auto random_class = [&]() {
    LocalSystemClass c;
    const std::size_t factors = draw(rng, 4);
    for (std::size_t i = 0; i < factors; ++i) {
      // Roughly one factor in four is trivial.
      Character chi = draw(rng, 4) == 0 ? Character::trivial(rank) : random_character(rng, rank, 6);
      c.add(chi, 1 + static_cast<long long>(draw(rng, 3)));
    }
    return c;
  };
  // A -> B -> C, B semisimplifies to A + C.
  LocalSystemClass a = random_class();
  LocalSystemClass c = random_class();
  LocalSystemClass b = a;
  b += c;
  if (b.total_rank() != a.total_rank() + c.total_rank()) return "ranks are not additive";
  if (!b.contains(a) || !b.contains(c)) return "middle term does not contain the outer terms";
  const bool ta = is_twisted(a), tb = is_twisted(b), tc = is_twisted(c);
  if (ta && tc && !tb) return "A, C twisted but B not";
  if (ta && tb && !tc) return "A, B twisted but C not";
  if (tb && tc && !ta) return "B, C twisted but A not";
  return {};
}

}  // namespace

CriterionResult criterion_shift_truncate_properties(const AcceptanceOptions& o) {
  constexpr int kInstances = 1000;
  std::string detail;
  auto r = run_criterion(5, "shift invariance, truncation soundness, two-out-of-three", 0.0, [&]() {
    const std::vector<Fan> fans = corpus();
    Rng rng(criterion_seed(o, 5));
    for (int i = 0; i < kInstances; ++i) {
      const Fan& f = fans[draw(rng, fans.size())];
      if (auto e = check_shift(rng, f); !e.empty()) return "shift case " + std::to_string(i) + ": " + e;
    }
    for (int i = 0; i < kInstances; ++i) {
      const Fan& f = fans[draw(rng, fans.size())];
      if (auto e = check_truncate(rng, f); !e.empty()) return "truncation case " + std::to_string(i) + ": " + e;
    }
    for (int i = 0; i < kInstances; ++i) {
      if (auto e = check_two_out_of_three(rng); !e.empty()) return "two-out-of-three case " + std::to_string(i) + ": " + e;
    }
    detail = "3 x " + std::to_string(kInstances) + " instances, 0 failures";
    return std::string();
  });
  if (r.passed) r.detail = detail;
  return r;
}

CriterionResult criterion_duality(const AcceptanceOptions& o) {
  constexpr int kTriples = 100;
  std::string detail;
  auto r = run_criterion(6, "duality involution and verdict invariance", 0.0, [&]() {
    const std::vector<Fan> fans = corpus();
    const std::vector<std::string> names = corpus_fan_names();
    Rng rng(criterion_seed(o, 6));
    int vanishing = 0;
    for (int i = 0; i < kTriples; ++i) {
      const std::size_t fi = draw(rng, fans.size());
      const Fan& f = fans[fi];
      const int n = static_cast<int>(f.ambient_rank());
      // About one triple in five uses the trivial character.
      Character chi = draw(rng, 5) == 0 ? Character::trivial(f.ambient_rank())
                                        : random_character(rng, f.ambient_rank(), kMaxOrder);
      Perversity p = random_strict_gm(rng, n);
      Perversity q = dual_perversity(p, n);
      const std::string where = names[fi] + ", chi = (" + chi.to_string() + "), " + p.to_string();
      if (!(dual_perversity(q, n) == p)) return "dual perversity is not an involution on " + where;
      if (!(dual(dual(chi)) == chi)) return "dual character is not an involution on " + where;
      VanishingCertificate a = vanishing_verdict(f, chi, p);
      VanishingCertificate b = vanishing_verdict(f, dual(chi), q);
      if (a.verdict != b.verdict) return "verdict changed under the swap on " + where;
      if (!(a.primal == b.dual) || !(a.dual == b.primal)) return "certificate runs do not swap on " + where;
      if (a.verdict == Verdict::Vanishes) ++vanishing;
    }
    detail = std::to_string(kTriples) + " triples (" + std::to_string(vanishing) + " Vanishes), 0 failures";
    return std::string();
  });
  if (r.passed) r.detail = detail;
  return r;
}

CriterionResult criterion_smooth_sanity(const AcceptanceOptions&) {
  std::string detail;
  auto r = run_criterion(7, "affine plane, trivial coefficients, middle perversity", 0.0, [&]() {
    const Fan f = builtin_fan("affine:2");
    FanComplex F = deligne_ic(f, Character::trivial(2), Perversity::middle(2));
    int rays = 0;
    for (const Cone& c : f.cones()) {
      auto here = F.entries_on(c.id);
      if (c.dim == 1) {
        ++rays;
        if (here.size() != 1) return describe(c) + " has " + std::to_string(here.size()) + " entries";
        const ComplexEntry& e = *here.front();
        if (!e.exact) return describe(c) + " entry is not exact";
        if (e.degree_low != -2 || e.degree_high != -2) return describe(c) + " window is not [-2,-2]";
        if (e.rank_bounds != std::map<int, long long>{{-2, 1}}) return describe(c) + " ranks are not {-2: 1}";
        if (!is_trivial(e.character())) return describe(c) + " character is not trivial";
      } else if (c.dim == 2) {
        if (here.empty()) return std::string("no entry at the origin");
        bool contains = false;
        for (const ComplexEntry* e : here) {
          if (e->exact) return std::string("origin entry is flagged exact");
          if (e->degree_low <= -2 && -2 <= e->degree_high) contains = true;
        }
        if (!contains) return std::string("no origin window contains -2");
      }
    }
    if (rays != 2) return std::string("expected two rays");
    detail = "rays: rank 1 at -2, trivial, exact; origin: non-exact, window contains -2";
    return std::string();
  });
  if (r.passed) r.detail = detail;
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o) {
  return {criterion_torus_cohomology(o),      criterion_twisted_vanishing(o), criterion_trivial_control(o),
          criterion_stalk_exactness(o),       criterion_shift_truncate_properties(o), criterion_duality(o),
          criterion_smooth_sanity(o)};
}

std::string format_result(const CriterionResult& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.2f s", r.seconds);
  std::string s = std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + "  " + r.title + "  (" + time + ")";
  if (!r.detail.empty()) s += "  " + r.detail;
  return s;
}

}  // namespace toric_ic
