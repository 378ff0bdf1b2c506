#include <doctest.h>

#include <set>

#include "generators.hpp"
#include "toric_ic/check.hpp"
#include "toric_ic/error.hpp"
#include "toric_ic/fan_io.hpp"
#include "toric_ic/icengine.hpp"

using namespace toric_ic;

namespace {

Character chi(std::string_view s) { return Character::parse(s); }

ConeId cone_of(const Fan& f, std::initializer_list<std::initializer_list<long long>> gens) {
  std::vector<IntVector> g;
  for (auto v : gens) g.push_back(make_vector(v));
  auto id = f.find(canonical_rays(f.ambient_rank(), g));
  REQUIRE(id);
  return *id;
}

// Deligne recursion without truncation: the largest propagated complex.
FanComplex untruncated(const Fan& f, const Character& c) {
  FanComplex F = initial_complex(f, c);
  for (int k = 1; k <= static_cast<int>(f.ambient_rank()); ++k) F = pushforward_step(F, k);
  return F;
}

std::set<Character> characters_on(const FanComplex& F, ConeId cone) {
  std::set<Character> out;
  for (const ComplexEntry* e : F.entries_on(cone))
    for (const auto& [c, m] : e->factors.factors) out.insert(c);
  return out;
}

}  // namespace

TEST_CASE("perversity presets and parsing") {
  CHECK(Perversity::middle(4).values() == std::map<int, int>{{1, 0}, {2, 0}, {3, 0}, {4, 1}});
  CHECK(Perversity::top(3).values() == std::map<int, int>{{1, 0}, {2, 0}, {3, 1}});
  CHECK(Perversity::zero(2).values() == std::map<int, int>{{1, 0}, {2, 0}});
  CHECK(Perversity::parse("p(2)=0,p(3)=1", 3).values() == std::map<int, int>{{1, 0}, {2, 0}, {3, 1}});
  CHECK(Perversity::parse(" middle ", 2) == Perversity::middle(2));
  CHECK(Perversity::parse("p(1)=0,p(2)=0", 2).to_string() == "p(1)=0,p(2)=0");
  CHECK_THROWS_AS(Perversity::parse("p(2)=x", 2), Error);
  CHECK_THROWS_AS(Perversity::parse("p(2)=0,p(2)=1", 2), Error);
  CHECK_THROWS_AS(Perversity::parse("bottom", 2), Error);
  try {
    Perversity::zero(2)(3);
    FAIL("expected PerversityUndefined");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PerversityUndefined);
  }
}

TEST_CASE("dual perversity") {
  CHECK(dual_perversity(Perversity::zero(4), 4) == Perversity::top(4));
  CHECK(dual_perversity(Perversity::top(4), 4) == Perversity::zero(4));
  CHECK(dual_perversity(Perversity::middle(5), 5).values() == std::map<int, int>{{1, 0}, {2, 0}, {3, 1}, {4, 1}, {5, 2}});
  Perversity bad(std::map<int, int>{{1, 0}, {2, 1}});
  CHECK_FALSE(bad.is_strict_gm(2));
  CHECK_THROWS_AS(dual_perversity(bad, 2), Error);
  gen::Gen g(1);
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const int n = static_cast<int>(g.range(1, 8));
    Perversity p = random_strict_gm(rng, n);
    CHECK(p.is_strict_gm(n));
    Perversity q = dual_perversity(p, n);
    CHECK(q.is_strict_gm(n));
    CHECK(dual_perversity(q, n) == p);
    for (int c = 2; c <= n; ++c) CHECK(p(c) + q(c) == c - 2);
  }
}

TEST_CASE("initial complex") {
  Fan plane = builtin_fan("affine:2");
  FanComplex F = initial_complex(plane, chi("1/2,1/3"));
  REQUIRE(F.entries.size() == 1);
  const ComplexEntry& e = F.entries.front();
  CHECK(e.cone == *plane.zero_cone());
  CHECK(e.degree_low == -2);
  CHECK(e.degree_high == -2);
  CHECK(e.character() == chi("1/2,1/3"));
  CHECK(e.rank_bounds == std::map<int, long long>{{-2, 1}});
  CHECK(e.exact);

  CHECK(initial_complex(builtin_fan("projective_space:1"), chi("1/2")).entries.front().degree_low == -1);
  CHECK(is_trivial(initial_complex(plane, chi("0,0")).entries.front().character()));
  CHECK_THROWS_AS(initial_complex(plane, chi("1/2")), Error);
}

TEST_CASE("shift and truncate") {
  Fan plane = builtin_fan("affine:2");
  FanComplex F = initial_complex(plane, chi("1/2,1/3"));
  FanComplex S = shift(F, 1);
  CHECK(S.entries.front().degree_low == -3);
  CHECK(S.entries.front().degree_high == -3);
  CHECK(shift(F, 0) == F);
  CHECK(shift(S, -1) == F);

  Fan line = builtin_fan("affine:1");
  FanComplex L = pushforward_step(initial_complex(line, chi("0")), 1);
  // Make an exact entry with ranks {-2:1, -1:2, 0:1} and cut at -2.
  FanComplex E = shift(pushforward_step(initial_complex(plane, chi("0,0")), 2), 0);
  ConeId top = cone_of(plane, {{1, 0}, {0, 1}});
  auto on_top = E.entries_on(top);
  REQUIRE(on_top.size() == 1);
  CHECK(on_top.front()->rank_bounds == std::map<int, long long>{{-2, 1}, {-1, 2}, {0, 1}});
  CHECK(on_top.front()->exact);
  FanComplex T = truncate(E, -2);
  REQUIRE(T.entries_on(top).size() == 1);
  CHECK(T.entries_on(top).front()->rank_bounds == std::map<int, long long>{{-2, 1}});
  CHECK(T.entries_on(top).front()->degree_high == -2);

  // A window starting above the cutoff is removed.
  FanComplex W = shift(L, -1);  // windows start at 0
  for (const auto& e : W.entries) CHECK(e.degree_low >= 0);
  CHECK(truncate(W, -2).entries.empty());
  CHECK(truncate(E, std::nullopt) == E);
}

TEST_CASE("one-step pushforward on the affine plane") {
  Fan plane = builtin_fan("affine:2");
  const ConeId x = cone_of(plane, {{1, 0}});
  const ConeId y = cone_of(plane, {{0, 1}});
  const ConeId top = cone_of(plane, {{1, 0}, {0, 1}});

  FanComplex F = pushforward_step(initial_complex(plane, chi("0,1/3")), 1);
  auto on_x = F.entries_on(x);
  REQUIRE(on_x.size() == 1);
  CHECK(on_x.front()->character() == chi("1/3"));
  CHECK(on_x.front()->degree_low == -2);
  CHECK(on_x.front()->degree_high == -1);
  CHECK(on_x.front()->rank_bounds == std::map<int, long long>{{-2, 1}, {-1, 1}});
  CHECK(on_x.front()->exact);
  CHECK(F.entries_on(y).empty());
  // The ray stalk matches H*(S^1, chi restricted), shifted by n = 2.
  GradedRanks oracle = torus_cohomology_koszul_oracle(1, restrict(chi("0,1/3"), plane.orbit(x).stab_lattice));
  CHECK(oracle == GradedRanks::canonical(0, {1, 1}));

  FanComplex G = pushforward_step(pushforward_step(initial_complex(plane, chi("1/2,1/3")), 1), 2);
  CHECK(G.entries.size() == 1);
  CHECK(G.entries_on(top).empty());
  CHECK(torus_cohomology_koszul_oracle(2, chi("1/2,1/3")).is_zero());

  Fan line = builtin_fan("affine:1");
  FanComplex L = pushforward_step(initial_complex(line, chi("0")), 1);
  const ConeId ray = cone_of(line, {{1}});
  REQUIRE(L.entries_on(ray).size() == 1);
  CHECK(L.entries_on(ray).front()->rank_bounds == std::map<int, long long>{{-1, 1}, {0, 1}});
  CHECK(is_trivial(L.entries_on(ray).front()->character()));
  CHECK(L.entries_on(ray).front()->exact);

  try {
    pushforward_step(pushforward_step(initial_complex(plane, chi("0,0")), 2), 1);
    FAIL("expected SupportTooDeep");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SupportTooDeep);
  }
}

TEST_CASE("Deligne construction on the affine plane") {
  Fan plane = builtin_fan("affine:2");
  const Perversity mid = Perversity::middle(2);
  const ConeId x = cone_of(plane, {{1, 0}});
  const ConeId y = cone_of(plane, {{0, 1}});
  const ConeId top = cone_of(plane, {{1, 0}, {0, 1}});

  FanComplex A = deligne_ic(plane, chi("1/2,1/3"), mid);
  REQUIRE(A.entries.size() == 1);
  CHECK(A.entries.front().cone == *plane.zero_cone());

  FanComplex B = deligne_ic(plane, chi("0,1/3"), mid);
  CHECK(B.entries.size() == 2);
  REQUIRE(B.entries_on(x).size() == 1);
  CHECK(B.entries_on(x).front()->rank_bounds == std::map<int, long long>{{-2, 1}});
  CHECK(B.entries_on(x).front()->character() == chi("1/3"));
  CHECK(B.entries_on(y).empty());
  CHECK(B.entries_on(top).empty());

  FanComplex C = deligne_ic(plane, chi("0,0"), mid);
  for (ConeId r : {x, y}) {
    REQUIRE(C.entries_on(r).size() == 1);
    CHECK(C.entries_on(r).front()->rank_bounds == std::map<int, long long>{{-2, 1}});
    CHECK(is_trivial(C.entries_on(r).front()->character()));
  }
  REQUIRE_FALSE(C.entries_on(top).empty());
  for (const ComplexEntry* e : C.entries_on(top)) CHECK_FALSE(e->exact);
}

TEST_CASE("weighted projective plane P(1,1,2) by hand") {
  Fan f = builtin_fan("weighted_p112");
  const Character c = chi("1/2,0");
  // Maximal cones have generator determinants 1, 1 and 2; every one spans
  // a finite-index sublattice whose saturation is Z^2, so chi restricts to
  // itself there and is nontrivial.
  std::map<ConeId, long long> det;
  for (const Cone& cone : f.cones()) {
    if (cone.dim != 2) continue;
    Int d = determinant(IntMatrix::from_rows(cone.generators, 2));
    det[cone.id] = (d < 0 ? Int(-d) : d).convert_to<long long>();
    CHECK(Sublattice(2, cone.generators).saturation_index() == det[cone.id]);
    CHECK(same_lattice(f.orbit(cone.id).stab_lattice, Sublattice::full(2)));
    CHECK_FALSE(is_trivial(restrict(c, f.orbit(cone.id).stab_lattice)));
  }
  std::multiset<long long> dets;
  for (const auto& [id, d] : det) dets.insert(d);
  CHECK(dets == std::multiset<long long>{1, 1, 2});

  // Rays: chi(1,0) = 1/2, chi(0,1) = 0, chi(-1,-2) = 1/2.
  const ConeId ry = cone_of(f, {{0, 1}});
  CHECK_FALSE(is_trivial(restrict(c, f.orbit(cone_of(f, {{1, 0}})).stab_lattice)));
  CHECK_FALSE(is_trivial(restrict(c, f.orbit(cone_of(f, {{-1, -2}})).stab_lattice)));
  CHECK(is_trivial(restrict(c, f.orbit(ry).stab_lattice)));
  // Descended to Z^2 / <(0,1)>, chi is the value on any lift of the
  // generator, e.g. (1,0): 1/2.
  CHECK(descend(c, f.orbit(ry).quotient) == chi("1/2"));

  FanComplex F = deligne_ic(f, c, Perversity::middle(2));
  CHECK(F.support() == std::vector<ConeId>{*f.zero_cone(), ry});
  CHECK(F.entries_on(ry).front()->character() == chi("1/2"));
  VanishingCertificate cert = vanishing_verdict(f, c, Perversity::middle(2));
  CHECK(cert.verdict == Verdict::Vanishes);
  CHECK(replay_certificate(f, cert));
}

TEST_CASE("certificates on the affine plane") {
  Fan plane = builtin_fan("affine:2");
  VanishingCertificate twisted = vanishing_verdict(plane, chi("1/2,1/3"), Perversity::middle(2));
  CHECK(twisted.verdict == Verdict::Vanishes);
  CHECK(twisted.primal.twisted);
  CHECK(twisted.dual.twisted);
  CHECK(twisted.dual_perversity == Perversity::middle(2));
  CHECK(replay_certificate(plane, twisted));

  VanishingCertificate trivial = vanishing_verdict(plane, chi("0,0"), Perversity::middle(2));
  CHECK(trivial.verdict == Verdict::Inconclusive);
  bool ray_witness = false;
  for (const LogRecord& l : trivial.primal.log)
    if (l.status == LogStatus::TrivialWitness && plane.cone(l.cone).dim == 1) ray_witness = true;
  CHECK(ray_witness);
  CHECK(replay_certificate(plane, trivial));

  CHECK(twistedness_certificate(FanComplex{}).twisted);

  // Tampering is caught.
  VanishingCertificate forged = trivial;
  forged.verdict = Verdict::Vanishes;
  CHECK_FALSE(replay_certificate(plane, forged));
  VanishingCertificate dropped = twisted;
  dropped.primal.log.pop_back();
  CHECK_FALSE(replay_certificate(plane, dropped));
  VanishingCertificate relabeled = trivial;
  for (LogRecord& l : relabeled.primal.log)
    if (l.status == LogStatus::TrivialWitness) l.status = LogStatus::Nontrivial;
  relabeled.primal.twisted = true;
  CHECK_FALSE(replay_certificate(plane, relabeled));

  Perversity non_gm(std::map<int, int>{{1, 0}, {2, 1}});
  CHECK_THROWS_AS(vanishing_verdict(plane, chi("1/2,1/3"), non_gm), Error);
  CHECK(vanishing_verdict(plane, chi("1/2,1/3"), non_gm, Perversity::zero(2)).verdict == Verdict::Vanishes);
}

TEST_CASE("pushforward never turns a nontrivial character trivial") {
  const std::vector<std::string> names = corpus_fan_names();
  std::vector<Fan> fans;
  for (const auto& n : names) fans.push_back(builtin_fan(n));
  gen::Gen g(31);
  for (int i = 0; i < 300; ++i) {
    const Fan& f = fans[static_cast<std::size_t>(g.range(0, static_cast<long long>(fans.size()) - 1))];
    Character c = g.character(f.ambient_rank(), 12);
    if (is_trivial(c)) continue;
    FanComplex F = untruncated(f, c);
    for (const ComplexEntry& e : F.entries) CHECK(is_twisted(e.factors));
  }
}

TEST_CASE("exact one-step stalks are contained in the propagated complex") {
  gen::Gen g(32);
  Rng rng(32);
  for (const std::string& name : corpus_fan_names()) {
    Fan f = builtin_fan(name);
    for (int i = 0; i < 15; ++i) {
      for (const Cone& tau : f.cones()) {
        Character c = g.coin() ? g.character(f.ambient_rank(), 12) : random_character_trivial_on(rng, f, tau.id, 12);
        StalkComparison s = stalk_at(f, c, tau.id);
        CAPTURE(name);
        CAPTURE(c.to_string());
        CHECK(s.agrees());
        if (s.engine_character) {
          CHECK(characters_on(untruncated(f, c), tau.id).count(*s.engine_character) == 1);
          // degree_low is a true lower bound: the oracle's lowest degree is 0.
          CHECK(s.engine.offset >= 0);
        }
      }
    }
  }
}

TEST_CASE("truncation removes only entries above the cutoff") {
  Fan f = builtin_fan("cone_over_square");
  gen::Gen g(40);
  for (int i = 0; i < 100; ++i) {
    FanComplex F = untruncated(f, g.character(3, 6));
    const int cutoff = static_cast<int>(g.range(-5, 1));
    FanComplex T = truncate(F, cutoff);
    for (const ComplexEntry& e : F.entries) {
      bool kept = false;
      for (const ComplexEntry& t : T.entries)
        if (t.cone == e.cone && t.character() == e.character() && t.degree_low == e.degree_low) kept = true;
      if (!kept) CHECK(e.degree_low > cutoff);
    }
  }
}
