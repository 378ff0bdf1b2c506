#include "toric_ic/check.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "toric_ic/error.hpp"

namespace toric_ic {

RunReport run_check(const Fan& f, const Character& chi, const Perversity& p, const CheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int n = static_cast<int>(f.ambient_rank());
  if (chi.ambient_rank() != f.ambient_rank()) {
    throw Error(ErrorKind::DimensionMismatch, "character (" + chi.to_string() + ") has rank " +
                                                  std::to_string(chi.ambient_rank()) + " but the fan lives in Z^" +
                                                  std::to_string(n));
  }
  if (!p.defined_on(n)) {
    throw Error(ErrorKind::PerversityUndefined, "perversity " + p.to_string() + " must be defined on codimensions 1.." +
                                                    std::to_string(n));
  }
  if (options.strict_gm && !p.is_strict_gm(n)) {
    throw Error(ErrorKind::PerversityUndefined, "perversity " + p.to_string() + " is not strict-GM");
  }
  Perversity q = options.dual_perversity ? *options.dual_perversity : dual_perversity(p, n);
  if (!q.defined_on(n)) {
    throw Error(ErrorKind::PerversityUndefined, "dual perversity " + q.to_string() +
                                                    " must be defined on codimensions 1.." + std::to_string(n));
  }

  RunReport r;
  r.ambient_rank = f.ambient_rank();
  r.cones = cone_rows(f);
  r.orbits = orbit_table(f, chi);
  r.primal_entries = entry_rows(deligne_ic(f, chi, p));
  r.dual_entries = entry_rows(deligne_ic(f, dual(chi), q));
  r.certificate = vanishing_verdict(f, chi, p, q);
  if (n >= 1 && p(1) == 0) {
    r.notes.push_back("codimension-one orbits use the convention p(1) = 0 (constant coefficients extend across rays)");
  }
  if (options.timing) {
    r.timing_us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

int exit_code(Verdict v) { return v == Verdict::Vanishes ? 0 : 2; }

StalkComparison stalk_at(const Fan& f, const Character& chi, ConeId tau) {
  if (tau < 0 || static_cast<std::size_t>(tau) >= f.cones().size()) {
    throw Error(ErrorKind::UnknownCone, "no cone with id " + std::to_string(tau));
  }
  const Cone& c = f.cone(tau);
  const OrbitData& o = f.orbit(tau);
  const int n = static_cast<int>(f.ambient_rank());

  StalkComparison s;
  s.cone = tau;
  s.dim = c.dim;
  s.restriction = restrict(chi, o.stab_lattice);
  s.oracle = torus_cohomology_koszul_oracle(static_cast<std::size_t>(c.dim), s.restriction);
  if (is_trivial(s.restriction)) s.expected_character = descend(chi, o.quotient);

  FanComplex F = initial_complex(f, chi);
  if (c.dim > 0) F = pushforward_step(F, c.dim);
  auto here = F.entries_on(tau);
  if (here.size() > 1) {
    throw Error(ErrorKind::InvalidArgument, "one-step stalk at " + describe(c) + " has several entries");
  }
  if (!here.empty()) {
    const ComplexEntry& e = *here.front();
    std::vector<long long> ranks;
    int low = e.rank_bounds.empty() ? 0 : e.rank_bounds.begin()->first;
    for (const auto& [d, r] : e.rank_bounds) {
      ranks.resize(static_cast<std::size_t>(d - low + 1), 0);
      ranks[static_cast<std::size_t>(d - low)] = r;
    }
    s.engine = GradedRanks::canonical(low + n, std::move(ranks));
    s.engine_character = e.character();
    s.engine_exact = e.exact;
  }
  return s;
}

// --- oracle crosscheck -----------------------------------------------------

namespace {

// All fractions a/d in [0, 1) with d <= max_order, reduced and deduplicated.
std::vector<Rational> fractions_up_to(unsigned max_order) {
  std::set<Rational> out;
  for (unsigned d = 1; d <= max_order; ++d)
    for (unsigned a = 0; a < d; ++a) out.insert(Rational(Int(a), Int(d)));
  return {out.begin(), out.end()};
}

}  // namespace

OracleSummary run_oracle_crosscheck(std::size_t max_rank, unsigned max_order, std::size_t samples, std::uint64_t seed,
                                    bool keep_cases) {
  if (max_rank == 0 || max_order == 0) throw Error(ErrorKind::InvalidArgument, "oracle bounds must be positive");
  OracleSummary summary;
  auto compare = [&](std::size_t k, const Character& chi) {
    OracleCase c{k, chi, torus_cohomology_closed_form(k, chi), torus_cohomology_koszul_oracle(k, chi)};
    ++summary.cases;
    if (c.closed_form == c.oracle) {
      ++summary.agreements;
    } else {
      summary.mismatches.push_back(c);
    }
    if (keep_cases) summary.all.push_back(std::move(c));
  };

  if (samples == 0) {
    const std::vector<Rational> values = fractions_up_to(max_order);
    for (std::size_t k = 1; k <= max_rank; ++k) {
      std::vector<std::size_t> idx(k, 0);
      for (;;) {
        std::vector<Rational> v;
        for (std::size_t i : idx) v.push_back(values[i]);
        Character chi(std::move(v));
        if (chi.order() <= max_order) compare(k, chi);
        std::size_t j = 0;
        while (j < k && ++idx[j] == values.size()) idx[j++] = 0;
        if (j == k) break;
      }
    }
    return summary;
  }

  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t k = 1 + draw(rng, max_rank);
    compare(k, random_character(rng, k, max_order));
  }
  return summary;
}

// --- samplers --------------------------------------------------------------

std::uint64_t draw(Rng& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

Character random_character(Rng& rng, std::size_t rank, unsigned max_order) {
  if (max_order == 0) throw Error(ErrorKind::InvalidArgument, "max_order must be positive");
  const long long m = 1 + static_cast<long long>(draw(rng, max_order));
  std::vector<long long> nums(rank);
  for (auto& a : nums) a = static_cast<long long>(draw(rng, static_cast<std::uint64_t>(m)));
  return Character::from_fractions(nums, m);
}

Character random_twisted_character(Rng& rng, std::size_t rank, unsigned max_order) {
  if (max_order < 2 || rank == 0) throw Error(ErrorKind::InvalidArgument, "no twisted characters with these bounds");
  for (;;) {
    Character chi = random_character(rng, rank, max_order);
    if (!is_trivial(chi)) return chi;
  }
}

Character random_character_trivial_on(Rng& rng, const Fan& f, ConeId tau, unsigned max_order) {
  const QuotientLattice& q = f.orbit(tau).quotient;
  Character psi = random_character(rng, q.rank(), max_order);
  return pullback(psi, q);
}

Perversity random_strict_gm(Rng& rng, int n) {
  std::map<int, int> v;
  int cur = 0;
  for (int c = 1; c <= n; ++c) {
    if (c >= 3) cur += static_cast<int>(draw(rng, 2));
    v[c] = cur;
  }
  return Perversity(std::move(v));
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace toric_ic
