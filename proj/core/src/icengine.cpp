#include "toric_ic/icengine.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

#include "toric_ic/error.hpp"

namespace toric_ic {

// --- Perversity ------------------------------------------------------------

Perversity::Perversity(std::map<int, int> values) : values_(std::move(values)) {
  for (const auto& [c, v] : values_) {
    if (c < 1) throw Error(ErrorKind::InvalidArgument, "perversity codimension must be >= 1");
  }
}

Perversity Perversity::zero(int n) {
  std::map<int, int> v;
  for (int c = 1; c <= n; ++c) v[c] = 0;
  return Perversity(std::move(v));
}

Perversity Perversity::middle(int n) {
  std::map<int, int> v;
  for (int c = 1; c <= n; ++c) v[c] = c == 1 ? 0 : (c - 2) / 2;
  return Perversity(std::move(v));
}

Perversity Perversity::top(int n) {
  std::map<int, int> v;
  for (int c = 1; c <= n; ++c) v[c] = c == 1 ? 0 : c - 2;
  return Perversity(std::move(v));
}

Perversity Perversity::parse(std::string_view text, int n) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t == "middle") return middle(n);
  if (t == "zero") return zero(n);
  if (t == "top") return top(n);

  std::map<int, int> v;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "perversity \"" + std::string(text) + "\": " + why);
  };
  auto read_int = [&]() {
    std::size_t start = pos;
    if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) ++pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(t[start])))) fail("expected an integer");
    return std::stoi(t.substr(start, pos - start));
  };
  auto expect = [&](char ch) {
    if (pos >= t.size() || t[pos] != ch) fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  while (pos < t.size()) {
    expect('p');
    expect('(');
    int c = read_int();
    expect(')');
    expect('=');
    int value = read_int();
    if (c < 1) fail("codimension must be >= 1");
    if (!v.emplace(c, value).second) fail("codimension " + std::to_string(c) + " given twice");
    if (pos < t.size()) expect(',');
  }
  // Codimension one defaults to the smooth-in-codim-1 convention.
  v.emplace(1, 0);
  return Perversity(std::move(v));
}

int Perversity::operator()(int codim) const {
  auto it = values_.find(codim);
  if (it == values_.end()) {
    throw Error(ErrorKind::PerversityUndefined, "perversity has no value in codimension " + std::to_string(codim));
  }
  return it->second;
}

bool Perversity::defined_on(int n) const {
  for (int c = 1; c <= n; ++c)
    if (!values_.count(c)) return false;
  return true;
}

bool Perversity::is_strict_gm(int n) const {
  if (!defined_on(n)) return false;
  if (n >= 1 && (*this)(1) != 0) return false;
  if (n >= 2 && (*this)(2) != 0) return false;
  for (int c = 1; c < n; ++c) {
    int step = (*this)(c + 1) - (*this)(c);
    if (step < 0 || step > 1) return false;
  }
  return true;
}

std::string Perversity::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, v] : values_) {
    if (!first) os << ',';
    first = false;
    os << "p(" << c << ")=" << v;
  }
  return os.str();
}

Perversity dual_perversity(const Perversity& p, int n) {
  if (!p.is_strict_gm(n)) {
    throw Error(ErrorKind::PerversityUndefined,
                "dual perversity of " + p.to_string() + " is only formed for strict-GM perversities; supply it explicitly");
  }
  std::map<int, int> q;
  for (int c = 1; c <= n; ++c) q[c] = c == 1 ? 0 : c - 2 - p(c);
  return Perversity(std::move(q));
}

// --- FanComplex ------------------------------------------------------------

const Character& ComplexEntry::character() const {
  if (factors.factors.size() != 1) {
    throw Error(ErrorKind::InvalidArgument, "complex entry does not carry exactly one character");
  }
  return factors.factors.begin()->first;
}

std::vector<ConeId> FanComplex::support() const {
  std::set<ConeId> s;
  for (const auto& e : entries) s.insert(e.cone);
  return {s.begin(), s.end()};
}

std::vector<const ComplexEntry*> FanComplex::entries_on(ConeId cone) const {
  std::vector<const ComplexEntry*> out;
  for (const auto& e : entries)
    if (e.cone == cone) out.push_back(&e);
  return out;
}

namespace {

void refresh_multiplicities(ComplexEntry& e) {
  long long total = 0;
  for (const auto& [d, r] : e.rank_bounds) total += r;
  for (auto& [chi, m] : e.factors.factors) m = total;
}

int add_degree(int d, int by) {
  if (d == kUnboundedDegree) return d;
  return d + by;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

void canonicalize(FanComplex& F) {
  std::erase_if(F.entries, [](const ComplexEntry& e) { return e.factors.factors.empty(); });
  std::sort(F.entries.begin(), F.entries.end(), [](const ComplexEntry& a, const ComplexEntry& b) {
    return std::tie(a.cone, a.character(), a.degree_low, a.degree_high) <
           std::tie(b.cone, b.character(), b.degree_low, b.degree_high);
  });
  std::vector<ComplexEntry> merged;
  for (auto& e : F.entries) {
    if (!merged.empty()) {
      ComplexEntry& last = merged.back();
      if (last.cone == e.cone && last.character() == e.character() && e.degree_low <= last.degree_high) {
        last.degree_high = std::max(last.degree_high, e.degree_high);
        for (const auto& [d, r] : e.rank_bounds) last.rank_bounds[d] += r;
        last.exact = false;
        refresh_multiplicities(last);
        continue;
      }
    }
    merged.push_back(std::move(e));
  }
  F.entries = std::move(merged);
}

FanComplex initial_complex(const Fan& f, const Character& chi) {
  if (chi.ambient_rank() != f.ambient_rank()) {
    throw Error(ErrorKind::DimensionMismatch, "character of rank " + std::to_string(chi.ambient_rank()) +
                                                  " on a fan in Z^" + std::to_string(f.ambient_rank()));
  }
  auto zero = f.zero_cone();
  if (!zero) throw Error(ErrorKind::ValidationError, "fan has no zero cone");
  const int n = static_cast<int>(f.ambient_rank());
  ComplexEntry e;
  e.cone = *zero;
  e.degree_low = e.degree_high = -n;
  e.factors.quotient = &f.orbit(*zero).quotient;
  // The zero cone's quotient is all of Z^n, presented by its own basis.
  e.factors.add(descend(chi, f.orbit(*zero).quotient), 1);
  e.rank_bounds[-n] = 1;
  e.exact = true;
  return FanComplex{&f, {std::move(e)}};
}

FanComplex shift(const FanComplex& F, int m) {
  FanComplex out{F.fan, {}};
  for (const auto& e : F.entries) {
    ComplexEntry s = e;
    s.degree_low = e.degree_low - m;
    s.degree_high = add_degree(e.degree_high, -m);
    s.rank_bounds.clear();
    for (const auto& [d, r] : e.rank_bounds) s.rank_bounds[d - m] = r;
    out.entries.push_back(std::move(s));
  }
  return out;
}

FanComplex truncate(const FanComplex& F, std::optional<int> cutoff) {
  if (!cutoff) return F;
  FanComplex out{F.fan, {}};
  for (const auto& e : F.entries) {
    if (e.degree_low > *cutoff) continue;
    ComplexEntry t = e;
    t.degree_high = std::min(e.degree_high, *cutoff);
    std::erase_if(t.rank_bounds, [&](const auto& kv) { return kv.first > *cutoff; });
    refresh_multiplicities(t);
    if (t.factors.total_rank() == 0) continue;
    out.entries.push_back(std::move(t));
  }
  return out;
}

Sublattice relative_sublattice(const Fan& f, ConeId sigma, ConeId tau) {
  if (!f.is_face(sigma, tau)) {
    throw Error(ErrorKind::InvalidArgument, describe(f.cone(sigma)) + " is not a face of " + describe(f.cone(tau)));
  }
  const QuotientLattice& q = f.orbit(sigma).quotient;
  std::vector<IntVector> images;
  for (const IntVector& b : f.orbit(tau).stab_lattice.basis()) images.push_back(q.project(b));
  return Sublattice::span(q.rank(), images);
}

FanComplex pushforward_step(const FanComplex& F, int k) {
  if (!F.fan) throw Error(ErrorKind::InvalidArgument, "complex is not attached to a fan");
  const Fan& f = *F.fan;
  for (const auto& e : F.entries) {
    if (f.cone(e.cone).dim >= k) {
      throw Error(ErrorKind::SupportTooDeep, "entry on " + describe(f.cone(e.cone)) + " already reaches dimension " +
                                                 std::to_string(k));
    }
  }
  const bool single_orbit = F.entries.size() == 1 && f.cone(F.entries.front().cone).dim == 0 && F.entries.front().exact;

  FanComplex out{&f, F.entries};
  for (const Cone& tau : f.cones()) {
    if (tau.dim != k) continue;
    const QuotientLattice& target = f.orbit(tau.id).quotient;
    for (const auto& e : F.entries) {
      if (!f.is_face(e.cone, tau.id)) continue;
      const QuotientLattice& source = f.orbit(e.cone).quotient;
      const int rel_dim = tau.dim - f.cone(e.cone).dim;
      const Sublattice s = relative_sublattice(f, e.cone, tau.id);
      for (const auto& [mu, mult] : e.factors.factors) {
        // Nontrivial monodromy around O_tau: the local cohomology vanishes.
        if (!is_trivial(restrict(mu, s))) continue;
        // Otherwise mu descends to (N/N_sigma)/S = N/N_tau.
        std::vector<Rational> values;
        for (const IntVector& c : target.complement_basis()) values.push_back(mu.evaluate(source.project(c)));
        ComplexEntry n;
        n.cone = tau.id;
        n.degree_low = e.degree_low;
        n.degree_high = add_degree(e.degree_high, rel_dim);
        n.factors.quotient = &target;
        n.factors.add(Character(std::move(values)), 1);
        for (const auto& [d, r] : e.rank_bounds)
          for (int i = 0; i <= rel_dim; ++i) n.rank_bounds[d + i] += r * binomial(rel_dim, i);
        n.exact = single_orbit;
        refresh_multiplicities(n);
        out.entries.push_back(std::move(n));
      }
    }
  }
  canonicalize(out);
  return out;
}

FanComplex deligne_ic(const Fan& f, const Character& chi, const Perversity& p) {
  FanComplex F = initial_complex(f, chi);
  const int n = static_cast<int>(f.ambient_rank());
  for (int k = 1; k <= n; ++k) {
    F = pushforward_step(F, k);
    F = truncate(F, p(k) - n);
  }
  return F;
}

// --- certificates ----------------------------------------------------------

std::string_view to_string(LogStatus s) {
  switch (s) {
    case LogStatus::Nontrivial: return "nontrivial";
    case LogStatus::TrivialWitness: return "trivial_witness";
    case LogStatus::Empty: return "empty";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) { return v == Verdict::Vanishes ? "Vanishes" : "Inconclusive"; }

CertificateRun twistedness_certificate(const FanComplex& F) {
  CertificateRun run;
  if (!F.fan) {
    for (const auto& e : F.entries) {
      for (const auto& [chi, m] : e.factors.factors) {
        LogStatus st = is_trivial(chi) ? LogStatus::TrivialWitness : LogStatus::Nontrivial;
        if (st == LogStatus::TrivialWitness) run.twisted = false;
        run.log.push_back({e.cone, st, chi, e.degree_low, e.degree_high});
      }
    }
    return run;
  }
  for (const Cone& c : F.fan->cones()) {
    auto here = F.entries_on(c.id);
    if (here.empty()) {
      run.log.push_back({c.id, LogStatus::Empty, std::nullopt, 0, 0});
      continue;
    }
    for (const ComplexEntry* e : here) {
      for (const auto& [chi, m] : e->factors.factors) {
        LogStatus st = is_trivial(chi) ? LogStatus::TrivialWitness : LogStatus::Nontrivial;
        if (st == LogStatus::TrivialWitness) run.twisted = false;
        run.log.push_back({c.id, st, chi, e->degree_low, e->degree_high});
      }
    }
  }
  return run;
}

VanishingCertificate vanishing_verdict(const Fan& f, const Character& chi, const Perversity& p,
                                       const std::optional<Perversity>& q) {
  const int n = static_cast<int>(f.ambient_rank());
  VanishingCertificate cert;
  cert.character = chi;
  cert.perversity = p;
  cert.dual_perversity = q ? *q : dual_perversity(p, n);
  cert.primal = twistedness_certificate(deligne_ic(f, chi, p));
  cert.dual = twistedness_certificate(deligne_ic(f, dual(chi), cert.dual_perversity));
  cert.verdict = cert.primal.twisted && cert.dual.twisted ? Verdict::Vanishes : Verdict::Inconclusive;
  return cert;
}

bool replay_certificate(const Fan& f, const VanishingCertificate& cert) {
  auto consistent = [&](const CertificateRun& run) {
    std::set<ConeId> covered;
    bool twisted = true;
    for (const LogRecord& r : run.log) {
      if (r.cone < 0 || static_cast<std::size_t>(r.cone) >= f.cones().size()) return false;
      covered.insert(r.cone);
      switch (r.status) {
        case LogStatus::Empty:
          if (r.character) return false;
          break;
        case LogStatus::Nontrivial:
          if (!r.character || is_trivial(*r.character)) return false;
          break;
        case LogStatus::TrivialWitness:
          if (!r.character || !is_trivial(*r.character)) return false;
          twisted = false;
          break;
      }
    }
    return covered.size() == f.cones().size() && twisted == run.twisted;
  };
  if (!consistent(cert.primal) || !consistent(cert.dual)) return false;
  const bool both = cert.primal.twisted && cert.dual.twisted;
  if ((cert.verdict == Verdict::Vanishes) != both) return false;
  try {
    VanishingCertificate again = vanishing_verdict(f, cert.character, cert.perversity, cert.dual_perversity);
    return again == cert;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace toric_ic
