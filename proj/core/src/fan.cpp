#include "toric_ic/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "toric_ic/error.hpp"

namespace toric_ic {

namespace {

using IndexSet = std::vector<std::size_t>;

// Calls fn for every k-subset of {0, ..., n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const IndexSet&)>& fn) {
  if (k > n) return;
  IndexSet idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Integer basis of {x : r.x = 0 for every row r}.
std::vector<IntVector> kernel(std::size_t n, const std::vector<IntVector>& rows) {
  std::vector<IntVector> out;
  if (rows.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      IntVector e(n, Int(0));
      e[j] = 1;
      out.push_back(std::move(e));
    }
    return out;
  }
  SmithForm snf = smith_normal_form(IntMatrix::from_rows(rows, n));
  for (std::size_t j = snf.rank; j < n; ++j) out.push_back(primitive(snf.v.column(j)));
  return out;
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<IntVector> normalize_generators(std::size_t n, std::vector<IntVector> gens) {
  for (IntVector& g : gens) {
    if (g.size() != n) {
      throw Error(ErrorKind::DimensionMismatch, "generator " + to_string(g) + " does not live in Z^" + std::to_string(n));
    }
    if (is_zero(g)) throw Error(ErrorKind::ValidationError, "zero vector is not a valid cone generator");
    g = primitive(g);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

}  // namespace

ConeGeometry analyze_cone(std::size_t n, std::vector<IntVector> generators) {
  ConeGeometry geom;
  const std::vector<IntVector> gens = normalize_generators(n, std::move(generators));
  geom.rays = gens;
  if (gens.empty()) {
    geom.faces.push_back({});
    geom.equations = kernel(n, {});
    return geom;
  }

  SmithForm snf = smith_normal_form(IntMatrix::from_rows(gens, n));
  geom.dim = static_cast<int>(snf.rank);
  for (std::size_t j = snf.rank; j < n; ++j) geom.equations.push_back(primitive(snf.v.column(j)));

  // Facets: hyperplanes through dim-1 independent generators with every
  // generator on one side.
  std::set<IndexSet> facets;
  for_each_subset(gens.size(), static_cast<std::size_t>(geom.dim - 1), [&](const IndexSet& subset) {
    std::vector<IntVector> rows;
    for (std::size_t i : subset) rows.push_back(gens[i]);
    if (!rows.empty() && rank(IntMatrix::from_rows(rows, n)) != rows.size()) return;
    std::optional<IntVector> normal;
    for (const IntVector& k : kernel(n, rows)) {
      if (std::any_of(gens.begin(), gens.end(), [&](const IntVector& g) { return dot(g, k) != 0; })) {
        normal = k;
        break;
      }
    }
    if (!normal) return;
    bool any_pos = false, any_neg = false;
    IndexSet on_plane;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Int v = dot(gens[i], *normal);
      if (v > 0) any_pos = true;
      if (v < 0) any_neg = true;
      if (v == 0) on_plane.push_back(i);
    }
    if (any_pos && any_neg) return;
    if (any_neg) {
      for (Int& x : *normal) x = -x;
    }
    if (facets.insert(on_plane).second) geom.facet_normals.push_back(*normal);
  });

  if (facets.empty()) {
    geom.pointed = false;
  } else {
    IndexSet common = *facets.begin();
    for (const IndexSet& f : facets) common = intersect(common, f);
    geom.pointed = common.empty();
  }
  if (!geom.pointed) {
    geom.faces.push_back(gens);
    return geom;
  }

  // Every proper face is an intersection of facets.
  std::set<IndexSet> faces = facets;
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<IndexSet> current(faces.begin(), faces.end());
    for (std::size_t a = 0; a < current.size(); ++a)
      for (std::size_t b = a + 1; b < current.size(); ++b)
        if (faces.insert(intersect(current[a], current[b])).second) grew = true;
  }
  IndexSet all(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) all[i] = i;
  faces.insert(all);

  std::set<std::size_t> ray_index;
  for (const IndexSet& f : faces)
    if (f.size() == 1) ray_index.insert(f.front());
  geom.rays.clear();
  for (std::size_t i : ray_index) geom.rays.push_back(gens[i]);

  std::set<std::vector<IntVector>> canonical;
  for (const IndexSet& f : faces) {
    std::vector<IntVector> face;
    for (std::size_t i : f)
      if (ray_index.count(i)) face.push_back(gens[i]);
    canonical.insert(std::move(face));
  }
  geom.faces.assign(canonical.begin(), canonical.end());
  return geom;
}

std::vector<IntVector> canonical_rays(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
  return analyze_cone(ambient_rank, generators).rays;
}

std::vector<IntVector> extreme_rays(std::size_t n, const std::vector<IntVector>& inequalities) {
  std::vector<IntVector> cons;
  for (const IntVector& c : inequalities)
    if (!is_zero(c)) cons.push_back(primitive(c));
  std::sort(cons.begin(), cons.end());
  cons.erase(std::unique(cons.begin(), cons.end()), cons.end());

  std::set<IntVector> rays;
  auto feasible = [&](const IntVector& v) {
    return std::all_of(cons.begin(), cons.end(), [&](const IntVector& c) { return dot(c, v) >= 0; });
  };
  if (n == 0) return {};
  for_each_subset(cons.size(), n - 1, [&](const IndexSet& subset) {
    std::vector<IntVector> rows;
    for (std::size_t i : subset) rows.push_back(cons[i]);
    std::vector<IntVector> k = kernel(n, rows);
    if (k.size() != 1) return;
    IntVector v = k.front();
    IntVector neg(v);
    for (Int& x : neg) x = -x;
    if (feasible(v)) rays.insert(v);
    if (feasible(neg)) rays.insert(neg);
  });
  return {rays.begin(), rays.end()};
}

bool cone_contains(const ConeGeometry& cone, const IntVector& v) {
  for (const IntVector& e : cone.equations)
    if (dot(e, v) != 0) return false;
  for (const IntVector& u : cone.facet_normals)
    if (dot(u, v) < 0) return false;
  return true;
}

// --- Fan -------------------------------------------------------------------

Fan Fan::from_cones(std::size_t n, const std::vector<std::vector<IntVector>>& cones, bool close_faces,
                    const std::vector<std::string>& names) {
  std::map<std::vector<IntVector>, std::string> keys;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    ConeGeometry g = analyze_cone(n, cones[i]);
    std::string name = i < names.size() ? names[i] : std::string();
    auto [it, inserted] = keys.emplace(g.rays, name);
    if (!inserted && it->second.empty()) it->second = name;
    if (close_faces) {
      for (const auto& face : g.faces) keys.emplace(face, std::string());
    }
  }
  if (close_faces) keys.emplace(std::vector<IntVector>{}, std::string());

  Fan fan;
  fan.ambient_rank_ = n;
  for (auto& [gens, name] : keys) {
    Cone c;
    c.id = static_cast<ConeId>(fan.cones_.size());
    c.generators = gens;
    c.name = name;
    fan.geometry_.push_back(analyze_cone(n, gens));
    c.dim = fan.geometry_.back().dim;
    fan.cones_.push_back(std::move(c));
  }
  fan.faces_.resize(fan.cones_.size());
  fan.missing_.resize(fan.cones_.size());
  for (const Cone& c : fan.cones_) {
    for (const auto& face : fan.geometry_[c.id].faces) {
      if (auto id = fan.find(face)) {
        fan.faces_[c.id].push_back(*id);
      } else {
        fan.missing_[c.id].push_back(face);
      }
    }
    std::sort(fan.faces_[c.id].begin(), fan.faces_[c.id].end());
  }
  for (const Cone& c : fan.cones_) {
    OrbitData od;
    od.cone = c.id;
    od.stab_lattice = saturate(Sublattice::span(n, c.generators));
    od.quotient = complete_basis(od.stab_lattice);
    od.orbit_dim = static_cast<int>(n) - c.dim;
    fan.orbits_.push_back(std::move(od));
  }
  return fan;
}

void Fan::check_id(ConeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= cones_.size()) {
    throw Error(ErrorKind::UnknownCone, "no cone with id " + std::to_string(id));
  }
}

const Cone& Fan::cone(ConeId id) const {
  check_id(id);
  return cones_[id];
}

std::optional<ConeId> Fan::find(const std::vector<IntVector>& generators) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), generators,
                             [](const Cone& c, const std::vector<IntVector>& g) { return c.generators < g; });
  if (it != cones_.end() && it->generators == generators) return it->id;
  return std::nullopt;
}

std::optional<ConeId> Fan::zero_cone() const { return find({}); }

int Fan::dimension() const {
  int d = 0;
  for (const Cone& c : cones_) d = std::max(d, c.dim);
  return d;
}

const std::vector<ConeId>& Fan::faces(ConeId id) const {
  check_id(id);
  return faces_[id];
}

std::vector<std::pair<ConeId, ConeId>> Fan::face_relation() const {
  std::vector<std::pair<ConeId, ConeId>> rel;
  for (const Cone& c : cones_)
    for (ConeId f : faces_[c.id]) rel.emplace_back(f, c.id);
  return rel;
}

bool Fan::is_face(ConeId sigma, ConeId tau) const {
  check_id(sigma);
  check_id(tau);
  return std::binary_search(faces_[tau].begin(), faces_[tau].end(), sigma);
}

const ConeGeometry& Fan::geometry(ConeId id) const {
  check_id(id);
  return geometry_[id];
}

const OrbitData& Fan::orbit(ConeId id) const {
  check_id(id);
  return orbits_[id];
}

const std::vector<std::vector<IntVector>>& Fan::missing_faces(ConeId id) const {
  check_id(id);
  return missing_[id];
}

std::string describe(const Cone& cone) {
  if (cone.generators.empty()) return "zero cone";
  std::ostringstream os;
  os << (cone.generators.size() == 1 ? "ray" : "cone") << '{';
  for (std::size_t i = 0; i < cone.generators.size(); ++i) {
    if (i) os << ',';
    os << to_string(cone.generators[i]);
  }
  os << '}';
  return os.str();
}

namespace {

std::string describe_generators(const std::vector<IntVector>& gens) {
  Cone c;
  c.generators = gens;
  return describe(c);
}

}  // namespace

std::vector<FanViolation> validate_fan(const Fan& f) {
  std::vector<FanViolation> out;
  const auto& cones = f.cones();
  if (!f.zero_cone()) out.push_back({"zero cone", -1, -1, "zero cone missing"});

  for (const Cone& c : cones) {
    const ConeGeometry& g = f.geometry(c.id);
    for (const IntVector& v : c.generators) {
      if (content(v) != 1) {
        out.push_back({"primitive", c.id, -1, "generator " + to_string(v) + " of " + describe(c) + " is not primitive"});
      }
    }
    if (!g.pointed) {
      out.push_back({"strongly convex", c.id, -1, describe(c) + " contains a line"});
    }
    for (const auto& face : f.missing_faces(c.id)) {
      out.push_back({"face missing", c.id, -1, "face missing: " + describe_generators(face) + " of " + describe(c)});
    }
  }

  // Partial order axioms on the stored relation.
  for (const Cone& t : cones) {
    if (!f.is_face(t.id, t.id)) out.push_back({"reflexive", t.id, t.id, describe(t) + " is not a face of itself"});
    for (ConeId s : f.faces(t.id)) {
      if (s != t.id && f.is_face(t.id, s)) {
        out.push_back({"antisymmetric", s, t.id, "face relation cycle between " + describe(f.cone(s)) + " and " + describe(t)});
      }
      for (ConeId r : f.faces(s)) {
        if (!f.is_face(r, t.id)) {
          out.push_back({"transitive", r, t.id, describe(f.cone(r)) + " is a face of a face of " + describe(t) + " but not of it"});
        }
      }
    }
  }

  const std::size_t n = f.ambient_rank();
  for (std::size_t a = 0; a < cones.size(); ++a) {
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      const Cone& s = cones[a];
      const Cone& t = cones[b];
      if (f.is_face(s.id, t.id) || f.is_face(t.id, s.id)) continue;
      const ConeGeometry& gs = f.geometry(s.id);
      const ConeGeometry& gt = f.geometry(t.id);
      if (!gs.pointed || !gt.pointed) continue;

      std::vector<IntVector> common;
      std::set_intersection(s.generators.begin(), s.generators.end(), t.generators.begin(), t.generators.end(),
                            std::back_inserter(common));
      auto is_face_of = [&](const ConeGeometry& g) {
        return std::find(g.faces.begin(), g.faces.end(), common) != g.faces.end();
      };
      bool ok = is_face_of(gs) && is_face_of(gt);
      if (ok) {
        std::vector<IntVector> cons;
        for (const ConeGeometry* g : {&gs, &gt}) {
          for (const IntVector& e : g->equations) {
            cons.push_back(e);
            IntVector neg(e);
            for (Int& x : neg) x = -x;
            cons.push_back(std::move(neg));
          }
          cons.insert(cons.end(), g->facet_normals.begin(), g->facet_normals.end());
        }
        ConeGeometry gc = analyze_cone(n, common);
        for (const IntVector& r : extreme_rays(n, cons)) {
          if (!cone_contains(gc, r)) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) {
        out.push_back({"intersection", s.id, t.id,
                       "intersection not a common face: " + describe(s) + " and " + describe(t)});
      }
    }
  }
  return out;
}

std::vector<Cone> faces_of(const Fan& f, ConeId tau) {
  std::vector<Cone> out;
  for (ConeId id : f.faces(tau)) out.push_back(f.cone(id));
  return out;
}

const OrbitData& orbit_data(const Fan& f, ConeId sigma) { return f.orbit(sigma); }

std::vector<std::vector<ConeId>> codim_filtration(const Fan& f) {
  std::vector<std::vector<ConeId>> levels(f.ambient_rank() + 1);
  for (const Cone& c : f.cones()) levels[static_cast<std::size_t>(c.dim)].push_back(c.id);
  return levels;
}

}  // namespace toric_ic
