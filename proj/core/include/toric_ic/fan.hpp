#pragma once

// Rational polyhedral fans: cones, the face poset (= orbit poset of the
// toric variety), and per-cone lattice data N_sigma and N / N_sigma.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric_ic/lattice.hpp"

namespace toric_ic {

using ConeId = int;

struct Cone {
  ConeId id = -1;
  // Primitive ray generators in lexicographic order; empty for the zero cone.
  std::vector<IntVector> generators;
  int dim = 0;
  std::string name;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.id == b.id && a.generators == b.generators;
  }
};

/// Exact description of a single cone from its generators.
struct ConeGeometry {
  int dim = 0;
  bool pointed = true;
  // Extremal ray generators, sorted. For a cone that is not strongly convex
  // this is just the deduplicated input.
  std::vector<IntVector> rays;
  // Each face as its sorted ray set, including the zero face and the cone.
  std::vector<std::vector<IntVector>> faces;
  // {x : e.x = 0 for e in equations, u.x >= 0 for u in facet_normals}
  std::vector<IntVector> equations;
  std::vector<IntVector> facet_normals;
};

ConeGeometry analyze_cone(std::size_t ambient_rank, std::vector<IntVector> generators);

/// Primitive, deduplicated, redundancy-free generator list of the cone.
std::vector<IntVector> canonical_rays(std::size_t ambient_rank, const std::vector<IntVector>& generators);

/// Extreme rays of {x : c.x >= 0 for all c}. The cone must be pointed.
std::vector<IntVector> extreme_rays(std::size_t ambient_rank, const std::vector<IntVector>& inequalities);

bool cone_contains(const ConeGeometry& cone, const IntVector& v);

struct OrbitData {
  ConeId cone = -1;
  Sublattice stab_lattice;   // N_sigma = Z^n ∩ R sigma
  QuotientLattice quotient;  // N / N_sigma
  int orbit_dim = 0;
};

struct FanViolation {
  std::string rule;
  ConeId first = -1;
  ConeId second = -1;
  std::string message;
};

class Fan {
 public:
  Fan() = default;

  /// Builds a fan from generator lists. Generators are normalized to primitive
  /// vectors, redundant generators dropped and duplicate cones merged. With
  /// `close_faces`, every face of every cone is added. Cone ids follow the
  /// lexicographic order of the sorted generator lists. Throws
  /// DimensionMismatch on vectors of the wrong length and ValidationError on
  /// zero generators.
  static Fan from_cones(std::size_t ambient_rank, const std::vector<std::vector<IntVector>>& cones,
                        bool close_faces = true, const std::vector<std::string>& names = {});

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  const std::vector<Cone>& cones() const noexcept { return cones_; }
  const Cone& cone(ConeId id) const;
  std::optional<ConeId> find(const std::vector<IntVector>& generators) const;
  std::optional<ConeId> zero_cone() const;
  // Largest cone dimension present.
  int dimension() const;

  // Faces of `id` that are present in the fan, including itself, sorted by id.
  const std::vector<ConeId>& faces(ConeId id) const;
  // (sigma, tau): sigma is a face of tau.
  std::vector<std::pair<ConeId, ConeId>> face_relation() const;
  bool is_face(ConeId sigma, ConeId tau) const;

  const ConeGeometry& geometry(ConeId id) const;
  const OrbitData& orbit(ConeId id) const;
  // Faces computed from the generators but absent from the fan.
  const std::vector<std::vector<IntVector>>& missing_faces(ConeId id) const;

 private:
  void check_id(ConeId id) const;

  std::size_t ambient_rank_ = 0;
  std::vector<Cone> cones_;
  std::vector<ConeGeometry> geometry_;
  std::vector<std::vector<ConeId>> faces_;
  std::vector<std::vector<std::vector<IntVector>>> missing_;
  std::vector<OrbitData> orbits_;
};

std::string describe(const Cone& cone);

/// Empty iff every fan invariant holds.
std::vector<FanViolation> validate_fan(const Fan& f);

/// All faces of tau present in f, including the zero cone and tau. Throws
/// UnknownCone.
std::vector<Cone> faces_of(const Fan& f, ConeId tau);

/// Throws UnknownCone.
const OrbitData& orbit_data(const Fan& f, ConeId sigma);

/// Level k holds the ids of all cones of dimension k (orbit codimension k),
/// for k = 0..n.
std::vector<std::vector<ConeId>> codim_filtration(const Fan& f);

}  // namespace toric_ic
