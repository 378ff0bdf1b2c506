#pragma once

// Run reports: orbit table, per-orbit IC entries, the vanishing certificate
// and optional timing. Serialized with the document grammar so reports can
// be read back and their certificates replayed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toric_ic/document.hpp"
#include "toric_ic/fan.hpp"
#include "toric_ic/icengine.hpp"

namespace toric_ic {

struct ConeRow {
  ConeId id = -1;
  std::string name;
  int dim = 0;
  std::vector<IntVector> generators;

  friend bool operator==(const ConeRow&, const ConeRow&) = default;
};

struct OrbitRow {
  ConeId cone = -1;
  int dim = 0;
  int orbit_dim = 0;
  std::vector<IntVector> stab_basis;
  Character restriction;               // chi on N_sigma
  std::optional<Character> descended;  // empty when the restriction is nontrivial

  friend bool operator==(const OrbitRow&, const OrbitRow&) = default;
};

struct EntryRow {
  ConeId cone = -1;
  int degree_low = 0;
  int degree_high = 0;
  std::vector<std::pair<Character, long long>> characters;
  std::map<int, long long> rank_bounds;
  bool exact = false;

  friend bool operator==(const EntryRow&, const EntryRow&) = default;
};

struct RunReport {
  std::size_t ambient_rank = 0;
  std::vector<ConeRow> cones;
  std::vector<OrbitRow> orbits;
  std::vector<EntryRow> primal_entries;
  std::vector<EntryRow> dual_entries;
  VanishingCertificate certificate;
  std::vector<std::string> notes;
  std::optional<std::int64_t> timing_us;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::vector<ConeRow> cone_rows(const Fan& f);
std::vector<OrbitRow> orbit_table(const Fan& f, const Character& chi);
std::vector<EntryRow> entry_rows(const FanComplex& F);

Document to_document(const RunReport& r);
/// Throws ParseError on malformed or incomplete reports.
RunReport report_from_document(const Document& doc);
std::string write_report(const RunReport& r);
RunReport parse_report(std::string_view text);

/// Rebuilds the fan recorded in the report. Ids are preserved because cones
/// are listed in id order.
Fan fan_of(const RunReport& r);

/// The embedded certificate checked against the embedded fan.
bool replay_report(const RunReport& r);

/// Aligned text tables for terminals.
std::string render_orbit_table(const std::vector<OrbitRow>& rows);
std::string render_entries(const std::vector<EntryRow>& rows);
std::string render_report(const RunReport& r);

}  // namespace toric_ic
