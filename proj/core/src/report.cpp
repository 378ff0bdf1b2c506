#include "toric_ic/report.hpp"

#include <algorithm>
#include <sstream>

#include "toric_ic/error.hpp"

namespace toric_ic {

std::vector<ConeRow> cone_rows(const Fan& f) {
  std::vector<ConeRow> out;
  for (const Cone& c : f.cones()) out.push_back({c.id, c.name, c.dim, c.generators});
  return out;
}

std::vector<OrbitRow> orbit_table(const Fan& f, const Character& chi) {
  std::vector<OrbitRow> out;
  for (const Cone& c : f.cones()) {
    const OrbitData& o = f.orbit(c.id);
    OrbitRow row;
    row.cone = c.id;
    row.dim = c.dim;
    row.orbit_dim = o.orbit_dim;
    row.stab_basis = o.stab_lattice.basis();
    row.restriction = restrict(chi, o.stab_lattice);
    if (is_trivial(row.restriction)) row.descended = descend(chi, o.quotient);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<EntryRow> entry_rows(const FanComplex& F) {
  std::vector<EntryRow> out;
  for (const ComplexEntry& e : F.entries) {
    EntryRow row{e.cone, e.degree_low, e.degree_high, {}, e.rank_bounds, e.exact};
    for (const auto& [chi, m] : e.factors.factors) row.characters.emplace_back(chi, m);
    out.push_back(std::move(row));
  }
  return out;
}

// --- serialization ---------------------------------------------------------

namespace {

Value bool_value(bool b) { return Value::word(b ? "true" : "false"); }

bool read_bool(const Value& v, std::string_view what) {
  const std::string& w = v.as_word(what);
  if (w == "true") return true;
  if (w == "false") return false;
  throw Error(ErrorKind::ParseError, std::string(what) + ": expected true or false");
}

Value degree_value(int d) { return d == kUnboundedDegree ? Value::word("inf") : Value::of(static_cast<long long>(d)); }

int read_int(const Value& v, std::string_view what) {
  long long x = v.as_int64(what);
  if (x < -1000000 || x > 1000000) throw Error(ErrorKind::ParseError, std::string(what) + ": out of range");
  return static_cast<int>(x);
}

int read_degree(const Value& v, std::string_view what) {
  if (v.kind == Value::Kind::Word && v.text == "inf") return kUnboundedDegree;
  return read_int(v, what);
}

Value vector_value(const IntVector& v) {
  std::vector<Value> items;
  for (const Int& x : v) items.push_back(Value::of(x));
  return Value::list(std::move(items));
}

Value vectors_value(const std::vector<IntVector>& vs) {
  std::vector<Value> items;
  for (const IntVector& v : vs) items.push_back(vector_value(v));
  return Value::list(std::move(items));
}

std::vector<IntVector> read_vectors(const Value& v, std::string_view what) {
  std::vector<IntVector> out;
  for (const Value& row : v.as_list(what)) {
    IntVector x;
    for (const Value& c : row.as_list(what)) x.push_back(c.as_integer(what));
    out.push_back(std::move(x));
  }
  return out;
}

Value character_value(const Character& chi) { return Value::string(chi.to_string()); }
Character read_character(const Value& v, std::string_view what) { return Character::parse(v.as_string(what)); }

Value entry_value(std::string_view run, const EntryRow& e) {
  std::vector<Value> chars;
  for (const auto& [chi, m] : e.characters) {
    chars.push_back(Value::record({{"character", character_value(chi)}, {"multiplicity", Value::of(m)}}));
  }
  std::vector<Value> ranks;
  for (const auto& [d, r] : e.rank_bounds) {
    ranks.push_back(Value::list({Value::of(static_cast<long long>(d)), Value::of(r)}));
  }
  return Value::record({{"run", Value::word(std::string(run))},
                        {"cone", Value::of(static_cast<long long>(e.cone))},
                        {"low", degree_value(e.degree_low)},
                        {"high", degree_value(e.degree_high)},
                        {"characters", Value::list(std::move(chars))},
                        {"ranks", Value::list(std::move(ranks))},
                        {"exact", bool_value(e.exact)}});
}

EntryRow read_entry(const Value& v) {
  EntryRow e;
  e.cone = read_int(v.field("cone"), "entry cone");
  e.degree_low = read_degree(v.field("low"), "entry low");
  e.degree_high = read_degree(v.field("high"), "entry high");
  for (const Value& c : v.field("characters").as_list("entry characters")) {
    e.characters.emplace_back(read_character(c.field("character"), "entry character"),
                              c.field("multiplicity").as_int64("entry multiplicity"));
  }
  for (const Value& r : v.field("ranks").as_list("entry ranks")) {
    const auto& pair = r.as_list("entry rank");
    if (pair.size() != 2) throw Error(ErrorKind::ParseError, "entry rank: expected [degree, rank]");
    e.rank_bounds[read_int(pair[0], "entry rank degree")] = pair[1].as_int64("entry rank");
  }
  e.exact = read_bool(v.field("exact"), "entry exact");
  return e;
}

Value log_value(std::string_view run, const LogRecord& r) {
  std::vector<std::pair<std::string, Value>> fields{{"run", Value::word(std::string(run))},
                                                     {"cone", Value::of(static_cast<long long>(r.cone))},
                                                     {"status", Value::word(std::string(to_string(r.status)))}};
  if (r.character) fields.emplace_back("character", character_value(*r.character));
  fields.emplace_back("low", degree_value(r.degree_low));
  fields.emplace_back("high", degree_value(r.degree_high));
  return Value::record(std::move(fields));
}

LogRecord read_log(const Value& v) {
  LogRecord r;
  r.cone = read_int(v.field("cone"), "log cone");
  const std::string& s = v.field("status").as_word("log status");
  if (s == "nontrivial") r.status = LogStatus::Nontrivial;
  else if (s == "trivial_witness") r.status = LogStatus::TrivialWitness;
  else if (s == "empty") r.status = LogStatus::Empty;
  else throw Error(ErrorKind::ParseError, "log status: unknown value \"" + s + "\"");
  if (const Value* c = v.find_field("character")) r.character = read_character(*c, "log character");
  r.degree_low = read_degree(v.field("low"), "log low");
  r.degree_high = read_degree(v.field("high"), "log high");
  return r;
}

const Value& required(const Document& doc, std::string_view key) {
  const Statement* s = doc.first(key);
  if (!s) throw Error(ErrorKind::ParseError, "report has no \"" + std::string(key) + "\" statement");
  return s->value;
}

}  // namespace

Document to_document(const RunReport& r) {
  Document doc;
  doc.add("rank", Value::of(static_cast<long long>(r.ambient_rank)));
  for (const ConeRow& c : r.cones) {
    doc.add("cone",
            Value::record({{"id", Value::of(static_cast<long long>(c.id))},
                           {"name", Value::string(c.name)},
                           {"dim", Value::of(static_cast<long long>(c.dim))},
                           {"generators", vectors_value(c.generators)}}));
  }
  const VanishingCertificate& cert = r.certificate;
  doc.add("character", character_value(cert.character));
  doc.add("perversity", Value::string(cert.perversity.to_string()));
  doc.add("dual_perversity", Value::string(cert.dual_perversity.to_string()));
  for (const OrbitRow& o : r.orbits) {
    doc.add("orbit", Value::record({{"cone", Value::of(static_cast<long long>(o.cone))},
                                    {"dim", Value::of(static_cast<long long>(o.dim))},
                                    {"orbit_dim", Value::of(static_cast<long long>(o.orbit_dim))},
                                    {"stab_basis", vectors_value(o.stab_basis)},
                                    {"restriction", character_value(o.restriction)},
                                    {"descended", o.descended ? character_value(*o.descended)
                                                              : Value::word("nontrivial_restriction")}}));
  }
  for (const EntryRow& e : r.primal_entries) doc.add("entry", entry_value("primal", e));
  for (const EntryRow& e : r.dual_entries) doc.add("entry", entry_value("dual", e));
  for (const LogRecord& l : cert.primal.log) doc.add("log", log_value("primal", l));
  for (const LogRecord& l : cert.dual.log) doc.add("log", log_value("dual", l));
  doc.add("twisted", Value::record({{"primal", bool_value(cert.primal.twisted)}, {"dual", bool_value(cert.dual.twisted)}}));
  doc.add("verdict", Value::word(std::string(to_string(cert.verdict))));
  for (const std::string& n : r.notes) doc.add("note", Value::string(n));
  if (r.timing_us) doc.add("timing_us", Value::of(static_cast<long long>(*r.timing_us)));
  return doc;
}

RunReport report_from_document(const Document& doc) {
  RunReport r;
  long long rank = required(doc, "rank").as_int64("rank");
  if (rank < 0 || rank > 64) throw Error(ErrorKind::ParseError, "rank must lie in 0..64");
  r.ambient_rank = static_cast<std::size_t>(rank);
  const int n = static_cast<int>(rank);

  VanishingCertificate& cert = r.certificate;
  cert.character = read_character(required(doc, "character"), "character");
  cert.perversity = Perversity::parse(required(doc, "perversity").as_string("perversity"), n);
  cert.dual_perversity = Perversity::parse(required(doc, "dual_perversity").as_string("dual_perversity"), n);

  auto run_of = [](const Value& v, std::string_view what) {
    const std::string& run = v.field("run").as_word(what);
    if (run != "primal" && run != "dual") throw Error(ErrorKind::ParseError, std::string(what) + ": run must be primal or dual");
    return run == "primal";
  };

  for (const Statement& st : doc.statements) {
    const Value& v = st.value;
    if (st.key == "cone") {
      ConeRow c;
      c.id = read_int(v.field("id"), "cone id");
      c.name = v.field("name").as_string("cone name");
      c.dim = read_int(v.field("dim"), "cone dim");
      c.generators = read_vectors(v.field("generators"), "cone generators");
      r.cones.push_back(std::move(c));
    } else if (st.key == "orbit") {
      OrbitRow o;
      o.cone = read_int(v.field("cone"), "orbit cone");
      o.dim = read_int(v.field("dim"), "orbit dim");
      o.orbit_dim = read_int(v.field("orbit_dim"), "orbit orbit_dim");
      o.stab_basis = read_vectors(v.field("stab_basis"), "orbit stab_basis");
      o.restriction = read_character(v.field("restriction"), "orbit restriction");
      const Value& d = v.field("descended");
      if (d.kind == Value::Kind::Word) {
        if (d.text != "nontrivial_restriction") throw Error(ErrorKind::ParseError, "orbit descended: unknown word");
      } else {
        o.descended = read_character(d, "orbit descended");
      }
      r.orbits.push_back(std::move(o));
    } else if (st.key == "entry") {
      (run_of(v, "entry") ? r.primal_entries : r.dual_entries).push_back(read_entry(v));
    } else if (st.key == "log") {
      (run_of(v, "log") ? cert.primal.log : cert.dual.log).push_back(read_log(v));
    } else if (st.key == "twisted") {
      cert.primal.twisted = read_bool(v.field("primal"), "twisted primal");
      cert.dual.twisted = read_bool(v.field("dual"), "twisted dual");
    } else if (st.key == "verdict") {
      const std::string& w = v.as_word("verdict");
      if (w == "Vanishes") cert.verdict = Verdict::Vanishes;
      else if (w == "Inconclusive") cert.verdict = Verdict::Inconclusive;
      else throw Error(ErrorKind::ParseError, "verdict: unknown value \"" + w + "\"");
    } else if (st.key == "note") {
      r.notes.push_back(v.as_string("note"));
    } else if (st.key == "timing_us") {
      r.timing_us = v.as_int64("timing_us");
    } else if (st.key != "rank" && st.key != "character" && st.key != "perversity" && st.key != "dual_perversity") {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(st.line) + ": unknown report statement \"" + st.key + "\"");
    }
  }
  required(doc, "twisted");
  required(doc, "verdict");
  return r;
}

std::string write_report(const RunReport& r) { return write_document(to_document(r)); }

RunReport parse_report(std::string_view text) { return report_from_document(parse_document(text)); }

Fan fan_of(const RunReport& r) {
  std::vector<std::vector<IntVector>> cones;
  std::vector<std::string> names;
  for (const ConeRow& c : r.cones) {
    cones.push_back(c.generators);
    names.push_back(c.name);
  }
  return Fan::from_cones(r.ambient_rank, cones, false, names);
}

bool replay_report(const RunReport& r) {
  try {
    Fan f = fan_of(r);
    if (f.cones().size() != r.cones.size()) return false;
    for (const ConeRow& c : r.cones) {
      if (c.id < 0 || static_cast<std::size_t>(c.id) >= f.cones().size()) return false;
      if (f.cone(c.id).generators != c.generators) return false;
    }
    if (!validate_fan(f).empty()) return false;
    return replay_certificate(f, r.certificate);
  } catch (const Error&) {
    return false;
  }
}

// --- text rendering --------------------------------------------------------

namespace {

std::string vectors_text(const std::vector<IntVector>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += to_string(vs[i]);
  }
  return s + "}";
}

std::string degree_text(int d) { return d == kUnboundedDegree ? "inf" : std::to_string(d); }

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      os << cells[j];
      if (j + 1 < cells.size()) os << std::string(width[j] - cells[j].size() + 2, ' ');
    }
    os << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : rows) line(row);
  return os.str();
}

}  // namespace

std::string render_orbit_table(const std::vector<OrbitRow>& rows) {
  std::vector<std::vector<std::string>> body;
  for (const OrbitRow& o : rows) {
    body.push_back({std::to_string(o.cone), std::to_string(o.dim), std::to_string(o.orbit_dim),
                    vectors_text(o.stab_basis), "(" + o.restriction.to_string() + ")",
                    o.descended ? "(" + o.descended->to_string() + ")" : "nontrivial restriction"});
  }
  return table({"cone", "dim", "orbit_dim", "stab basis", "restriction", "descended"}, body);
}

std::string render_entries(const std::vector<EntryRow>& rows) {
  std::vector<std::vector<std::string>> body;
  for (const EntryRow& e : rows) {
    std::string chars;
    for (const auto& [chi, m] : e.characters) {
      if (!chars.empty()) chars += " ";
      chars += "(" + chi.to_string() + ")x" + std::to_string(m);
    }
    std::string ranks;
    for (const auto& [d, r] : e.rank_bounds) {
      if (!ranks.empty()) ranks += " ";
      ranks += std::to_string(d) + ":" + std::to_string(r);
    }
    body.push_back({std::to_string(e.cone), "[" + degree_text(e.degree_low) + "," + degree_text(e.degree_high) + "]",
                    chars, ranks, e.exact ? "yes" : "no"});
  }
  return table({"cone", "window", "characters", "rank bounds", "exact"}, body);
}

std::string render_report(const RunReport& r) {
  std::ostringstream os;
  const VanishingCertificate& cert = r.certificate;
  os << "fan in Z^" << r.ambient_rank << ", " << r.cones.size() << " cones\n";
  for (const ConeRow& c : r.cones) {
    os << "  " << c.id << ": dim " << c.dim << " " << vectors_text(c.generators);
    if (!c.name.empty()) os << " \"" << c.name << "\"";
    os << '\n';
  }
  os << "character: (" << cert.character.to_string() << ")\n";
  os << "perversity: " << cert.perversity.to_string() << "\n";
  os << "dual perversity: " << cert.dual_perversity.to_string() << "\n\n";
  os << "orbits\n" << render_orbit_table(r.orbits) << '\n';
  os << "IC entries, primal\n" << render_entries(r.primal_entries) << '\n';
  os << "IC entries, dual\n" << render_entries(r.dual_entries) << '\n';
  auto witnesses = [](const CertificateRun& run) {
    std::string s;
    for (const LogRecord& l : run.log) {
      if (l.status != LogStatus::TrivialWitness) continue;
      if (!s.empty()) s += ", ";
      s += "cone " + std::to_string(l.cone);
    }
    return s;
  };
  os << "primal run: " << (cert.primal.twisted ? "twisted" : "trivial factor on " + witnesses(cert.primal)) << '\n';
  os << "dual run: " << (cert.dual.twisted ? "twisted" : "trivial factor on " + witnesses(cert.dual)) << '\n';
  for (const std::string& n : r.notes) os << "note: " << n << '\n';
  if (r.timing_us) os << "time: " << *r.timing_us << " us\n";
  os << "verdict: " << to_string(cert.verdict) << '\n';
  return os.str();
}

}  // namespace toric_ic
