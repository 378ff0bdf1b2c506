#include "toric_ic_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "toric_ic/acceptance.hpp"
#include "toric_ic/check.hpp"
#include "toric_ic/error.hpp"
#include "toric_ic/fan_io.hpp"
#include "toric_ic/report.hpp"

namespace toric_ic {

namespace {

struct Options {
  std::string fan;
  std::string character;
  std::string perversity = "middle";
  std::string dual_perversity;
  std::string report;
  std::string cone;
  bool strict_gm = false;
  bool timing = false;
  std::uint64_t seed = 1;
  std::size_t max_rank = 5;
  unsigned max_order = 12;
  std::size_t samples = 200;
  unsigned jobs = 0;
};

Fan load(const Options& o, std::ostream& err) {
  std::vector<std::string> warnings;
  Fan f = load_fan(o.fan, &warnings);
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
  return f;
}

Character character_for(const Options& o, const Fan& f) {
  Character chi = o.character.empty() ? Character::trivial(f.ambient_rank()) : Character::parse(o.character);
  if (chi.ambient_rank() != f.ambient_rank()) {
    throw Error(ErrorKind::DimensionMismatch, "character (" + chi.to_string() + ") has rank " +
                                                  std::to_string(chi.ambient_rank()) + " but the fan lives in Z^" +
                                                  std::to_string(f.ambient_rank()));
  }
  return chi;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write \"" + path + "\"");
  file << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A cone id, or a generator list such as [[1,0],[0,1]].
ConeId resolve_cone(const Fan& f, const std::string& text) {
  const bool numeric = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (numeric) {
    const unsigned long id = std::stoul(text);
    if (id >= f.cones().size()) throw Error(ErrorKind::UnknownCone, "no cone with id " + text);
    return static_cast<ConeId>(id);
  }
  Document doc = parse_document("cone = " + text);
  std::vector<IntVector> gens;
  for (const Value& g : doc.statements.front().value.as_list("cone")) {
    IntVector v;
    for (const Value& x : g.as_list("cone generator")) v.push_back(x.as_integer("cone generator"));
    if (v.size() != f.ambient_rank()) throw Error(ErrorKind::DimensionMismatch, "generator " + to_string(v) + " has the wrong length");
    gens.push_back(std::move(v));
  }
  auto id = f.find(canonical_rays(f.ambient_rank(), gens));
  if (!id) throw Error(ErrorKind::UnknownCone, "no cone generated by " + text);
  return *id;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  Fan f = load(o, err);
  const int n = static_cast<int>(f.ambient_rank());
  Character chi = character_for(o, f);
  CheckOptions options;
  options.strict_gm = o.strict_gm;
  options.timing = o.timing;
  if (!o.dual_perversity.empty()) options.dual_perversity = Perversity::parse(o.dual_perversity, n);
  RunReport r = run_check(f, chi, Perversity::parse(o.perversity, n), options);
  out << render_report(r);
  if (!o.report.empty()) write_text(o.report, write_report(r), out);
  return exit_code(r.certificate.verdict);
}

int cmd_stalk(const Options& o, std::ostream& out, std::ostream& err) {
  Fan f = load(o, err);
  Character chi = character_for(o, f);
  std::vector<ConeId> cones;
  if (o.cone.empty()) {
    for (const Cone& c : f.cones()) cones.push_back(c.id);
  } else {
    cones.push_back(resolve_cone(f, o.cone));
  }
  auto ranks_text = [](const GradedRanks& g) {
    if (g.is_zero()) return std::string("0");
    std::string s;
    for (std::size_t i = 0; i < g.ranks.size(); ++i) {
      if (i) s += " ";
      s += std::to_string(g.offset + static_cast<int>(i)) + ":" + std::to_string(g.ranks[i]);
    }
    return s;
  };
  bool all = true;
  for (ConeId id : cones) {
    StalkComparison s = stalk_at(f, chi, id);
    all = all && s.agrees();
    out << describe(f.cone(id)) << " (id " << id << ", dim " << s.dim << ")\n";
    out << "  restriction: (" << s.restriction.to_string() << ")\n";
    out << "  engine:      " << ranks_text(s.engine);
    if (s.engine_character) out << "  character (" << s.engine_character->to_string() << ")";
    out << (s.engine_exact ? "  exact" : "") << '\n';
    out << "  oracle:      " << ranks_text(s.oracle);
    if (s.expected_character) out << "  character (" << s.expected_character->to_string() << ")";
    out << '\n';
    out << "  " << (s.agrees() ? "agree" : "DISAGREE") << '\n';
  }
  return all ? 0 : 1;
}

int cmd_orbits(const Options& o, std::ostream& out, std::ostream& err) {
  Fan f = load(o, err);
  out << render_orbit_table(orbit_table(f, character_for(o, f)));
  return 0;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  OracleSummary s = run_oracle_crosscheck(o.max_rank, o.max_order, o.samples, o.seed);
  out << s.agreements << "/" << s.cases << " agree";
  out << (o.samples == 0 ? " (exhaustive)" : " (seed " + std::to_string(o.seed) + ")") << '\n';
  for (const OracleCase& c : s.mismatches) {
    out << "mismatch: rank " << c.rank << ", chi = (" << c.character.to_string() << ")\n";
  }
  return s.mismatches.empty() ? 0 : 1;
}

int cmd_corpus(const Options& o, std::ostream& out) {
  AcceptanceOptions a;
  a.seed = o.seed;
  a.jobs = o.jobs;
  bool all = true;
  // Run criteria one at a time so progress shows as they finish.
  for (auto run : {criterion_torus_cohomology, criterion_twisted_vanishing, criterion_trivial_control,
                   criterion_stalk_exactness, criterion_shift_truncate_properties, criterion_duality,
                   criterion_smooth_sanity}) {
    CriterionResult r = run(a);
    all = all && r.passed;
    out << format_result(r) << std::endl;
  }
  return all ? 0 : 1;
}

int cmd_replay(const Options& o, std::ostream& out) {
  RunReport r = parse_report(read_text(o.report));
  const bool ok = replay_report(r);
  out << (ok ? "certificate replays: " : "certificate does NOT replay: ") << to_string(r.certificate.verdict) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Vanishing certificates for intersection cohomology of toric varieties with twisted coefficients",
               "toric-ic"};
  app.require_subcommand(1);

  auto fan_option = [&](CLI::App* sub) {
    sub->add_option("--fan", o.fan, "builtin:NAME or path to a fan file")->required();
  };
  auto character_option = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--character", o.character, "values on the standard basis, e.g. \"1/2,1/3\"");
    if (required) opt->required();
  };

  auto* check = app.add_subcommand("check", "run the vanishing certificate");
  fan_option(check);
  character_option(check, true);
  check->add_option("--perversity", o.perversity, "middle, zero, top or \"p(1)=0,p(2)=0,...\"")->capture_default_str();
  check->add_option("--dual-perversity", o.dual_perversity, "explicit dual perversity");
  check->add_flag("--strict-gm", o.strict_gm, "reject perversities that are not strict-GM");
  check->add_option("--report", o.report, "write the structured report here (\"-\" for stdout)");
  check->add_flag("--timing", o.timing, "include wall time in the report");

  auto* stalk = app.add_subcommand("stalk", "one-step stalks: engine rule against the Koszul oracle");
  fan_option(stalk);
  character_option(stalk, true);
  stalk->add_option("--cone", o.cone, "cone id or generator list such as [[1,0],[0,1]]; default all");

  auto* orbits = app.add_subcommand("orbits", "orbit table with restrictions and descended characters");
  fan_option(orbits);
  character_option(orbits, false);

  auto* oracle = app.add_subcommand("oracle", "closed form against the Koszul oracle");
  oracle->add_option("--max-rank", o.max_rank, "largest torus rank")->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_option("--max-order", o.max_order, "largest character order")->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_option("--samples", o.samples, "random cases; 0 sweeps every case")->capture_default_str();
  oracle->add_option("--seed", o.seed, "generator seed")->capture_default_str();

  auto* corpus = app.add_subcommand("corpus", "run the acceptance suite on the built-in corpus");
  corpus->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  corpus->add_option("--jobs", o.jobs, "worker threads; 0 uses every core")->capture_default_str();

  auto* replay = app.add_subcommand("replay", "re-validate the certificate in a structured report");
  replay->add_option("--report", o.report, "report file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (check->parsed()) return cmd_check(o, out, err);
    if (stalk->parsed()) return cmd_stalk(o, out, err);
    if (orbits->parsed()) return cmd_orbits(o, out, err);
    if (oracle->parsed()) return cmd_oracle(o, out);
    if (corpus->parsed()) return cmd_corpus(o, out);
    if (replay->parsed()) return cmd_replay(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace toric_ic
