#include "toric_ic/fan_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "toric_ic/error.hpp"

namespace toric_ic {

namespace {

IntVector read_vector(const Value& v, std::size_t n, const std::string& where) {
  const auto& items = v.as_list(where);
  if (items.size() != n) {
    throw Error(ErrorKind::ParseError, where + ": vector of length " + std::to_string(items.size()) +
                                           " in a rank-" + std::to_string(n) + " fan");
  }
  IntVector out;
  out.reserve(n);
  for (const Value& x : items) out.push_back(x.as_integer(where + " (generator entries must be integers)"));
  return out;
}

}  // namespace

FanDocument fan_document_from(const Document& doc, bool strict) {
  FanDocument fd;
  const Statement* rank = doc.first("rank");
  if (!rank) throw Error(ErrorKind::ParseError, "fan document has no \"rank\" statement");
  if (doc.all("rank").size() > 1) throw Error(ErrorKind::ParseError, "fan document has more than one \"rank\"");
  long long n = rank->value.as_int64("line " + std::to_string(rank->line) + ": rank");
  if (n < 0 || n > 64) throw Error(ErrorKind::ParseError, "rank must lie in 0..64");
  fd.ambient_rank = static_cast<std::size_t>(n);

  for (const Statement& st : doc.statements) {
    if (st.key == "rank") continue;
    if (st.key != "cone") {
      if (strict) throw Error(ErrorKind::ParseError, "line " + std::to_string(st.line) + ": unknown statement \"" + st.key + "\"");
      continue;
    }
    const std::string where = "line " + std::to_string(st.line) + ": cone";
    std::vector<IntVector> gens;
    for (const Value& g : st.value.as_list(where)) gens.push_back(read_vector(g, fd.ambient_rank, where));
    fd.cones.push_back(std::move(gens));
    fd.names.push_back(st.label.value_or(""));
  }
  return fd;
}

Fan fan_from_document(const FanDocument& doc, std::vector<std::string>* warnings) {
  std::vector<std::string> local;
  std::vector<std::string>& warn = warnings ? *warnings : local;
  std::map<std::vector<IntVector>, std::size_t> seen;
  for (std::size_t i = 0; i < doc.cones.size(); ++i) {
    const std::string label = doc.names[i].empty() ? "cone #" + std::to_string(i + 1) : "cone \"" + doc.names[i] + "\"";
    for (const IntVector& g : doc.cones[i]) {
      if (is_zero(g)) throw Error(ErrorKind::ValidationError, label + " has a zero generator");
      if (content(g) != 1) {
        warn.push_back(label + ": generator " + to_string(g) + " normalized to " + to_string(primitive(g)));
      }
    }
    auto key = canonical_rays(doc.ambient_rank, doc.cones[i]);
    auto [it, inserted] = seen.emplace(key, i);
    if (!inserted) warn.push_back(label + " duplicates an earlier cone; deduplicated");
  }
  Fan fan = Fan::from_cones(doc.ambient_rank, doc.cones, true, doc.names);
  auto violations = validate_fan(fan);
  if (!violations.empty()) {
    std::ostringstream os;
    os << violations.size() << " fan violation(s):";
    for (const auto& v : violations) os << "\n  - " << v.message;
    throw Error(ErrorKind::ValidationError, os.str());
  }
  return fan;
}

Fan parse_fan(std::string_view text, std::vector<std::string>* warnings) {
  return fan_from_document(fan_document_from(parse_document(text), true), warnings);
}

Document fan_to_document(const Fan& f) {
  Document doc;
  doc.add("rank", Value::of(static_cast<long long>(f.ambient_rank())));
  for (const Cone& c : f.cones()) {
    std::vector<Value> gens;
    for (const IntVector& g : c.generators) {
      std::vector<Value> coords;
      for (const Int& x : g) coords.push_back(Value::of(x));
      gens.push_back(Value::list(std::move(coords)));
    }
    doc.add("cone", Value::list(std::move(gens)), c.name.empty() ? std::to_string(c.id) : c.name);
  }
  return doc;
}

std::string write_fan(const Fan& f) { return write_document(fan_to_document(f)); }

// --- built-in fans ---------------------------------------------------------

namespace {

IntVector unit(std::size_t n, std::size_t i, long long s = 1) {
  IntVector e(n, Int(0));
  e[i] = s;
  return e;
}

long long parse_parameter(std::string_view name, std::string_view param) {
  if (param.empty()) throw Error(ErrorKind::UnknownName, "builtin fan \"" + std::string(name) + "\" needs a parameter");
  long long v = 0;
  std::size_t i = 0;
  bool neg = false;
  if (param[0] == '-') {
    neg = true;
    i = 1;
  }
  if (i == param.size()) throw Error(ErrorKind::UnknownName, "bad parameter in \"" + std::string(name) + "\"");
  for (; i < param.size(); ++i) {
    if (param[i] < '0' || param[i] > '9' || v > 1000000) {
      throw Error(ErrorKind::UnknownName, "bad parameter in \"" + std::string(name) + "\"");
    }
    v = v * 10 + (param[i] - '0');
  }
  return neg ? -v : v;
}

}  // namespace

Fan builtin_fan(std::string_view name) {
  std::string_view base = name;
  std::string_view param;
  if (auto colon = name.find(':'); colon != std::string_view::npos) {
    base = name.substr(0, colon);
    param = name.substr(colon + 1);
  }
  auto no_param = [&]() {
    if (!param.empty()) throw Error(ErrorKind::UnknownName, "builtin fan \"" + std::string(base) + "\" takes no parameter");
  };

  if (base == "affine") {
    long long n = parse_parameter(name, param);
    if (n < 1 || n > 12) throw Error(ErrorKind::UnknownName, "affine:n needs 1 <= n <= 12");
    std::vector<IntVector> gens;
    for (long long i = 0; i < n; ++i) gens.push_back(unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
    return Fan::from_cones(static_cast<std::size_t>(n), {gens});
  }
  if (base == "projective_space") {
    long long n = parse_parameter(name, param);
    if (n < 1 || n > 8) throw Error(ErrorKind::UnknownName, "projective_space:n needs 1 <= n <= 8");
    const auto un = static_cast<std::size_t>(n);
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < un; ++i) rays.push_back(unit(un, i));
    rays.push_back(IntVector(un, Int(-1)));
    std::vector<std::vector<IntVector>> cones;
    for (std::size_t skip = 0; skip < rays.size(); ++skip) {
      std::vector<IntVector> c;
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (i != skip) c.push_back(rays[i]);
      cones.push_back(std::move(c));
    }
    return Fan::from_cones(un, cones);
  }
  if (base == "p1xp1") {
    no_param();
    std::vector<std::vector<IntVector>> cones;
    for (long long a : {1, -1})
      for (long long b : {1, -1}) cones.push_back({make_vector({a, 0}), make_vector({0, b})});
    return Fan::from_cones(2, cones);
  }
  if (base == "hirzebruch") {
    long long a = parse_parameter(name, param);
    if (a < 0) throw Error(ErrorKind::UnknownName, "hirzebruch:a needs a >= 0");
    IntVector r1 = make_vector({1, 0}), r2 = make_vector({0, 1}), r3 = make_vector({-1, a}), r4 = make_vector({0, -1});
    return Fan::from_cones(2, {{r1, r2}, {r2, r3}, {r3, r4}, {r4, r1}});
  }
  if (base == "weighted_p112") {
    no_param();
    IntVector r1 = make_vector({1, 0}), r2 = make_vector({0, 1}), r3 = make_vector({-1, -2});
    return Fan::from_cones(2, {{r1, r2}, {r2, r3}, {r3, r1}});
  }
  if (base == "cone_over_square") {
    no_param();
    return Fan::from_cones(3, {{make_vector({1, 0, 1}), make_vector({0, 1, 1}), make_vector({-1, 0, 1}),
                                make_vector({0, -1, 1})}});
  }
  if (base == "a1_surface") {
    no_param();
    return Fan::from_cones(2, {{make_vector({1, 0}), make_vector({1, 2})}});
  }
  throw Error(ErrorKind::UnknownName, "unknown builtin fan \"" + std::string(name) + "\"");
}

std::vector<std::string> corpus_fan_names() {
  return {"affine:1",  "affine:2",      "affine:3",     "projective_space:1", "projective_space:2", "p1xp1",
          "hirzebruch:1", "hirzebruch:2", "weighted_p112", "a1_surface",         "cone_over_square"};
}

Fan load_fan(std::string_view spec, std::vector<std::string>* warnings) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.substr(0, prefix.size()) == prefix) return builtin_fan(spec.substr(prefix.size()));
  std::ifstream in{std::string(spec), std::ios::binary};
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open fan file \"" + std::string(spec) + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fan(buf.str(), warnings);
}

}  // namespace toric_ic
