#include "gtl/io.hpp"

#include <fstream>
#include <sstream>

namespace gtl {

namespace {

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
  return doc.at(name);
}

std::size_t natural(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw FormatError(std::string("field '") + name + "' must be a natural number");
  return v.get<std::size_t>();
}

std::size_t naturalValue(const Json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw FormatError(what + " must be a natural number");
  return v.get<std::size_t>();
}

Rational rationalValue(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return parseRational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("truth values must be \"num/den\" strings or integers");
}

PeriodicFlow flowFromJson(const Json& doc) {
  try {
    return PeriodicFlow(natural(doc, "states"), natural(doc, "loopback"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

void requireKind(const Json& doc, const char* kind) {
  const Json& k = field(doc, "kind");
  if (k != kind) throw FormatError(std::string("expected a model of kind '") + kind + "'");
}

std::pair<std::size_t, std::size_t> pairValue(const Json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2) throw FormatError(what + " entries must be pairs");
  return {naturalValue(v[0], what), naturalValue(v[1], what)};
}

Formula formulaValue(const Json& v) {
  if (!v.is_string()) throw FormatError("formulas must be strings");
  return parse(v.get<std::string>());
}

}  // namespace

Json readJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void writeTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << text;
}

void writeJsonFile(const std::filesystem::path& path, const Json& doc) { writeTextFile(path, doc.dump(2) + "\n"); }

RealModel realModelFromJson(const Json& doc) {
  requireKind(doc, "real");
  RealModel m;
  m.flow = flowFromJson(doc);
  const Json& val = field(doc, "valuation");
  if (!val.is_object()) throw FormatError("'valuation' must be an object");
  for (const auto& [name, values] : val.items()) {
    if (!values.is_array()) throw FormatError("valuation of '" + name + "' must be an array");
    auto& row = m.valuation[name];
    for (const auto& v : values) row.push_back(rationalValue(v));
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return m;
}

Json toJson(const RealModel& m) {
  Json val = Json::object();
  for (const auto& [name, values] : m.valuation) {
    Json row = Json::array();
    for (const auto& v : values) row.push_back(formatRational(v));
    val[name] = row;
  }
  return Json{{"kind", "real"}, {"states", m.flow.states()}, {"loopback", m.flow.loopback()}, {"valuation", val}};
}

BiModel biModelFromJson(const Json& doc) {
  requireKind(doc, "bi");
  BiModel m;
  m.worlds = natural(doc, "worlds");
  if (m.worlds == 0) throw FormatError("a model needs at least one world");
  m.flow = flowFromJson(doc);
  const Json& val = field(doc, "valuation");
  if (!val.is_object()) throw FormatError("'valuation' must be an object");
  for (const auto& [name, cells] : val.items()) {
    if (!cells.is_array()) throw FormatError("valuation of '" + name + "' must be an array");
    WorldStateSet set(m.worlds, m.flow.states());
    for (const auto& c : cells) {
      const auto [w, t] = pairValue(c, "valuation of '" + name + "'");
      if (w >= m.worlds || t >= m.flow.states()) throw FormatError("valuation of '" + name + "' out of range");
      set.set(w, t);
    }
    m.valuation[name] = std::move(set);
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return m;
}

Json toJson(const BiModel& m) {
  Json val = Json::object();
  for (const auto& [name, set] : m.valuation) {
    Json cells = Json::array();
    for (std::size_t t = 0; t < m.flow.states(); ++t) {
      for (std::size_t w = 0; w < m.worlds; ++w) {
        if (set.contains(w, t)) cells.push_back(Json::array({w, t}));
      }
    }
    val[name] = cells;
  }
  return Json{{"kind", "bi"},
              {"worlds", m.worlds},
              {"states", m.flow.states()},
              {"loopback", m.flow.loopback()},
              {"valuation", val}};
}

bool isBiModelDocument(const Json& doc) {
  const Json& k = field(doc, "kind");
  if (k == "bi") return true;
  if (k == "real") return false;
  throw FormatError("'kind' must be \"real\" or \"bi\"");
}

Quasimodel quasimodelFromJson(const Json& doc) {
  const Json& sig = field(doc, "sigma");
  if (!sig.is_array()) throw FormatError("'sigma' must be an array");
  std::vector<Formula> listed;
  for (const auto& s : sig) listed.push_back(formulaValue(s));
  Quasimodel q;
  q.sigma = Closure(listed);
  if (q.sigma.size() != listed.size()) throw FormatError("'sigma' must be closed under subformulas, without repeats");
  std::vector<std::size_t> position(listed.size());
  for (std::size_t i = 0; i < listed.size(); ++i) position[i] = q.sigma.indexOf(listed[i]);

  const Json& worlds = field(doc, "worlds");
  if (!worlds.is_array()) throw FormatError("'worlds' must be an array");
  for (const auto& w : worlds) {
    QWorld qw;
    qw.id = natural(w, "id");
    qw.component = natural(w, "component");
    qw.rank = natural(w, "rank");
    const Json& label = field(w, "label");
    if (!label.is_array()) throw FormatError("'label' must be an array of sigma indices");
    for (const auto& i : label) {
      const std::size_t k = naturalValue(i, "label index");
      if (k >= listed.size()) throw FormatError("label index out of range");
      qw.label |= bit(position[k]);
    }
    q.worlds.push_back(qw);
  }
  const Json& rel = field(doc, "rel");
  if (!rel.is_array()) throw FormatError("'rel' must be an array");
  for (const auto& r : rel) {
    const auto [a, b] = pairValue(r, "'rel'");
    const auto ia = q.indexOfId(a), ib = q.indexOfId(b);
    if (!ia || !ib) throw FormatError("'rel' mentions an unknown world id");
    q.rel.emplace_back(*ia, *ib);
  }
  return q;
}

Json toJson(const Quasimodel& q) {
  Json sigma = Json::array();
  for (const auto& f : q.sigma.formulas()) sigma.push_back(print(f));
  Json worlds = Json::array();
  for (const auto& w : q.worlds) {
    Json label = Json::array();
    for (std::size_t i = 0; i < q.sigma.size(); ++i) {
      if (has(w.label, i)) label.push_back(i);
    }
    worlds.push_back(Json{{"id", w.id}, {"component", w.component}, {"rank", w.rank}, {"label", label}});
  }
  Json rel = Json::array();
  for (const auto& [a, b] : q.rel) rel.push_back(Json::array({q.worlds[a].id, q.worlds[b].id}));
  return Json{{"sigma", sigma}, {"worlds", worlds}, {"rel", rel}};
}

Witness witnessFromJson(const Json& doc) {
  Witness w;
  w.formula = formulaValue(field(doc, "formula"));
  w.pivot = natural(doc, "pivot");
  const Closure sigma(w.formula);
  const Json& moments = field(doc, "moments");
  if (!moments.is_array()) throw FormatError("'moments' must be an array");
  for (const auto& m : moments) {
    if (!m.is_array()) throw FormatError("each moment must be an array of types");
    Moment moment;
    for (const auto& t : m) {
      if (!t.is_array()) throw FormatError("each type must be an array of formulas");
      std::vector<std::string> members;
      for (const auto& s : t) members.push_back(print(formulaValue(s)));
      try {
        moment.chain.push_back(typeFromMembers(sigma, members));
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
      }
    }
    w.moments.push_back(std::move(moment));
  }
  const Json& relations = field(doc, "relations");
  if (!relations.is_array()) throw FormatError("'relations' must be an array");
  if (relations.size() + 1 != w.moments.size()) throw FormatError("need one relation between consecutive moments");
  for (std::size_t j = 0; j < relations.size(); ++j) {
    const auto& r = relations[j];
    if (!r.is_array()) throw FormatError("each relation must be an array of pairs");
    ConvexRelation rel(w.moments[j].size(), w.moments[j + 1].size());
    for (const auto& p : r) {
      const auto [s, t] = pairValue(p, "relation");
      if (s >= rel.sourceLen() || t >= rel.targetLen()) throw FormatError("relation pair out of range");
      rel.insert(s, t);
    }
    w.relations.push_back(std::move(rel));
  }
  return w;
}

Json toJson(const Witness& w) {
  const Closure sigma(w.formula);
  Json moments = Json::array();
  for (const auto& m : w.moments) {
    Json chain = Json::array();
    for (TypeSet t : m.chain) chain.push_back(typeMembers(sigma, t));
    moments.push_back(chain);
  }
  Json relations = Json::array();
  for (const auto& r : w.relations) {
    Json pairs = Json::array();
    for (const auto& [s, t] : r.pairs()) pairs.push_back(Json::array({s, t}));
    relations.push_back(pairs);
  }
  return Json{{"formula", print(w.formula)}, {"pivot", w.pivot}, {"moments", moments}, {"relations", relations}};
}

Json toJson(const FiniteGrid& g, const Quasimodel& q) {
  Json paths = Json::array();
  for (const auto& p : g.paths) {
    Json ids = Json::array();
    for (std::size_t w : p.worlds) ids.push_back(q.worlds[w].id);
    paths.push_back(Json{{"id", p.id}, {"worlds", ids}});
  }
  Json queue = Json::array();
  for (const auto& d : g.queue) {
    Json entry{{"kind", defectKindName(d.kind)}, {"path", d.path}};
    if (d.formula >= 0) entry["formula"] = print(q.sigma[static_cast<std::size_t>(d.formula)]);
    if (d.kind == DefectKind::Implication || d.kind == DefectKind::Coimplication) entry["position"] = d.position;
    entry["enqueuedAt"] = d.enqueuedAt;
    queue.push_back(entry);
  }
  return Json{{"steps", g.steps}, {"length", g.length()}, {"paths", paths}, {"queue", queue}, {"trace", g.trace}};
}

std::string toDot(const Quasimodel& q) {
  std::ostringstream os;
  os << "digraph quasimodel {\n  node [shape=box];\n";
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < q.size(); ++i) components[q.worlds[i].component].push_back(i);
  for (const auto& [c, members] : components) {
    os << "  subgraph cluster_" << c << " {\n    label=\"component " << c << "\";\n";
    for (std::size_t i : members) {
      std::string text;
      for (const auto& m : typeMembers(q.sigma, q.worlds[i].label)) {
        if (!text.empty()) text += "\\n";
        for (char ch : m) {
          if (ch == '"' || ch == '\\') text += '\\';
          text += ch;
        }
      }
      os << "    w" << q.worlds[i].id << " [label=\"w" << q.worlds[i].id << " (rank " << q.worlds[i].rank << ")"
         << (text.empty() ? "" : "\\n") << text << "\"];\n";
    }
    auto sorted = members;
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return q.worlds[a].rank < q.worlds[b].rank; });
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      os << "    w" << q.worlds[sorted[k - 1]].id << " -> w" << q.worlds[sorted[k]].id << " [style=dashed, arrowhead=none];\n";
    }
    os << "  }\n";
  }
  for (const auto& [a, b] : q.rel) os << "  w" << q.worlds[a].id << " -> w" << q.worlds[b].id << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace gtl
