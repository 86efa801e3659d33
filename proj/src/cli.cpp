#include "gtl/cli.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "gtl/decision.hpp"
#include "gtl/io.hpp"
#include "gtl/ltl.hpp"
#include "gtl/quasimodel.hpp"
#include "gtl/unwind.hpp"

namespace gtl {

namespace {

struct Outcome {
  int code = kExitOk;
  Json result = Json::object();
  std::vector<std::string> lines;  // human rendering of result
  std::vector<std::string> diagnostics;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  int threads = 0;

  std::string formula;
  std::string file;
  std::string output;
  std::string dot;
  std::string witnessOut;
  std::size_t maxSigma = 12;
  std::optional<std::size_t> at;
  std::size_t start = 0;
  std::size_t budget = 0;
  bool countOnly = false;
};

Formula parseArgument(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
}

std::string yesNo(bool b) { return b ? "yes" : "no"; }

std::string typeText(const Closure& sigma, TypeSet t) {
  std::string s = "{";
  for (const auto& m : typeMembers(sigma, t)) s += (s.size() > 1 ? ", " : "") + m;
  return s + "}";
}

// Writes doc to opt.output when given, otherwise returns it inline.
void emitDocument(const Options& opt, Outcome& o, const Json& doc, const char* key) {
  if (!opt.output.empty()) {
    writeJsonFile(opt.output, doc);
    o.result["output"] = opt.output;
    o.lines.push_back("written to " + opt.output);
  } else {
    o.result[key] = doc;
    o.lines.push_back(doc.dump(2));
  }
}

Outcome runCheck(const Options& opt) {
  const Formula f = parseArgument(opt.formula);
  DecideOptions d;
  d.maxSigma = opt.maxSigma;
  d.threads = opt.threads;
  const Decision dec = decide(f, d);
  Outcome o;
  o.code = dec.valid ? kExitOk : kExitFailed;
  const std::string status = dec.valid ? "VALID" : "FALSIFIABLE";
  o.result["formula"] = print(f);
  o.result["status"] = status;
  const auto& s = dec.stats;
  o.result["stats"] = Json{{"sigma", s.sigma},         {"moments", s.moments},       {"edges", s.edges},
                           {"reachable", s.reachable}, {"candidates", s.candidates}, {"loopStates", s.loopStates}};
  o.lines.push_back(status);
  o.lines.push_back("closure " + std::to_string(s.sigma) + ", moments " + std::to_string(s.moments) + ", edges " +
                    std::to_string(s.edges) + ", reachable " + std::to_string(s.reachable) + ", candidates " +
                    std::to_string(s.candidates) + ", loop states " + std::to_string(s.loopStates));
  if (dec.witness) {
    o.result["loopLength"] = dec.witness->loopLength();
    o.lines.push_back("lasso of " + std::to_string(dec.witness->moments.size()) + " moments, loop length " +
                      std::to_string(dec.witness->loopLength()));
    if (!opt.witnessOut.empty()) {
      writeJsonFile(opt.witnessOut, toJson(*dec.witness));
      o.result["witness"] = opt.witnessOut;
      o.lines.push_back("witness written to " + opt.witnessOut);
    }
  }
  return o;
}

Outcome runVerifyWitness(const Options& opt) {
  const Formula f = parseArgument(opt.formula);
  const Witness w = witnessFromJson(readJsonFile(opt.file));
  const auto check = verifyWitness(f, w);
  Outcome o;
  o.code = check.ok ? kExitOk : kExitFailed;
  o.result["verified"] = check.ok;
  o.lines.push_back(check.ok ? "VERIFIED" : "FAILED");
  o.diagnostics = check.diagnostics;
  return o;
}

Outcome runEvalReal(const Options& opt) {
  const Formula f = parseArgument(opt.formula);
  const RealModel m = realModelFromJson(readJsonFile(opt.file));
  Outcome o;
  if (opt.at) {
    if (*opt.at >= m.flow.states()) throw InputError("--at is not a state of the model");
    const auto v = formatRational(evalReal(m, f, *opt.at));
    o.result = Json{{"state", *opt.at}, {"value", v}};
    o.lines.push_back(v);
    return o;
  }
  Json values = Json::array();
  for (std::size_t t = 0; t < m.flow.states(); ++t) {
    const auto v = formatRational(evalReal(m, f, t));
    values.push_back(v);
    o.lines.push_back("state " + std::to_string(t) + ": " + v);
  }
  const bool global = isGloballyTrue(m, f);
  o.result = Json{{"values", values}, {"globallyTrue", global}};
  o.lines.push_back("globally true: " + yesNo(global));
  return o;
}

Outcome runEvalBi(const Options& opt) {
  const Formula f = parseArgument(opt.formula);
  const BiModel m = biModelFromJson(readJsonFile(opt.file));
  const auto set = evalBi(m, f);
  Outcome o;
  Json cells = Json::array();
  for (std::size_t t = 0; t < m.flow.states(); ++t) {
    std::string row;
    for (std::size_t w = 0; w < m.worlds; ++w) {
      if (set.contains(w, t)) cells.push_back(Json::array({w, t}));
      row += set.contains(w, t) ? '1' : '0';
    }
    o.lines.push_back("state " + std::to_string(t) + ": " + row);
  }
  const bool global = set.full();
  o.result = Json{{"true", cells}, {"globallyTrue", global}};
  o.lines.push_back("globally true: " + yesNo(global));
  return o;
}

Outcome runTranslate(const Options& opt) {
  const auto t = print(translate(parseArgument(opt.formula)));
  Outcome o;
  o.result["formula"] = t;
  o.lines.push_back(t);
  return o;
}

Outcome runQuotient(const Options& opt) {
  const Formula f = parseArgument(opt.formula);
  const BiModel m = biModelFromJson(readJsonFile(opt.file));
  const Quasimodel q = quotient(m, Closure(f));
  std::size_t components = 0;
  for (const auto& w : q.worlds) components = std::max(components, w.component + 1);
  Outcome o;
  o.result = Json{{"worlds", q.size()},
                  {"components", components},
                  {"height", q.height()},
                  {"valid", validateQuasimodel(q).valid()},
                  {"falsifies", q.falsifies(f)}};
  o.lines.push_back(std::to_string(q.size()) + " worlds in " + std::to_string(components) + " components, height " +
                    std::to_string(q.height()) + ", falsifies: " + yesNo(q.falsifies(f)));
  if (!opt.dot.empty()) {
    writeTextFile(opt.dot, toDot(q));
    o.result["dot"] = opt.dot;
    o.lines.push_back("dot written to " + opt.dot);
  }
  emitDocument(opt, o, toJson(q), "quasimodel");
  return o;
}

Outcome runUnwind(const Options& opt) {
  const Quasimodel q = quasimodelFromJson(readJsonFile(opt.file));
  const auto verdict = validateQuasimodel(q);
  if (!verdict.valid()) {
    Outcome o;
    o.code = kExitUsage;
    o.result = nullptr;
    o.diagnostics = verdict.failures;
    o.diagnostics.insert(o.diagnostics.begin(), "input is not a valid quasimodel");
    return o;
  }
  const auto start = q.indexOfId(opt.start);
  if (!start) throw InputError("--start is not a world id");
  const FiniteGrid g = unwindBounded(q, *start, opt.budget);
  Outcome o;
  o.result = Json{{"steps", g.steps}, {"paths", g.paths.size()}, {"length", g.length()}, {"pending", g.queue.size()}};
  o.lines.push_back(std::to_string(g.steps) + " steps: " + std::to_string(g.paths.size()) + " paths of length " +
                    std::to_string(g.length()) + ", " + std::to_string(g.queue.size()) + " defects pending");
  emitDocument(opt, o, toJson(g, q), "grid");
  return o;
}

Outcome runMoments(const Options& opt) {
  const Closure sigma(parseArgument(opt.formula));
  MomentLimits limits;
  limits.maxSigma = opt.maxSigma;
  const auto moments = enumerateMoments(sigma, limits);
  Outcome o;
  o.result["count"] = moments.size();
  if (opt.countOnly) {
    o.lines.push_back(std::to_string(moments.size()));
    return o;
  }
  Json list = Json::array();
  for (const auto& m : moments) {
    Json chain = Json::array();
    std::string line;
    for (TypeSet t : m.chain) {
      chain.push_back(typeMembers(sigma, t));
      line += (line.empty() ? "" : " < ") + typeText(sigma, t);
    }
    list.push_back(chain);
    o.lines.push_back(line);
  }
  o.result["moments"] = list;
  o.lines.push_back(std::to_string(moments.size()) + " moments");
  return o;
}

Outcome runRealify(const Options& opt) {
  const Formula f = parseArgument(opt.formula);
  const RealModel r = realify(biModelFromJson(readJsonFile(opt.file)), Closure(f));
  Outcome o;
  o.lines.push_back("real model with " + std::to_string(r.flow.states()) + " states");
  emitDocument(opt, o, toJson(r), "model");
  return o;
}

Outcome runBify(const Options& opt) {
  const Formula f = parseArgument(opt.formula);
  const auto b = bify(realModelFromJson(readJsonFile(opt.file)), Closure(f));
  Outcome o;
  Json thresholds = Json::array();
  std::string text;
  for (const auto& t : b.thresholds) {
    thresholds.push_back(formatRational(t));
    text += (text.empty() ? "" : ", ") + formatRational(t);
  }
  o.result["thresholds"] = thresholds;
  o.lines.push_back("bi-relational model with " + std::to_string(b.model.worlds) + " worlds, thresholds " + text);
  emitDocument(opt, o, toJson(b.model), "model");
  return o;
}

void render(const Options& opt, const std::string& command, const Outcome& o, std::ostream& out, std::ostream& err) {
  if (opt.json) {
    out << Json{{"command", command}, {"result", o.result}, {"diagnostics", o.diagnostics}}.dump(2) << "\n";
    return;
  }
  for (const auto& l : o.lines) out << l << "\n";
  for (const auto& d : o.diagnostics) err << d << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Decision procedure and model tools for Goedel temporal logic", "gtl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", opt.json, "Machine-readable output envelope");
  app.add_option("--threads", opt.threads, "Worker threads for the decision search (0: default)");

  std::map<std::string, std::function<Outcome(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* help, Outcome (*fn)(const Options&)) {
    handlers[name] = fn;
    return app.add_subcommand(name, help);
  };

  auto* check = sub("check", "Decide validity; exit 0 if valid, 1 if falsifiable", runCheck);
  check->add_option("formula", opt.formula)->required();
  check->add_option("--emit-witness", opt.witnessOut, "Write the falsifiability witness here");
  check->add_option("--max-sigma", opt.maxSigma, "Refuse closures larger than this");

  auto* verify = sub("verify-witness", "Check a witness file; exit 0 if it verifies", runVerifyWitness);
  verify->add_option("witness", opt.file)->required();
  verify->add_option("--formula", opt.formula)->required();

  auto* evalReal = sub("eval-real", "Evaluate on a real-valued model", runEvalReal);
  evalReal->add_option("model", opt.file)->required();
  evalReal->add_option("formula", opt.formula)->required();
  evalReal->add_option("--at", opt.at, "Only this state");

  auto* evalBi = sub("eval-bi", "Evaluate on a bi-relational model", runEvalBi);
  evalBi->add_option("model", opt.file)->required();
  evalBi->add_option("formula", opt.formula)->required();

  auto* tr = sub("translate", "Goedel translation of a classical formula", runTranslate);
  tr->add_option("formula", opt.formula)->required();

  auto* quo = sub("quotient", "Quotient a bi-relational model into a quasimodel", runQuotient);
  quo->add_option("model", opt.file)->required();
  quo->add_option("formula", opt.formula)->required();
  quo->add_option("-o,--output", opt.output);
  quo->add_option("--dot", opt.dot, "Also write Graphviz here");

  auto* unw = sub("unwind", "Bounded defect-processing unwinding of a quasimodel", runUnwind);
  unw->add_option("quasimodel", opt.file)->required();
  unw->add_option("--start", opt.start, "World id of the seed path")->required();
  unw->add_option("--budget", opt.budget, "Defects to process")->required();
  unw->add_option("-o,--output", opt.output);

  auto* mom = sub("moments", "Enumerate the moments of a formula's closure", runMoments);
  mom->add_option("formula", opt.formula)->required();
  mom->add_flag("--count-only", opt.countOnly);
  mom->add_option("--max-sigma", opt.maxSigma, "Refuse closures larger than this");

  auto* rea = sub("realify", "Real-valued model agreeing with a bi-relational one", runRealify);
  rea->add_option("model", opt.file)->required();
  rea->add_option("formula", opt.formula)->required();
  rea->add_option("-o,--output", opt.output);

  auto* bif = sub("bify", "Bi-relational model agreeing with a real-valued one", runBify);
  bif->add_option("model", opt.file)->required();
  bif->add_option("formula", opt.formula)->required();
  bif->add_option("-o,--output", opt.output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (opt.json) {
      out << Json{{"command", nullptr}, {"result", nullptr}, {"diagnostics", {e.what()}}}.dump(2) << "\n";
    } else {
      err << e.what() << "\n" << "run with --help for usage\n";
    }
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome o;
  try {
    o = handlers.at(command)(opt);
  } catch (const std::exception& e) {
    // FormatError, ParseError, LimitExceeded and argument errors are all input problems
    o = Outcome{};
    o.code = kExitUsage;
    o.result = nullptr;
    o.diagnostics.push_back(e.what());
  }
  render(opt, command, o, out, err);
  return o.code;
}

}  // namespace gtl
