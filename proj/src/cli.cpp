#include "concord/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "concord/dsl.hpp"
#include "concord/errors.hpp"
#include "concord/gadgets.hpp"
#include "concord/midground.hpp"
#include "concord/oracle.hpp"
#include "concord/reasoner.hpp"

namespace concord::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool p5 = false;
  bool serial = false;
  bool subsets = false;
  std::string config;
  std::optional<std::size_t> max_vars_hier;
  std::optional<std::size_t> max_language;
  std::optional<long> timeout_ms;
  std::string file;
  std::string stmt;
  std::string stakeholder;
  std::string language;
  std::string gadget;
  std::string set;
  std::int64_t target = 0;
  std::string subop;
};

Limits load_limits(const Options& o) {
  Limits lim;
  if (!o.config.empty()) {
    std::ifstream f(o.config);
    if (!f) throw InputError("cannot read config file '" + o.config + "'");
    std::string line;
    for (int n = 1; std::getline(f, line); ++n) {
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      const std::string where = o.config + ":" + std::to_string(n);
      if (eq == std::string::npos) throw InputError(where + ": expected key=value");
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      long long x = 0;
      try {
        std::size_t used = 0;
        x = std::stoll(val, &used);
        if (used != val.size() || x < 0) throw std::invalid_argument(val);
      } catch (const std::exception&) {
        throw InputError(where + ": '" + val + "' is not a non-negative integer");
      }
      if (key == "max_vars_hier")
        lim.max_vars_hier = static_cast<std::size_t>(x);
      else if (key == "max_language")
        lim.max_language = static_cast<std::size_t>(x);
      else if (key == "timeout_ms")
        lim.timeout = std::chrono::milliseconds(x);
      else
        throw InputError(where + ": unknown key '" + key + "'");
    }
  }
  if (o.max_vars_hier) lim.max_vars_hier = *o.max_vars_hier;
  if (o.max_language) lim.max_language = *o.max_language;
  if (o.timeout_ms) lim.timeout = std::chrono::milliseconds(*o.timeout_ms);
  lim.parallel = !o.serial;
  return lim;
}

std::string read_source(const std::string& file, std::istream& in) {
  std::ostringstream ss;
  if (file == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(file, std::ios::binary);
    if (!f) throw InputError("cannot read '" + file + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

struct Loaded {
  dsl::Document doc;
  const Profile& profile() const { return doc.profile; }
};

Loaded load(const Options& o, std::istream& in) {
  const std::string text = read_source(o.file, in);
  try {
    return {dsl::parse(text)};
  } catch (const dsl::ParseError& e) {
    throw InputError((o.file == "-" ? std::string("<stdin>") : o.file) + ":" +
                     e.diagnostic().str());
  }
}

Json statements_json(const StatementSet& set) {
  Json a = Json::array();
  for (const auto& s : set) a.push_back(dsl::render(s));
  return a;
}

Json report_json(const PostulateReport& r) {
  Json j;
  const std::pair<const char*, const PostulateVerdict*> rows[] = {
      {"p1", &r.p1}, {"p2", &r.p2}, {"p3", &r.p3}, {"p4", &r.p4}, {"p5", &r.p5}};
  for (const auto& [name, v] : rows) {
    Json e;
    e["verdict"] = to_string(v->verdict);
    e["offending"] = statements_json(v->offending);
    j[name] = e;
  }
  return j;
}

Json base(const std::string& command) {
  Json j;
  j["command"] = command;
  j["verdict"] = nullptr;
  j["witnesses"] = Json::array();
  j["grounds"] = Json::array();
  j["postulates"] = Json::object();
  j["stats"] = Json::object();
  j["details"] = Json::object();
  return j;
}

std::string yes_no(bool b, const char* yes, const char* no) { return b ? yes : no; }

void emit(const Options& o, std::ostream& out, const Json& j, const std::string& text) {
  if (o.json)
    out << j.dump(2) << "\n";
  else
    out << text;
}

const Stakeholder& find_stakeholder(const Profile& p, const std::string& name) {
  for (const auto& sh : p.stakeholders)
    if (sh.name == name) return sh;
  throw InputError("no stakeholder named '" + name + "'");
}

// --- commands ---------------------------------------------------------------

void cmd_check(const Options& o, std::istream& in, std::ostream& out) {
  const auto l = load(o, in);
  const auto& p = l.profile();
  Reasoner r(p.space, p.combiner, p.model_class, load_limits(o));
  Json j = base("check");
  std::ostringstream txt;
  Json shs = Json::array();
  for (const auto& sh : p.stakeholders) {
    const auto res = r.consistent(sh.statements);
    Json e;
    e["name"] = sh.name;
    e["consistent"] = res.consistent;
    e["witness"] = res.witness ? Json(render(*res.witness, p.space)) : Json(nullptr);
    shs.push_back(e);
    txt << sh.name << ": " << yes_no(res.consistent, "consistent", "inconsistent");
    if (res.witness) txt << ", witness " << render(*res.witness, p.space);
    txt << "\n";
  }
  const auto res = r.consistent(p.union_statements());
  j["verdict"] = res.consistent;
  if (res.witness) j["witnesses"].push_back(render(*res.witness, p.space));
  j["stats"] = {{"nodes", res.stats.nodes}, {"levels", res.stats.levels}};
  j["details"]["model_class"] = to_string(p.model_class);
  j["details"]["stakeholders"] = shs;
  txt << "union: " << yes_no(res.consistent, "consistent", "inconsistent");
  if (res.witness) txt << ", witness " << render(*res.witness, p.space);
  txt << "\n";
  emit(o, out, j, txt.str());
}

void cmd_entails(const Options& o, std::istream& in, std::ostream& out) {
  const auto l = load(o, in);
  const auto& p = l.profile();
  Reasoner r(p.space, p.combiner, p.model_class, load_limits(o));
  const Statement s = dsl::parse_statement(o.stmt, p.space);
  const StatementSet gamma =
      o.stakeholder.empty() ? p.union_statements() : find_stakeholder(p, o.stakeholder).statements;
  const bool v = r.entails(gamma, s);
  Json j = base("entails");
  j["verdict"] = v;
  j["details"]["premises"] = o.stakeholder.empty() ? "union" : o.stakeholder;
  j["details"]["statement"] = dsl::render(s);
  emit(o, out, j,
       (o.stakeholder.empty() ? std::string("union") : o.stakeholder) +
           yes_no(v, " entails ", " does not entail ") + dsl::render(s) + "\n");
}

void cmd_classify(const Options& o, std::istream& in, std::ostream& out) {
  const auto l = load(o, in);
  const auto& p = l.profile();
  Reasoner r(p.space, p.combiner, p.model_class, load_limits(o));
  const Statement s = dsl::parse_statement(o.stmt, p.space);
  const Triviality t = r.classify(s);
  Json j = base("classify");
  j["verdict"] = to_string(t);
  j["details"]["statement"] = dsl::render(s);
  j["details"]["model_class"] = to_string(p.model_class);
  emit(o, out, j, dsl::render(s) + ": " + to_string(t) + "\n");
}

void cmd_mg_exists(const Options& o, std::istream& in, std::ostream& out) {
  const auto l = load(o, in);
  const auto& p = l.profile();
  const Limits lim = load_limits(o);
  const ExistenceResult res = p.model_class == ModelClass::kLexicographic
                                  ? exists_mg_lex(p, lim)
                                  : exists_mg_hier(p, lim);
  Json j = base("mg-exists");
  j["verdict"] = res.exists;
  if (res.exists) j["grounds"].push_back(statements_json(res.witness));
  j["stats"] = {{"pair_checks", res.pair_checks},
                {"entailment_checks", res.entailment_checks}};
  j["details"]["union_consistent"] = res.union_consistent;
  j["details"]["passing"] = statements_json(res.passing);
  std::ostringstream txt;
  txt << "middle ground: " << yes_no(res.exists, "exists", "none") << "\n";
  if (res.union_consistent) txt << "the union is consistent\n";
  for (const auto& s : res.witness) txt << "  " << dsl::render(s) << "\n";
  emit(o, out, j, txt.str());
}

LanguageKind language_kind(const Options& o, const Profile& p) {
  if (o.language.empty())
    return p.model_class == ModelClass::kLexicographic ? LanguageKind::kBinary
                                                       : LanguageKind::kCandidates;
  if (o.language == "full") return LanguageKind::kFull;
  if (o.language == "binary") return LanguageKind::kBinary;
  if (o.language == "candidates") return LanguageKind::kCandidates;
  throw InputError("unknown language '" + o.language + "'");
}

void cmd_mg_construct(const Options& o, std::istream& in, std::ostream& out) {
  const auto l = load(o, in);
  const auto& p = l.profile();
  const Limits lim = load_limits(o);
  const LanguageKind kind = language_kind(o, p);
  const StatementSet lang = build_language(p, kind, lim);
  ConstructStats st;
  MiddleGroundSet mg = construct_mgs(p, lang, lim, &st);
  mg.exhaustive = kind == LanguageKind::kFull ||
                  (p.model_class == ModelClass::kLexicographic && kind == LanguageKind::kBinary);
  Json j = base("mg-construct");
  j["verdict"] = !mg.empty();
  Json reports = Json::array();
  std::ostringstream txt;
  txt << mg.grounds.size() << " middle ground" << (mg.grounds.size() == 1 ? "" : "s")
      << " (" << to_string(kind) << " language, " << lang.size() << " statements)\n";
  for (std::size_t g = 0; g < mg.grounds.size(); ++g) {
    j["grounds"].push_back(statements_json(mg.grounds[g]));
    const auto rep = check_postulates(mg.grounds[g], p, o.p5, lim, &lang);
    reports.push_back(report_json(rep));
    txt << "ground " << g + 1 << ":";
    for (const char* name : {"p1", "p2", "p3", "p4", "p5"})
      txt << " " << name << "=" << reports.back()[name]["verdict"].get<std::string>();
    txt << "\n";
    for (const auto& s : mg.grounds[g]) txt << "  " << dsl::render(s) << "\n";
  }
  j["postulates"]["grounds"] = reports;
  j["stats"] = {{"language", st.language}, {"psi1", st.psi1},   {"psi3", st.psi3},
                {"psi4", st.psi4},         {"classes", st.classes}, {"nodes", st.nodes}};
  j["details"]["language"] = to_string(kind);
  j["details"]["exhaustive"] = mg.exhaustive;
  emit(o, out, j, txt.str());
}

std::vector<std::int64_t> parse_set(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--set: '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw InputError("--set is empty");
  return out;
}

void cmd_gadget(const Options& o, std::ostream& out) {
  Profile p = [&] {
    if (o.gadget == "subset-sum") return subset_sum_gadget(parse_set(o.set), o.target);
    if (o.gadget == "nonuniqueness") return nonuniqueness_fixture();
    if (o.gadget == "nonexistence") return nonexistence_fixture();
    if (o.gadget == "moral-machine") return moral_machine_fixture();
    throw InputError("unknown gadget '" + o.gadget + "'");
  }();
  const std::string text = dsl::render(p);
  Json j = base("gadget");
  j["details"]["name"] = o.gadget;
  j["details"]["document"] = text;
  emit(o, out, j, text);
}

void cmd_oracle(const Options& o, std::istream& in, std::ostream& out) {
  const auto l = load(o, in);
  const auto& p = l.profile();
  const Limits lim = load_limits(o);
  Json j = base("oracle " + o.subop);
  std::ostringstream txt;
  if (o.subop == "consistent") {
    Json shs = Json::array();
    for (const auto& sh : p.stakeholders) {
      const bool c = oracle::brute_consistent(sh.statements, p.space, p.combiner, p.model_class);
      shs.push_back({{"name", sh.name}, {"consistent", c}});
      txt << sh.name << ": " << yes_no(c, "consistent", "inconsistent") << "\n";
    }
    const bool c =
        oracle::brute_consistent(p.union_statements(), p.space, p.combiner, p.model_class);
    j["verdict"] = c;
    j["details"]["stakeholders"] = shs;
    txt << "union: " << yes_no(c, "consistent", "inconsistent") << "\n";
  } else if (o.subop == "entails") {
    const Statement s = dsl::parse_statement(o.stmt, p.space);
    const StatementSet gamma = o.stakeholder.empty()
                                   ? p.union_statements()
                                   : find_stakeholder(p, o.stakeholder).statements;
    const bool v = oracle::brute_entails(gamma, s, p.space, p.combiner, p.model_class);
    j["verdict"] = v;
    j["details"]["statement"] = dsl::render(s);
    txt << yes_no(v, "entailed", "not entailed") << "\n";
  } else if (o.subop == "mgs") {
    const LanguageKind kind = o.language.empty() && p.model_class == ModelClass::kHierarchical
                                  ? LanguageKind::kFull
                                  : language_kind(o, p);
    const StatementSet lang = build_language(p, kind, lim);
    const auto mg = o.subsets ? oracle::brute_mgs_subsets(p, lang) : oracle::brute_mgs(p, lang);
    j["verdict"] = !mg.empty();
    for (const auto& g : mg.grounds) j["grounds"].push_back(statements_json(g));
    j["details"]["language"] = to_string(kind);
    txt << mg.grounds.size() << " middle ground" << (mg.grounds.size() == 1 ? "" : "s") << "\n";
    for (std::size_t g = 0; g < mg.grounds.size(); ++g) {
      txt << "ground " << g + 1 << ":\n";
      for (const auto& s : mg.grounds[g]) txt << "  " << dsl::render(s) << "\n";
    }
  } else if (o.subop == "models") {
    const auto u = oracle::ModelUniverse::of(p);
    Json shs = Json::array();
    txt << "distinct orders: " << u.size() << "\n";
    for (const auto& sh : p.stakeholders) {
      const auto n = u.models_of(sh.statements).count();
      shs.push_back({{"name", sh.name}, {"models", n}});
      txt << sh.name << ": " << n << "\n";
    }
    j["verdict"] = u.size();
    j["details"]["stakeholders"] = shs;
  } else {
    throw InputError("unknown oracle operation '" + o.subop + "'");
  }
  emit(o, out, j, txt.str());
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Consistency, entailment and middle grounds for preference statements",
               "concord"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit JSON");
  app.add_option("--config", o.config, "key=value file with max_vars_hier, max_language, timeout_ms");
  app.add_option("--max-vars-hier", o.max_vars_hier, "Variable cap for hierarchical search");
  app.add_option("--max-language", o.max_language, "Statement cap for scanned languages");
  app.add_option("--timeout-ms", o.timeout_ms, "Search budget in milliseconds (0: none)");
  app.add_flag("--serial", o.serial, "Disable parallel kernels");

  auto* check = app.add_subcommand("check", "Consistency of each stakeholder and of the union");
  check->add_option("file", o.file, "Statement file, - for stdin")->required();

  auto* ent = app.add_subcommand("entails", "Does the union (or one stakeholder) entail a statement");
  ent->add_option("file", o.file)->required();
  ent->add_option("--stmt", o.stmt, "e.g. \"(1,4,0) > (2,3,3)\"")->required();
  ent->add_option("--stakeholder", o.stakeholder, "Premises from this stakeholder only");

  auto* cls = app.add_subcommand("classify", "Tautology, contradiction or non-trivial");
  cls->add_option("file", o.file)->required();
  cls->add_option("--stmt", o.stmt)->required();

  auto* mge = app.add_subcommand("mg-exists", "Does a middle ground exist");
  mge->add_option("file", o.file)->required();

  auto* mgc = app.add_subcommand("mg-construct", "Construct middle grounds");
  mgc->add_option("file", o.file)->required();
  mgc->add_option("--language", o.language, "full, binary or candidates")
      ->check(CLI::IsMember({"full", "binary", "candidates"}));
  mgc->add_flag("--p5", o.p5, "Check P5 against the model universe");

  auto* gad = app.add_subcommand("gadget", "Print a fixture in the statement format");
  gad->add_option("name", o.gadget, "subset-sum, nonuniqueness, nonexistence, moral-machine")
      ->required();
  gad->add_option("--set", o.set, "Comma-separated positive integers");
  gad->add_option("--target", o.target, "Positive target");

  auto* ora = app.add_subcommand("oracle", "Brute-force reference answers");
  ora->add_option("op", o.subop, "consistent, entails, mgs or models")->required();
  ora->add_option("file", o.file)->required();
  ora->add_option("--stmt", o.stmt);
  ora->add_option("--stakeholder", o.stakeholder);
  ora->add_option("--language", o.language)
      ->check(CLI::IsMember({"full", "binary", "candidates"}));
  ora->add_flag("--subsets", o.subsets, "Quantify over every subset of the language");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) cmd_check(o, in, out);
    else if (*ent) cmd_entails(o, in, out);
    else if (*cls) cmd_classify(o, in, out);
    else if (*mge) cmd_mg_exists(o, in, out);
    else if (*mgc) cmd_mg_construct(o, in, out);
    else if (*gad) cmd_gadget(o, out);
    else if (*ora) cmd_oracle(o, in, out);
  } catch (const CapacityError& e) {
    err << "concord: capacity: " << e.what() << "\n";
    return kIndeterminate;
  } catch (const Indeterminate& e) {
    err << "concord: indeterminate: " << e.what() << "\n";
    return kIndeterminate;
  } catch (const InputError& e) {
    err << "concord: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace concord::cli
