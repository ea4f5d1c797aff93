// Command-line frontend: analyze, laws, trace, fox, check.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nielsen/bicategory.hpp"
#include "nielsen/chain.hpp"
#include "nielsen/cw.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/io.hpp"
#include "nielsen/module_bicategory.hpp"

using namespace nielsen;
using io::Json;

namespace {

constexpr int exit_parse = 2;
constexpr int exit_validation = 3;
constexpr int exit_unsupported = 4;

std::string digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<int> parse_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(std::string(what) + ": \"" + item + "\" is not an integer");
    }
  }
  return out;
}

void render_text(std::ostream& os, const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(os, v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

struct Report {
  Json body;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Report(const std::string& command) { body = {{"schema", io::schema_version}, {"command", command}}; }

  void emit(const std::string& format) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    body["timing_ms"] = std::round(ms * 1000) / 1000;
    if (format == "text")
      render_text(std::cout, body, "");
    else
      std::cout << body.dump(2) << "\n";
  }
};

Json inputs(std::initializer_list<std::pair<const char*, std::string>> files) {
  Json out = Json::object();
  for (const auto& [name, path] : files)
    if (!path.empty()) out[name] = {{"path", path}, {"digest", digest(path)}};
  return out;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string complex, map, target, tree, zeta, mod_k, format = "json";
};

int run_analyze(const AnalyzeArgs& a) {
  Report report("analyze");
  report.body["inputs"] = inputs({{"complex", a.complex}, {"map", a.map}, {"target", a.target}, {"mod_k", a.mod_k}});
  CWComplex2 x = io::parse_complex(io::read_document(a.complex));
  GroupTarget t = io::parse_target(io::read_document(a.target));
  CWSelfMap f = io::parse_self_map(io::read_document(a.map), GroupRing::over(t.group));
  AnalysisOptions options;
  if (!a.tree.empty()) {
    std::vector<std::size_t> tree;
    for (int e : parse_list(a.tree, "--tree")) {
      if (e < 1) throw ParseError("--tree takes 1-based edge indices");
      tree.push_back(static_cast<std::size_t>(e - 1));
    }
    options.tree = tree;
  }
  if (!a.zeta.empty()) options.zeta = parse_list(a.zeta, "--zeta");
  std::optional<GroupHomomorphism> quotient;
  if (!a.mod_k.empty()) quotient = io::parse_quotient(io::read_document(a.mod_k), t.group);

  Analysis r = analyze(x, f, t, options);
  Json tree = Json::array();
  for (auto e : r.presentation.tree) tree.push_back(e + 1);
  report.body["choices"] = {{"tree", tree}, {"base", x.base}, {"zeta", io::to_json(r.lift.zeta)}};
  Json results = {{"L", io::to_json(r.lefschetz)},
                  {"R", io::to_json(r.reidemeister)},
                  {"N", r.nielsen ? Json(*r.nielsen) : Json()},
                  {"formal", !r.reidemeister.reduced()},
                  {"phi", r.lift.phi.describe()},
                  {"solved_top", r.lift.solved_top}};
  int code = 0;
  if (quotient) {
    ShadowElement projected = mod_k_project(r.reidemeister, *quotient);
    results["mod_k"] = {{"quotient", quotient->target().describe()},
                        {"R", io::to_json(projected)},
                        {"N", projected.nonzero_classes()},
                        {"L", io::to_json(projected.augment())}};
  } else if (!r.nielsen) {
    code = exit_unsupported;
  }
  report.body["results"] = results;
  report.emit(a.format);
  if (code) std::cerr << "error: semiconjugacy classes are not decidable for " << r.lift.phi.describe()
                      << "; rerun with --mod-k\n";
  return code;
}

// ---------------------------------------------------------------------------

struct LawsArgs {
  std::string instance, laws, format = "json";
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

std::optional<GroupRing> law_instance(const std::string& name) {
  if (name == "Z") return GroupRing::plain(CoefficientRing::integers());
  if (name == "Q") return GroupRing::plain(CoefficientRing::rationals());
  if (name == "Z/6") return GroupRing::plain(CoefficientRing::modular(6));
  if (name == "Z[S3]") return GroupRing::over(Group::symmetric(3));
  if (name == "Z[Z/6]") return GroupRing::over(Group::cyclic(6));
  if (name == "Z[Z]") return GroupRing::over(Group::free_abelian(1));
  if (name == "Z[Z2]") return GroupRing::over(Group::free_abelian(2));
  if (name == "Z[F2]") return GroupRing::over(Group::free(2));
  return std::nullopt;
}

int run_laws(const LawsArgs& a) {
  Report report("laws");
  auto ring = law_instance(a.instance);
  if (!ring) throw ParseError("unknown instance \"" + a.instance + "\" (Z, Q, Z/6, Z[S3], Z[Z/6], Z[Z], Z[Z2], Z[F2])");
  std::vector<TraceLaw> laws;
  if (a.laws.empty()) {
    laws = {TraceLaw::independence, TraceLaw::dual, TraceLaw::cyclic, TraceLaw::mult};
    if (a.instance == "Q") laws.push_back(TraceLaw::functor);
  } else {
    std::stringstream in(a.laws);
    std::string item;
    while (std::getline(in, item, ',')) {
      auto law = parse_law(item);
      if (!law) throw ParseError("unknown law \"" + item + "\"");
      if (*law == TraceLaw::functor && a.instance != "Q") throw Unsupported("the functor law needs the instance Q");
      laws.push_back(*law);
    }
  }
  ModuleBicategory b(*ring);
  ModuleSampler sampler(b);
  Json reports = Json::array();
  std::size_t failed = 0;
  if (a.trials > 0)
    for (const auto& r : verify_trace_laws(b, sampler, laws, a.trials, a.seed, a.threads)) {
      Json failures = Json::array();
      for (const auto& f : r.failures) failures.push_back({{"seed", f.seed}, {"cells", f.cells}});
      failed += r.failures.size();
      reports.push_back({{"law", r.law}, {"trials", r.trials}, {"passed", r.failures.empty()}, {"failures", failures}});
    }
  report.body["instance"] = ring->name();
  report.body["trials"] = a.trials;
  report.body["seed"] = a.seed;
  report.body["results"] = reports;
  report.body["failures"] = failed;
  report.emit(a.format);
  return 0;
}

// ---------------------------------------------------------------------------

int run_trace(const std::string& matrix, const std::string& phi, const std::string& format) {
  Report report("trace");
  report.body["inputs"] = inputs({{"matrix", matrix}, {"phi", phi}});
  RingMatrix m = io::parse_matrix(io::read_document(matrix));
  GroupHomomorphism p = phi.empty() ? GroupHomomorphism::identity(m.ring().group())
                                    : io::parse_endomorphism(io::read_document(phi), m.ring().group());
  ShadowElement tr = hattori_stallings(m, p);
  report.body["results"] = {{"ring", m.ring().name()}, {"phi", p.describe()}, {"R", io::to_json(tr)}};
  report.emit(format);
  return 0;
}

int run_fox(const std::string& word, int generator, const std::string& target, const std::string& format) {
  Report report("fox");
  report.body["inputs"] = inputs({{"target", target}});
  GroupTarget t = io::parse_target(io::read_document(target));
  const int rank = static_cast<int>(t.edge_labels.size());
  GroupHomomorphism rho(Group::free(rank), t.group, t.edge_labels);
  RawWord w = parse_list(word, "word");
  GroupRingElement d = fox_derivative(w, generator, rho);
  Json letters = Json::array();
  for (int l : w) letters.push_back(l);
  report.body["results"] = {{"word", letters}, {"generator", generator}, {"derivative", d.format()}};
  report.emit(format);
  return 0;
}

struct CheckArgs {
  std::string complex, map, target, chain, chain_map, format = "json";
};

int run_check(const CheckArgs& a) {
  Report report("check");
  report.body["inputs"] =
      inputs({{"complex", a.complex}, {"map", a.map}, {"target", a.target}, {"chain", a.chain}, {"chain_map", a.chain_map}});
  Json checked = Json::array();
  if (!a.complex.empty()) {
    CWComplex2 x = io::parse_complex(io::read_document(a.complex));
    validate_cw(x);
    checked.push_back("complex");
    if (!a.target.empty()) {
      GroupTarget t = io::parse_target(io::read_document(a.target));
      validate_complex(twisted_chains(x, fundamental_group(x), t));
      checked.push_back("target");
      if (!a.map.empty()) {
        CWSelfMap f = io::parse_self_map(io::read_document(a.map), GroupRing::over(t.group));
        lift_self_map(x, f, fundamental_group(x), t);
        checked.push_back("map");
      }
    } else if (!a.map.empty()) {
      validate_self_map(x, io::parse_self_map(io::read_document(a.map), GroupRing::plain(CoefficientRing::integers())));
      checked.push_back("map");
    }
  }
  if (!a.chain.empty()) {
    TwistedChainComplex c = io::parse_chain_complex(io::read_document(a.chain));
    validate_complex(c);
    checked.push_back("chain");
    if (!a.chain_map.empty()) {
      validate_chain_map(c, io::parse_chain_map(io::read_document(a.chain_map), c));
      checked.push_back("chain_map");
    }
  }
  if (checked.empty()) throw ParseError("nothing to check");
  report.body["results"] = {{"valid", true}, {"checked", checked}};
  report.emit(a.format);
  return 0;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const ShapeMismatch& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const ModelMismatch& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const Error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return exit_unsupported;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reidemeister traces, Nielsen numbers and trace-law checks"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "text"};

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Lefschetz number, Reidemeister trace and Nielsen number of a cellular map");
  analyze_cmd->add_option("complex", analyze_args.complex, "complex file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("map", analyze_args.map, "map file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("target", analyze_args.target, "target file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--tree", analyze_args.tree, "spanning tree as 1-based edge indices, e.g. 1,3");
  analyze_cmd->add_option("--zeta", analyze_args.zeta, "base path as signed edge indices, e.g. 2,-1");
  analyze_cmd->add_option("--mod-k", analyze_args.mod_k, "quotient file")->check(CLI::ExistingFile);
  analyze_cmd->add_option("--format", analyze_args.format)->check(CLI::IsMember(formats));

  LawsArgs laws_args;
  auto* laws_cmd = app.add_subcommand("laws", "randomized trace-law suite");
  laws_cmd->add_option("instance", laws_args.instance, "Z, Q, Z/6, Z[S3], Z[Z/6], Z[Z], Z[Z2], Z[F2]")->required();
  laws_cmd->add_option("--trials", laws_args.trials, "trials per law");
  laws_cmd->add_option("--seed", laws_args.seed);
  laws_cmd->add_option("--laws", laws_args.laws, "comma separated subset of independence,dual,cyclic,mult,functor");
  laws_cmd->add_option("--threads", laws_args.threads, "worker threads (0: all cores)");
  laws_cmd->add_option("--format", laws_args.format)->check(CLI::IsMember(formats));

  std::string matrix, phi, trace_format = "json";
  auto* trace_cmd = app.add_subcommand("trace", "Hattori-Stallings trace of a twisted matrix");
  trace_cmd->add_option("matrix", matrix, "matrix file")->required()->check(CLI::ExistingFile);
  trace_cmd->add_option("phi", phi, "endomorphism file (identity when omitted)")->check(CLI::ExistingFile);
  trace_cmd->add_option("--format", trace_format)->check(CLI::IsMember(formats));

  std::string word, fox_target, fox_format = "json";
  int generator = 1;
  auto* fox_cmd = app.add_subcommand("fox", "Fox derivative of a word");
  fox_cmd->add_option("word", word, "signed generator indices, e.g. 1,2,-1,-2")->required();
  fox_cmd->add_option("generator", generator, "1-based generator")->required();
  fox_cmd->add_option("target", fox_target, "target file; its labels are the generator images")->required()->check(CLI::ExistingFile);
  fox_cmd->add_option("--format", fox_format)->check(CLI::IsMember(formats));

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "validate input files");
  check_cmd->add_option("--complex", check_args.complex)->check(CLI::ExistingFile);
  check_cmd->add_option("--map", check_args.map)->check(CLI::ExistingFile);
  check_cmd->add_option("--target", check_args.target)->check(CLI::ExistingFile);
  check_cmd->add_option("--chain", check_args.chain)->check(CLI::ExistingFile);
  check_cmd->add_option("--chain-map", check_args.chain_map)->check(CLI::ExistingFile);
  check_cmd->add_option("--format", check_args.format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_parse;
  }

  if (*analyze_cmd) return guarded([&] { return run_analyze(analyze_args); });
  if (*laws_cmd) return guarded([&] { return run_laws(laws_args); });
  if (*trace_cmd) return guarded([&] { return run_trace(matrix, phi, trace_format); });
  if (*fox_cmd) return guarded([&] { return run_fox(word, generator, fox_target, fox_format); });
  if (*check_cmd) return guarded([&] { return run_check(check_args); });
  return exit_parse;
}
