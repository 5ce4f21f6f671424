#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "peisert/error.hpp"
#include "peisert/spectral.hpp"

namespace {

using namespace peisert;
using namespace peisert::cli;

constexpr std::uint32_t kCensusCap = 13;
constexpr std::uint32_t kDeepCap = 32;
// Largest orbit walk the witness method attempts for the row below e_q.
constexpr std::uint64_t kWalkCap = 5'000'000;

struct TowerFlags {
  std::string top_modulus;
  std::string fq_modulus;
  std::string fq2_modulus;
  std::optional<std::uint32_t> beta;

  void attach(CLI::App* app) {
    app->add_option("--top-modulus", top_modulus, "Modulus of F_{q^2} over F_p, constant term first");
    app->add_option("--fq-modulus", fq_modulus, "Modulus of F_q over F_p, constant term first");
    app->add_option("--fq2-modulus", fq2_modulus, "Monic quadratic over F_q as epsilon-basis codes c0,c1,1");
    app->add_option("--beta", beta, "Code of the basis element outside F_q");
  }

  BasisPtr basis(std::uint32_t q) const {
    const auto [p, n] = prime_power(q);
    TowerOverrides ov;
    if (!top_modulus.empty()) ov.top_modulus = parse_int_list(top_modulus, "--top-modulus");
    if (!fq_modulus.empty()) ov.fq_modulus = parse_int_list(fq_modulus, "--fq-modulus");
    if (!fq2_modulus.empty()) {
      std::vector<std::uint32_t> c;
      for (int x : parse_int_list(fq2_modulus, "--fq2-modulus")) {
        require(x >= 0, "--fq2-modulus codes must be non-negative");
        c.push_back(static_cast<std::uint32_t>(x));
      }
      ov.fq2_modulus = c;
    }
    const auto tower = make_tower(p, n, ov);
    if (!beta) return make_basis(tower);
    require(*beta < tower->order() && !tower->in_fq(Elem{*beta}), "--beta must be the code of an element outside F_q");
    return make_basis(tower, Elem{*beta});
  }
};

struct Globals {
  std::string format = "human";
  std::string output;
  int workers = 1;
  std::uint64_t clique_budget = 1'000'000'000;
  std::uint64_t maximal_budget = 1'000'000'000;
  std::uint64_t canon_budget = 100'000'000;

  Format fmt() const { return format == "machine" ? Format::machine : Format::human; }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void save_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << j.dump(2) << "\n";
}

std::string join_directions(const PeisertGraph& g) {
  std::string s;
  for (int d : g.directions()) s += (s.empty() ? "" : " ") + pg_to_string(g.tower(), d);
  return s;
}

bool print_checks(std::ostream& os, Format fmt, const Report& r) {
  for (const auto& c : r.checks) {
    if (fmt == Format::machine) {
      os << check_record(c).dump() << "\n";
    } else {
      os << "check " << c.name << ": " << (c.passed ? "ok" : "FAILED");
      if (!c.detail.empty()) os << " (" << c.detail << ")";
      os << "\n";
    }
  }
  return r.ok();
}

/// Prints one Peisert-type construction; returns false if any check failed.
bool print_construction(std::ostream& os, Format fmt, const Construction& c, const std::string& save) {
  const Json d = describe(c);
  save_json(save, d);
  const int e = c.graph.q() > 2 ? extremal_type_formula(c.graph.q()) : 0;
  const bool extremal = c.report.ok() && !c.witness.empty() && c.graph.m() == e;
  if (fmt == Format::machine) {
    Json rec;
    rec["record"] = "descriptor";
    for (const auto& [k, v] : d.items()) rec[k] = v;
    os << rec.dump() << "\n";
  } else {
    os << "family: " << c.family << "\n"
       << "q: " << c.graph.q() << "\n"
       << "type: (" << c.graph.m() << ", " << c.graph.q() << ")\n"
       << "vertices: " << c.graph.num_vertices() << "\n"
       << "directions: " << join_directions(c.graph) << "\n"
       << "witness clique: " << c.witness.size() << " points\n";
  }
  const bool ok = print_checks(os, fmt, c.report);
  if (fmt == Format::machine) {
    Json s;
    s["record"] = "summary";
    s["family"] = c.family;
    s["m"] = c.graph.m();
    s["q"] = c.graph.q();
    s["extremal"] = extremal;
    s["checks_passed"] = ok;
    os << s.dump() << "\n";
  } else {
    os << "extremal: " << (extremal ? "true" : "false") << "\n";
  }
  return ok;
}

struct ConstructFlags {
  std::string kind;
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  int e = 2;
  int s = 1;
  std::uint32_t shift = 0;
  std::string save;
  std::string save_second;
  TowerFlags tower;
};

int run_construct(const Globals& g, const ConstructFlags& f) {
  Output out(g.output);
  std::ostream& os = out.os();
  const Format fmt = g.fmt();
  auto need = [](std::uint32_t v, const char* flag) {
    require(v > 0, std::string("this construction needs ") + flag);
    return v;
  };

  if (f.kind == "vo_plus") {
    const std::uint32_t r = need(f.r, "--r");
    require(f.e >= 2, "--e must be at least 2");
    const FormGraph vo = vo_plus(f.e, r);
    const Json d = describe_vo_plus(f.e, r);
    save_json(f.save, d);
    const auto maximal = maximal_cliques_containing(vo.graph, 0, SearchOptions{g.maximal_budget});
    std::map<std::size_t, std::uint64_t> sizes;
    for (const auto& c : maximal) ++sizes[c.size()];
    Report report;
    if (f.e == 2 && r <= 5) report = xq_vo_isomorphism(r).report;
    if (fmt == Format::machine) {
      Json rec;
      rec["record"] = "descriptor";
      for (const auto& [k, v] : d.items()) rec[k] = v;
      os << rec.dump() << "\n";
    } else {
      os << "family: vo_plus\n"
         << "r: " << r << "\n"
         << "e: " << f.e << "\n"
         << "vertices: " << vo.graph.size() << "\n"
         << "valency: " << vo.valency << "\n";
    }
    const bool ok = print_checks(os, fmt, report);
    if (fmt == Format::machine) {
      Json s;
      s["record"] = "summary";
      s["family"] = "vo_plus";
      s["vertices"] = vo.graph.size();
      s["valency"] = vo.valency;
      s["maximal_cliques_through_0"] = maximal.size();
      Json h = Json::object();
      for (const auto& [size, count] : sizes) h[std::to_string(size)] = count;
      s["maximal_clique_sizes"] = h;
      s["checks_passed"] = ok;
      os << s.dump() << "\n";
    } else {
      os << "maximal cliques through 0: " << maximal.size() << "\n";
      for (const auto& [size, count] : sizes) os << "  of size " << size << ": " << count << "\n";
    }
    return ok ? kOk : kAssertion;
  }

  if (f.kind == "example_q32") {
    const ExamplePair pair = example_q32();
    bool ok = print_construction(os, fmt, pair.first, f.save);
    ok = print_construction(os, fmt, pair.second, f.save_second) && ok;
    CanonOptions canon;
    canon.node_budget = g.canon_budget;
    const bool distinct = certificate(pair.first.graph, canon).certificate != certificate(pair.second.graph, canon).certificate;
    if (fmt == Format::machine) {
      Json s;
      s["record"] = "pair";
      s["certificates_differ"] = distinct;
      os << s.dump() << "\n";
    } else {
      os << "certificates differ: " << (distinct ? "true" : "false") << "\n";
    }
    return ok && distinct ? kOk : kAssertion;
  }

  Construction c = [&] {
    if (f.kind == "ls") {
      const std::uint32_t p = need(f.p, "--p");
      require(is_prime(p) && p % 2 == 1, "--p must be an odd prime");
      return ls_graph(f.tower.basis(p));
    }
    const BasisPtr basis = f.tower.basis(need(f.q, "--q"));
    if (f.kind == "extremal") return extremal_construction(basis);
    if (f.kind == "xq") return oval_graph_xq(basis);
    const FieldTower& t = basis->tower();
    require(f.s >= 1 && t.n() % f.s == 0 && t.n() / f.s >= 2, "--s must be a proper divisor of n");
    require(f.shift < t.order() && t.in_fq(Elem{f.shift}), "--shift must be the code of an element of F_q");
    return y_qn(basis, f.s, default_hyperplane(t, f.s), Elem{f.shift});
  }();
  return print_construction(os, fmt, c, f.save) ? kOk : kAssertion;
}

struct AnalyzeFlags {
  std::string descriptor;
  std::vector<std::string> analyses;
};

Descriptor read_descriptor(const std::string& path) {
  if (path != "-") return load_descriptor_file(path);
  Json j;
  try {
    j = Json::parse(std::cin);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("descriptor on stdin is not valid JSON: ") + e.what());
  }
  return load_descriptor(j);
}

void print_analysis_human(std::ostream& os, const Json& r) {
  os << r["analysis"].get<std::string>() << ":";
  for (const auto& [k, v] : r.items()) {
    if (k == "record" || k == "analysis") continue;
    os << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
  }
  os << "\n";
}

int run_analyze(const Globals& g, const AnalyzeFlags& f) {
  const Descriptor d = read_descriptor(f.descriptor);
  std::vector<std::string> names = f.analyses.empty() ? analysis_names() : f.analyses;
  for (const auto& n : names) {
    const auto& all = analysis_names();
    if (n != "all" && std::find(all.begin(), all.end(), n) == all.end()) throw InvalidArgument("unknown analysis '" + n + "'");
  }
  if (std::find(names.begin(), names.end(), "all") != names.end()) names = analysis_names();

  std::vector<Json> records;
  if (const auto* pd = std::get_if<PeisertDescriptor>(&d)) {
    const AnalyzeOptions opts{g.clique_budget, g.maximal_budget};
    for (const auto& n : names) records.push_back(analyze(pd->graph, n, opts));
  } else {
    const auto& fd = std::get<FormDescriptor>(d);
    for (const auto& n : names) {
      if (n != "maximal") throw InvalidArgument("vo_plus descriptors support only the 'maximal' analysis");
      const auto maximal = maximal_cliques_containing(fd.graph.graph, 0, SearchOptions{g.maximal_budget});
      std::map<std::size_t, std::uint64_t> sizes;
      for (const auto& c : maximal) ++sizes[c.size()];
      Json j;
      j["record"] = "analysis";
      j["analysis"] = "maximal";
      j["count"] = maximal.size();
      Json h = Json::object();
      for (const auto& [size, count] : sizes) h[std::to_string(size)] = count;
      j["sizes"] = h;
      j["passed"] = true;
      records.push_back(j);
    }
  }

  Output out(g.output);
  bool ok = true;
  for (const auto& r : records) {
    if (g.fmt() == Format::machine) {
      out.os() << r.dump() << "\n";
    } else {
      print_analysis_human(out.os(), r);
    }
    ok = ok && r["passed"].get<bool>();
  }
  return ok ? kOk : kAssertion;
}

struct CensusFlags {
  std::uint32_t q = 0;
  std::optional<int> m_min;
  std::optional<int> m_max;
  bool deep = false;
  std::uint64_t invariant_budget = 200000;
  TowerFlags tower;
};

void check_census_cap(std::uint32_t q, bool deep) {
  if (q > kDeepCap) throw InvalidArgument("census is limited to q <= " + std::to_string(kDeepCap));
  if (q > kCensusCap && !deep) {
    throw InvalidArgument("census for q > " + std::to_string(kCensusCap) + " requires --deep");
  }
}

CensusOptions census_options(const Globals& g, std::uint64_t invariant_budget) {
  CensusOptions o;
  o.clique_budget = g.clique_budget;
  o.invariant_budget = invariant_budget;
  o.canon_budget = g.canon_budget;
  o.workers = g.workers;
  return o;
}

int run_census(const Globals& g, const CensusFlags& f) {
  check_census_cap(f.q, f.deep);
  const BasisPtr basis = f.tower.basis(f.q);
  const int q = static_cast<int>(f.q);
  const int lo = f.m_min.value_or(std::min(3, q));
  const int hi = f.m_max.value_or(q);
  require(lo >= 1 && lo <= hi && hi <= q, "need 1 <= --m-min <= --m-max <= q");
  const auto rows = census(basis, lo, hi, census_options(g, f.invariant_budget));

  Output out(g.output);
  out.os() << (g.fmt() == Format::machine ? census_records(rows) : census_table(rows));
  out.os().flush();
  std::uint64_t undecided = 0;
  for (const auto& r : rows) undecided += r.n_undecided;
  if (undecided > 0) {
    throw BudgetExceeded(std::to_string(undecided) + " census classes hit the clique budget; their cells are lower bounds", 0,
                         0);
  }
  return kOk;
}

struct ExtremalFlags {
  std::uint32_t q = 0;
  bool deep = false;
  std::string method;
  std::uint64_t invariant_budget = 200000;
  TowerFlags tower;
};

int run_extremal_values(const Globals& g, const ExtremalFlags& f) {
  require(f.q >= 3, "--q must be a prime power >= 3");
  const BasisPtr basis = f.tower.basis(f.q);
  const std::string method = !f.method.empty() ? f.method : (f.q <= kCensusCap || f.deep ? "census" : "witness");
  Json rec;
  rec["record"] = "extremal_values";
  rec["q"] = f.q;
  rec["method"] = method;
  bool ok = true;

  if (method == "census") {
    check_census_cap(f.q, f.deep);
    const auto rows = census(basis, 1, static_cast<int>(f.q), census_options(g, f.invariant_budget));
    const ExtremalValues v = extremal_values(rows);
    rec["e_q"] = v.e_q ? Json(*v.e_q) : Json(nullptr);
    rec["E_q"] = v.big_e_q ? Json(*v.big_e_q) : Json(nullptr);
    rec["formula"] = extremal_type_formula(f.q);
    rec["exact"] = v.exact;
    ok = v.e_q && *v.e_q == extremal_type_formula(f.q);
  } else if (method == "witness") {
    // A non-canonical clique at the formula value plus a strict-EKR row just
    // below it pins e_q, since adding directions keeps every clique.
    const int e = extremal_type_formula(f.q);
    const Construction c = basis->tower().n() == 1 ? ls_graph(basis) : extremal_construction(basis);
    const bool witness_ok = c.report.ok() && c.graph.m() == e;
    std::optional<bool> below;
    if (type_walk_size(f.q, e - 1) <= kWalkCap) {
      const EkrSweep sweep = ekr_sweep(basis, e - 1, census_options(g, f.invariant_budget));
      if (sweep.undecided == 0) below = sweep.without == 0;
    }
    rec["e_q"] = e;
    rec["E_q"] = nullptr;
    rec["formula"] = e;
    rec["witness"] = witness_ok;
    rec["exclusion_below"] = below ? Json(*below) : Json(nullptr);
    rec["exact"] = witness_ok && below.value_or(false);
    ok = witness_ok && below.value_or(true);
  } else {
    throw InvalidArgument("--method must be census or witness");
  }

  Output out(g.output);
  if (g.fmt() == Format::machine) {
    out.os() << rec.dump() << "\n";
  } else {
    for (const auto& [k, v] : rec.items()) {
      if (k == "record") continue;
      out.os() << k << ": " << (v.is_string() ? v.get<std::string>() : v.is_null() ? "unknown" : v.dump()) << "\n";
    }
  }
  return ok ? kOk : kAssertion;
}

struct IsoFlags {
  std::string first;
  std::string second;
  bool map = false;
};

const BitGraph& bits_of(const Descriptor& d) {
  if (const auto* pd = std::get_if<PeisertDescriptor>(&d)) return pd->graph.bits();
  return std::get<FormDescriptor>(d).graph.graph;
}

int run_iso(const Globals& g, const IsoFlags& f) {
  const Descriptor a = read_descriptor(f.first);
  const Descriptor b = read_descriptor(f.second);
  CanonOptions canon;
  canon.node_budget = g.canon_budget;
  const BitGraph& ga = bits_of(a);
  const BitGraph& gb = bits_of(b);
  std::optional<std::vector<std::uint32_t>> map;
  bool iso = false;
  if (ga.size() == gb.size()) {
    map = find_isomorphism(ga, gb, canon);
    iso = map.has_value();
    if (iso) verify(is_isomorphism(ga, gb, *map), "isomorphism search returned a map that is not an isomorphism");
  }
  Json rec;
  rec["record"] = "isomorphism";
  rec["isomorphic"] = iso;
  rec["vertices"] = {ga.size(), gb.size()};
  if (f.map && iso) rec["map"] = *map;

  Output out(g.output);
  if (g.fmt() == Format::machine) {
    out.os() << rec.dump() << "\n";
  } else {
    out.os() << "isomorphic: " << (iso ? "true" : "false") << "\n";
    if (f.map && iso) {
      out.os() << "map:";
      for (auto v : *map) out.os() << " " << v;
      out.os() << "\n";
    }
  }
  return kOk;
}

int fail(int code, const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["exit_code"] = code;
  j["message"] = message;
  std::cerr << j.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peisert-type graphs: constructions, clique analyses and the isomorphism census"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("-o,--output", g.output, "Write results to this file instead of stdout");
  app.add_option("--workers", g.workers, "Worker threads for the census")->check(CLI::PositiveNumber);
  app.add_option("--clique-budget", g.clique_budget, "Node budget for each maximum-clique search")->check(CLI::PositiveNumber);
  app.add_option("--maximal-budget", g.maximal_budget, "Node budget for maximal-clique enumeration")->check(CLI::PositiveNumber);
  app.add_option("--canon-budget", g.canon_budget, "Node budget for each canonical labeling")->check(CLI::PositiveNumber);

  ConstructFlags cf;
  auto* construct = app.add_subcommand("construct", "Build a graph, verify it and print its descriptor");
  construct->add_option("kind", cf.kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"extremal", "ls", "y_qn", "xq", "vo_plus", "example_q32"}));
  construct->add_option("--q", cf.q, "Prime power q");
  construct->add_option("--p", cf.p, "Odd prime (ls)");
  construct->add_option("--r", cf.r, "Field order (vo_plus)");
  construct->add_option("--e", cf.e, "Half the dimension (vo_plus)");
  construct->add_option("--s", cf.s, "Subfield degree s of F_r, r = p^s (y_qn)");
  construct->add_option("--shift", cf.shift, "Code of the affine shift in F_q (y_qn)");
  construct->add_option("--save", cf.save, "Write the descriptor to this file");
  construct->add_option("--save-second", cf.save_second, "Write the second example_q32 descriptor to this file");
  cf.tower.attach(construct);

  AnalyzeFlags af;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run analyses on a saved descriptor");
  analyze_cmd->add_option("descriptor", af.descriptor, "Descriptor file, or - for stdin")->required();
  analyze_cmd->add_option("-a,--analyses", af.analyses, "srg, cliques, ekr, maximal, eigenfunctions, baer or all")
      ->delimiter(',');

  CensusFlags sf;
  auto* census_cmd = app.add_subcommand("census", "Classify Peisert-type graphs of every type (m, q) up to isomorphism");
  census_cmd->add_option("--q", sf.q, "Prime power q")->required();
  census_cmd->add_option("--m-min", sf.m_min, "Smallest m (default 3)");
  census_cmd->add_option("--m-max", sf.m_max, "Largest m (default q)");
  census_cmd->add_flag("--deep", sf.deep, "Allow q up to 32");
  census_cmd->add_option("--invariant-budget", sf.invariant_budget, "Node budget for the clique-count pre-screen")
      ->check(CLI::PositiveNumber);
  sf.tower.attach(census_cmd);

  IsoFlags isf;
  auto* iso_cmd = app.add_subcommand("iso", "Decide whether two descriptors describe isomorphic graphs");
  iso_cmd->add_option("first", isf.first, "First descriptor")->required();
  iso_cmd->add_option("second", isf.second, "Second descriptor")->required();
  iso_cmd->add_flag("--map", isf.map, "Print an explicit isomorphism (vertex i of the first maps to map[i])");

  ExtremalFlags ef;
  auto* ext_cmd = app.add_subcommand("extremal-values", "Compute e_q and E_q");
  ext_cmd->add_option("--q", ef.q, "Prime power q")->required();
  ext_cmd->add_flag("--deep", ef.deep, "Allow a full census up to q = 32");
  ext_cmd->add_option("--method", ef.method, "census or witness (default: census when allowed)")
      ->check(CLI::IsMember({"census", "witness"}));
  ext_cmd->add_option("--invariant-budget", ef.invariant_budget, "Node budget for the clique-count pre-screen")
      ->check(CLI::PositiveNumber);
  ef.tower.attach(ext_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(kBadInput, "bad_input", e.what());
  }

  try {
    if (*construct) return run_construct(g, cf);
    if (*analyze_cmd) return run_analyze(g, af);
    if (*census_cmd) return run_census(g, sf);
    if (*iso_cmd) return run_iso(g, isf);
    if (*ext_cmd) return run_extremal_values(g, ef);
  } catch (const BudgetExceeded& e) {
    return fail(kBudget, "budget_exceeded", e.what());
  } catch (const InternalInconsistency& e) {
    return fail(kAssertion, "assertion_failed", e.what());
  } catch (const InvalidArgument& e) {
    return fail(kBadInput, "bad_input", e.what());
  } catch (const std::exception& e) {
    return fail(kAssertion, "internal_error", e.what());
  }
  return kOk;
}
