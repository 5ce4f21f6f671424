#include "cli_support.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "peisert/error.hpp"
#include "peisert/spectral.hpp"

namespace peisert::cli {

namespace {

Json codes(const std::vector<Elem>& v) {
  Json a = Json::array();
  for (Elem x : v) a.push_back(x.code);
  return a;
}

template <class T>
T get(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("descriptor is missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("descriptor key '") + key + "' has the wrong type");
  }
}

}  // namespace

Json describe(const PeisertGraph& g, const std::string& family, const std::vector<Elem>& witness) {
  const FieldTower& t = g.tower();
  Json j;
  j["kind"] = "peisert";
  j["family"] = family;
  j["p"] = t.p();
  j["n"] = t.n();
  j["q"] = t.q();
  j["m"] = g.m();
  j["top_modulus"] = t.top_modulus();
  j["fq_modulus"] = t.fq_modulus();
  j["fq2_modulus"] = t.fq2_modulus();
  j["beta"] = g.basis().beta().code;
  j["directions"] = g.directions();
  Json labels = Json::array();
  for (int d : g.directions()) labels.push_back(pg_to_string(t, d));
  j["direction_labels"] = labels;
  j["witness"] = codes(witness);
  return j;
}

Json describe(const Construction& c) { return describe(c.graph, c.family, c.witness); }

Json describe_vo_plus(int e, std::uint32_t r) {
  Json j;
  j["kind"] = "vo_plus";
  j["family"] = "vo_plus";
  j["e"] = e;
  j["r"] = r;
  std::uint64_t v = 1;
  for (int i = 0; i < 2 * e; ++i) v *= r;
  j["vertices"] = v;
  j["modulus"] = make_field(r)->modulus();
  return j;
}

Descriptor load_descriptor(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("descriptor must be a JSON object");
  const auto kind = get<std::string>(j, "kind");
  if (kind == "vo_plus") {
    const int e = get<int>(j, "e");
    const auto r = get<std::uint32_t>(j, "r");
    return FormDescriptor{e, r, vo_plus(e, r)};
  }
  if (kind != "peisert") throw InvalidArgument("descriptor key 'kind' must be \"peisert\" or \"vo_plus\"");
  const int p = get<int>(j, "p");
  const int n = get<int>(j, "n");
  TowerOverrides ov;
  ov.top_modulus = get<Poly>(j, "top_modulus");
  ov.fq_modulus = get<Poly>(j, "fq_modulus");
  ov.fq2_modulus = get<std::vector<std::uint32_t>>(j, "fq2_modulus");
  if (!is_prime(static_cast<std::uint64_t>(std::max(p, 0))) || n < 1) {
    throw InvalidArgument("descriptor keys 'p' and 'n' must describe a prime power");
  }
  const auto tower = make_tower(p, n, ov);
  if (j.contains("q") && get<std::uint32_t>(j, "q") != tower->q()) throw InvalidArgument("descriptor key 'q' disagrees with p^n");
  const auto beta = get<std::uint32_t>(j, "beta");
  if (beta >= tower->order() || tower->in_fq(Elem{beta})) throw InvalidArgument("descriptor key 'beta' must lie outside F_q");
  const auto basis = make_basis(tower, Elem{beta});
  const auto dirs = get<DirectionSet>(j, "directions");
  std::vector<Elem> witness;
  if (j.contains("witness")) {
    for (auto c : get<std::vector<std::uint32_t>>(j, "witness")) {
      if (c >= tower->order()) throw InvalidArgument("descriptor key 'witness' has an element outside the field");
      witness.push_back(Elem{c});
    }
  }
  PeisertGraph g(basis, dirs);
  if (j.contains("m") && get<int>(j, "m") != g.m()) throw InvalidArgument("descriptor key 'm' disagrees with 'directions'");
  const std::string family = j.contains("family") ? get<std::string>(j, "family") : "custom";
  return PeisertDescriptor{family, std::move(g), std::move(witness)};
}

Descriptor load_descriptor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open descriptor file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("descriptor file " + path + " is not valid JSON: " + e.what());
  }
  return load_descriptor(j);
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument(what + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw InvalidArgument(what + " is empty");
  return out;
}

Json check_record(const Check& c) {
  Json j;
  j["record"] = "check";
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["detail"] = c.detail;
  return j;
}

std::string census_table(const std::vector<CensusRow>& rows) {
  auto cell = [](std::uint64_t v, bool lower_bound) {
    if (lower_bound) return "≥" + std::to_string(v);
    return v == 0 ? std::string("-") : std::to_string(v);
  };
  std::vector<std::vector<std::string>> table{{"m"}, {"#Graphs"}, {"strict-EKR"}, {"without"}};
  for (const auto& r : rows) {
    table[0].push_back(std::to_string(r.m));
    table[1].push_back(std::to_string(r.n_graphs));
    table[2].push_back(cell(r.n_strict_ekr, !r.complete()));
    table[3].push_back(cell(r.n_without, !r.complete()));
  }
  // Display width: count code points, not bytes, so "≥" aligns.
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> w(table[0].size(), 0);
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], width(row[i]));
  }
  std::ostringstream os;
  os << "q = " << (rows.empty() ? 0 : rows.front().q) << "\n";
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string pad(w[i] - width(row[i]), ' ');
      if (i == 0) {
        os << row[i] << pad;
      } else {
        os << "  " << pad << row[i];
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string census_records(const std::vector<CensusRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    Json j;
    j["q"] = r.q;
    j["m"] = r.m;
    j["n_graphs"] = r.n_graphs;
    j["n_strict_ekr"] = r.n_strict_ekr;
    j["n_without"] = r.n_without;
    j["n_undecided"] = r.n_undecided;
    j["complete"] = r.complete();
    j["orbits"] = r.orbits;
    os << j.dump() << "\n";
  }
  return os.str();
}

bool is_oval_graph(const PeisertGraph& g) {
  if (g.tower().n() % 2 != 0) return false;
  return oval_graph_xq(g.basis_ptr()).graph.directions() == g.directions();
}

namespace {

Json eigen_record(const Eigenfunction& f, long long bound, WitnessKind kind) {
  Json j;
  j["eigenvalue"] = f.eigenvalue;
  j["support_size"] = f.support_size();
  j["bound"] = bound;
  j["tight"] = static_cast<long long>(f.support_size()) == bound;
  j["witness_kind"] = to_string(kind);
  j["sum"] = f.sum();
  return j;
}

Json not_applicable(Json j, const std::string& reason) {
  j["applicable"] = false;
  j["reason"] = reason;
  j["passed"] = true;
  return j;
}

}  // namespace

Json analyze(const PeisertGraph& g, const std::string& analysis, const AnalyzeOptions& options) {
  Json j;
  j["record"] = "analysis";
  j["analysis"] = analysis;
  const SearchOptions search{options.clique_budget};

  if (analysis == "srg") {
    const SrgParams s = srg_params_of_type(g.m(), g.q());
    j["v"] = s.v;
    j["k"] = s.k;
    j["lambda"] = s.lambda;
    j["mu"] = s.mu;
    j["eigenvalues"] = {static_cast<long long>(s.k), s.r1, s.r2};
    j["multiplicities"] = {1, s.mult1, s.mult2};
    j["primitive"] = s.primitive;
    srg_verify(g);
    verify_spectrum(g);
    j["verified"] = true;
    j["passed"] = true;
    return j;
  }
  if (analysis == "cliques" || analysis == "ekr") {
    const auto c = count_max_cliques(g, search);
    if (analysis == "ekr") {
      j["strict_ekr"] = c.noncanonical == 0;
      j["noncanonical"] = c.noncanonical;
    } else {
      j["canonical"] = c.canonical;
      j["noncanonical"] = c.noncanonical;
      j["total"] = c.canonical + c.noncanonical;
    }
    j["passed"] = c.canonical == static_cast<std::uint64_t>(g.m());
    return j;
  }
  if (analysis == "maximal") {
    const auto cl = maximal_cliques_through_zero(g, SearchOptions{options.maximal_budget});
    std::map<std::size_t, std::uint64_t> sizes;
    std::uint64_t canonical = 0, noncanonical = 0;
    for (const auto& c : cl) {
      ++sizes[c.vertices.size()];
      if (c.kind == CliqueKind::canonical) ++canonical;
      if (c.kind == CliqueKind::noncanonical_maximum) ++noncanonical;
    }
    j["count"] = cl.size();
    Json hist = Json::object();
    for (const auto& [size, count] : sizes) hist[std::to_string(size)] = count;
    j["sizes"] = hist;
    j["all_maximum"] = sizes.size() == 1 && sizes.begin()->first == g.q();
    j["canonical"] = canonical;
    j["noncanonical"] = noncanonical;
    j["passed"] = canonical == static_cast<std::uint64_t>(g.m());
    return j;
  }
  if (analysis == "eigenfunctions") {
    if (!exact_sqrt(g.q()) || g.q() < 4) return not_applicable(j, "q is not a square");
    if (!is_oval_graph(g)) return not_applicable(j, "the explicit eigenfunctions are defined on X_q over this basis");
    const WdbBounds b = wdb_bounds(g.m(), g.q());
    const Clique c = canonical_clique(g, g.directions().front());
    const Eigenfunction f1 = build_f1(g, c, 0);
    const Eigenfunction f2 = build_f2(g);
    j["applicable"] = true;
    j["f1"] = eigen_record(f1, b.positive, WitnessKind::isolated_clique_pair);
    j["f2"] = eigen_record(f2, b.negative, WitnessKind::complete_bipartite);
    j["passed"] = j["f1"]["tight"].get<bool>() && j["f2"]["tight"].get<bool>() && f1.sum() == 0 && f2.sum() == 0;
    return j;
  }
  if (analysis == "baer") {
    if (!exact_sqrt(g.q())) return not_applicable(j, "q is not a square");
    const auto cl = max_cliques_through_zero(g, search);
    std::uint64_t noncanonical = 0, baer = 0;
    std::map<int, std::uint64_t> meets;
    bool intersections_ok = true;
    for (const auto& c2 : cl) {
      if (c2.kind != CliqueKind::noncanonical_maximum) continue;
      ++noncanonical;
      if (baer_subarray_check(g, c2)) ++baer;
      for (const auto& c1 : cl) {
        if (c1.kind != CliqueKind::canonical) continue;
        try {
          ++meets[intersection_profile(g, c1, c2)];
        } catch (const InternalInconsistency&) {
          intersections_ok = false;
        }
      }
    }
    j["applicable"] = true;
    j["noncanonical"] = noncanonical;
    j["baer_subarrays"] = baer;
    j["baer_all"] = baer == noncanonical;
    Json m = Json::object();
    for (const auto& [size, count] : meets) m[std::to_string(size)] = count;
    j["intersection_sizes"] = m;
    j["passed"] = intersections_ok && baer == noncanonical;
    return j;
  }
  throw InvalidArgument("unknown analysis '" + analysis + "'");
}

}  // namespace peisert::cli
