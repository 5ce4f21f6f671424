#include <doctest.h>

#include "cli_support.hpp"
#include "peisert/error.hpp"

using namespace peisert;
using namespace peisert::cli;

namespace {

BasisPtr basis_for(std::uint32_t q) {
  const auto [p, n] = prime_power(q);
  return make_basis(make_tower(p, n));
}

std::string error_of(const Json& j) {
  try {
    load_descriptor(j);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("a descriptor rebuilds the same graph, including non-default towers") {
  const ExamplePair pair = example_q32();
  const Json d = describe(pair.first);
  const Descriptor back = load_descriptor(Json::parse(d.dump()));
  const auto& pd = std::get<PeisertDescriptor>(back);
  CHECK(pd.graph.bits() == pair.first.graph.bits());
  CHECK(pd.witness == pair.first.witness);
  CHECK(pd.family == pair.first.family);
}

TEST_CASE("descriptor errors name the offending key") {
  const Json good = describe(oval_graph_xq(basis_for(9)));
  Json j = good;
  j.erase("directions");
  CHECK(error_of(j).find("'directions'") != std::string::npos);
  j = good;
  j["beta"] = "five";
  CHECK(error_of(j).find("'beta'") != std::string::npos);
  j = good;
  j["beta"] = 1;
  CHECK(error_of(j).find("'beta'") != std::string::npos);
  j = good;
  j["m"] = 5;
  CHECK(error_of(j).find("'m'") != std::string::npos);
  j = good;
  j["kind"] = "hypergraph";
  CHECK(error_of(j).find("'kind'") != std::string::npos);
  CHECK_FALSE(error_of(Json::array()).empty());
  CHECK_THROWS_AS(load_descriptor_file("/nonexistent/x.json"), InvalidArgument);
}

TEST_CASE("vo_plus descriptors") {
  const Json d = describe_vo_plus(2, 3);
  CHECK(d["vertices"] == 81);
  const auto fd = std::get<FormDescriptor>(load_descriptor(d));
  CHECK(fd.graph.graph.size() == 81);
}

TEST_CASE("integer lists") {
  CHECK(parse_int_list("1,0,-1", "x") == std::vector<int>{1, 0, -1});
  CHECK_THROWS_AS(parse_int_list("1,a", "x"), InvalidArgument);
  CHECK_THROWS_AS(parse_int_list("1,2x", "x"), InvalidArgument);
  CHECK_THROWS_AS(parse_int_list("", "x"), InvalidArgument);
}

TEST_CASE("census tables print dashes for zero and lower bounds for undecided cells") {
  std::vector<CensusRow> rows(2);
  rows[0] = CensusRow{7, 3, 1, 1, 1, 0, 0};
  rows[1] = CensusRow{7, 4, 12, 10, 3, 4, 3};
  const std::string t = census_table(rows);
  CHECK(t ==
        "q = 7\n"
        "m           3   4\n"
        "#Graphs     1  10\n"
        "strict-EKR  1  ≥3\n"
        "without     -  ≥4\n");
  CHECK(census_records(rows).find("\"complete\":false") != std::string::npos);
}

TEST_CASE("analyses") {
  const PeisertGraph x = oval_graph_xq(basis_for(9)).graph;
  const AnalyzeOptions opts;
  for (const auto& name : analysis_names()) CHECK(analyze(x, name, opts)["passed"] == true);
  CHECK(analyze(x, "eigenfunctions", opts)["f1"]["support_size"] == 12);
  CHECK(is_oval_graph(x));

  const PeisertGraph line(basis_for(9), {0});
  CHECK(analyze(line, "srg", opts)["primitive"] == false);
  CHECK(analyze(line, "eigenfunctions", opts)["applicable"] == false);
  CHECK(analyze(PeisertGraph(basis_for(7), {0, 1, 2}), "baer", opts)["applicable"] == false);
  CHECK_THROWS_AS(analyze(x, "colouring", opts), InvalidArgument);
  CHECK_THROWS_AS(analyze(x, "cliques", AnalyzeOptions{2, 0}), BudgetExceeded);
}
