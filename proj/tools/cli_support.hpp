#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "peisert/classify.hpp"
#include "peisert/constructions.hpp"
#include "peisert/forms.hpp"

namespace peisert::cli {

using Json = nlohmann::ordered_json;

enum class Format { human, machine };

/// Process exit codes.
enum Exit : int { kOk = 0, kAssertion = 1, kBadInput = 2, kBudget = 3 };

/// Graph descriptor for Peisert-type graphs: everything needed to rebuild
/// the tower, the basis and the connection set bit for bit.
Json describe(const Construction& c);
Json describe(const PeisertGraph& g, const std::string& family, const std::vector<Elem>& witness = {});
/// Descriptor for VO+(2e, r).
Json describe_vo_plus(int e, std::uint32_t r);

/// A Peisert-type graph or a form graph read back from a descriptor.
struct PeisertDescriptor {
  std::string family;
  PeisertGraph graph;
  std::vector<Elem> witness;
};
struct FormDescriptor {
  int e = 0;
  std::uint32_t r = 0;
  FormGraph graph;
};
using Descriptor = std::variant<PeisertDescriptor, FormDescriptor>;

/// Throws InvalidArgument naming the offending key on malformed input.
Descriptor load_descriptor(const Json& j);
Descriptor load_descriptor_file(const std::string& path);

/// Comma-separated integers, e.g. "1,0,1,0,0,1".
std::vector<int> parse_int_list(const std::string& text, const std::string& what);

Json check_record(const Check& c);

/// Census rows as an aligned table in the layout of the published tables:
/// zero cells print "-", cells that are only lower bounds print "≥N".
std::string census_table(const std::vector<CensusRow>& rows);
/// One JSON object per line.
std::string census_records(const std::vector<CensusRow>& rows);

struct AnalyzeOptions {
  std::uint64_t clique_budget = 0;
  std::uint64_t maximal_budget = 0;
};

/// Analyses by name: srg, cliques, ekr, maximal, eigenfunctions, baer. Each
/// returns a JSON record; "passed" is false when a verified claim failed.
Json analyze(const PeisertGraph& g, const std::string& analysis, const AnalyzeOptions& options);
inline const std::vector<std::string>& analysis_names() {
  static const std::vector<std::string> names{"srg", "cliques", "ekr", "maximal", "eigenfunctions", "baer"};
  return names;
}

/// True iff g has exactly the directions of X_q over its own basis.
bool is_oval_graph(const PeisertGraph& g);

}  // namespace peisert::cli
