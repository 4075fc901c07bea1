#pragma once

// JSON instance and result documents.
//
//   {"schema": 1,
//    "sources": [[x, y], ...], "supplies": [w, ...] (optional), "sink": [x, y],
//    "strategy": {"degree_bound": 3} | {"explicit_bound": k} | {"node_weighted": c},
//    "topology": {"steiner_count": k, "parent": ["s0", "z2", "sink", ...]},
//    "result": {...}}
//
// The parent list names the out-neighbour of every source, then of every
// Steiner slot, as "z<i>", "s<j>" or "sink".

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fqst/strategy.hpp"
#include "fqst/topology.hpp"
#include "fqst/tree.hpp"

namespace fqst {

inline constexpr int kSchemaVersion = 1;

struct ResultRecord {
  std::string kind;    // "topology" or "exact"
  std::string solver;  // "geometric", "algebraic" or "enumeration"
  std::vector<Point> steiner_positions;
  std::vector<double> flows;  // out-edge flows of the sources, then the Steiner slots
  double cost = 0.0;
  double objective = 0.0;
  // Certificates, search statistics and bounds, kept verbatim.
  nlohmann::json extra = nlohmann::json::object();

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct Document {
  int schema = kSchemaVersion;
  Instance instance;
  BoundStrategy strategy = DegreeBound{3};
  std::optional<Topology> topology;
  std::optional<ResultRecord> result;
};

bool operator==(const Document& a, const Document& b);

// Throws ValidationError on malformed JSON or documents that break the
// instance or topology invariants.
Document parse_document(const std::string& text);
Document load_document(const std::string& path);

// Lossless for everything it stores; parse_document(emit_document(d)) == d.
std::string emit_document(const Document& document);

nlohmann::json topology_to_json(const Topology& topology);
Topology topology_from_json(const nlohmann::json& value, int num_sources);

// 12 significant digits.
double round12(double value);

// Result fields of a solved tree, rounded to 12 significant digits.
ResultRecord make_result_record(const SolvedTree& tree, std::string kind, std::string solver,
                                double objective);

// Rebuilds the tree from a document's instance, topology and result
// positions; flows and cost are recomputed.
SolvedTree tree_from_document(const Document& document);

}  // namespace fqst
