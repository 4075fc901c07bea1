#include "fqst/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fqst/errors.hpp"

namespace fqst {

using nlohmann::json;

namespace {

bool same_strategy(const BoundStrategy& a, const BoundStrategy& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<DegreeBound>(&a)) return x->phi == std::get<DegreeBound>(b).phi;
  if (const auto* x = std::get_if<ExplicitBound>(&a)) return x->k == std::get<ExplicitBound>(b).k;
  return std::get<NodeWeighted>(a).c == std::get<NodeWeighted>(b).c;
}

Point point_from_json(const json& value, const char* what) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    throw ValidationError(std::string(what) + " must be a pair [x, y] of numbers");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

json point_to_json(const Point& p) { return json::array({p.x, p.y}); }

BoundStrategy strategy_from_json(const json& value) {
  if (!value.is_object() || value.size() != 1) {
    throw ValidationError(
        "strategy must be one of {\"degree_bound\": phi}, {\"explicit_bound\": k}, "
        "{\"node_weighted\": c}");
  }
  const std::string key = value.begin().key();
  const json& arg = value.begin().value();
  BoundStrategy strategy;
  if (key == "degree_bound" && arg.is_number_integer()) {
    strategy = DegreeBound{arg.get<int>()};
  } else if (key == "explicit_bound" && arg.is_number_integer()) {
    strategy = ExplicitBound{arg.get<int>()};
  } else if (key == "node_weighted" && arg.is_number()) {
    strategy = NodeWeighted{arg.get<double>()};
  } else {
    throw ValidationError("unknown or ill-typed strategy \"" + key + "\"");
  }
  try {
    validate_strategy(strategy);
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  return strategy;
}

json strategy_to_json(const BoundStrategy& strategy) {
  if (const auto* s = std::get_if<DegreeBound>(&strategy)) return {{"degree_bound", s->phi}};
  if (const auto* s = std::get_if<ExplicitBound>(&strategy)) return {{"explicit_bound", s->k}};
  return {{"node_weighted", std::get<NodeWeighted>(strategy).c}};
}

std::string node_ref(const Topology& t, NodeId v) {
  if (t.is_sink(v)) return "sink";
  if (t.is_source(v)) return "z" + std::to_string(v);
  return "s" + std::to_string(t.steiner_index(v));
}

NodeId parse_ref(const std::string& ref, int num_sources, int num_steiner) {
  if (ref == "sink") return num_sources;
  if (ref.size() >= 2 && (ref[0] == 'z' || ref[0] == 's')) {
    int index = -1;
    try {
      std::size_t used = 0;
      index = std::stoi(ref.substr(1), &used);
      if (used != ref.size() - 1) index = -1;
    } catch (const std::exception&) {
      index = -1;
    }
    if (ref[0] == 'z' && index >= 0 && index < num_sources) return index;
    if (ref[0] == 's' && index >= 0 && index < num_steiner) return num_sources + 1 + index;
  }
  throw ValidationError("bad node reference \"" + ref + "\"");
}

ResultRecord result_from_json(const json& value) {
  if (!value.is_object()) throw ValidationError("result must be an object");
  ResultRecord r;
  r.kind = value.at("kind").get<std::string>();
  r.solver = value.at("solver").get<std::string>();
  for (const json& p : value.at("steiner_positions")) {
    r.steiner_positions.push_back(point_from_json(p, "Steiner position"));
  }
  r.flows = value.at("flows").get<std::vector<double>>();
  r.cost = value.at("cost").get<double>();
  r.objective = value.at("objective").get<double>();
  for (const auto& [key, v] : value.items()) {
    if (key != "kind" && key != "solver" && key != "steiner_positions" && key != "flows" &&
        key != "cost" && key != "objective") {
      r.extra[key] = v;
    }
  }
  return r;
}

json result_to_json(const ResultRecord& r) {
  json out = r.extra;
  out["kind"] = r.kind;
  out["solver"] = r.solver;
  json positions = json::array();
  for (const Point& p : r.steiner_positions) positions.push_back(point_to_json(p));
  out["steiner_positions"] = std::move(positions);
  out["flows"] = r.flows;
  out["cost"] = r.cost;
  out["objective"] = r.objective;
  return out;
}

}  // namespace

bool operator==(const Document& a, const Document& b) {
  return a.schema == b.schema && a.instance.sources == b.instance.sources &&
         a.instance.supplies == b.instance.supplies && a.instance.sink == b.instance.sink &&
         same_strategy(a.strategy, b.strategy) && a.topology == b.topology &&
         a.result == b.result;
}

json topology_to_json(const Topology& topology) {
  json parent = json::array();
  for (NodeId v = 0; v < topology.num_nodes(); ++v) {
    if (topology.is_sink(v)) continue;
    parent.push_back(node_ref(topology, topology.parent(v)));
  }
  return {{"steiner_count", topology.num_steiner()}, {"parent", std::move(parent)}};
}

Topology topology_from_json(const json& value, int num_sources) {
  if (!value.is_object() || !value.contains("parent") || !value["parent"].is_array()) {
    throw ValidationError("topology must be an object with a \"parent\" list");
  }
  const int k = value.value("steiner_count", -1);
  const json& list = value["parent"];
  if (k < 0 || list.size() != static_cast<std::size_t>(num_sources + k)) {
    throw ValidationError("topology parent list must have one entry per source and Steiner slot");
  }
  std::vector<NodeId> parent;
  parent.reserve(num_sources + 1 + k);
  for (int i = 0; i < num_sources + k; ++i) {
    if (i == num_sources) parent.push_back(kNoParent);
    if (!list[i].is_string()) throw ValidationError("node references must be strings");
    parent.push_back(parse_ref(list[i].get<std::string>(), num_sources, k));
  }
  if (k == 0) parent.push_back(kNoParent);
  Topology topology(num_sources, k, std::move(parent));
  const std::vector<std::string> problems = structural_problems(topology);
  if (!problems.empty()) throw ValidationError("topology: " + problems.front());
  return topology;
}

Document parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("document must be a JSON object");
  try {
    Document doc;
    doc.schema = root.value("schema", kSchemaVersion);
    if (doc.schema != kSchemaVersion) {
      throw ValidationError("unsupported schema version " + std::to_string(doc.schema));
    }
    if (!root.contains("sources") || !root["sources"].is_array()) {
      throw ValidationError("\"sources\" must be a list of [x, y] pairs");
    }
    for (const json& p : root["sources"]) doc.instance.sources.push_back(point_from_json(p, "source"));
    if (!root.contains("sink")) throw ValidationError("missing \"sink\"");
    doc.instance.sink = point_from_json(root["sink"], "sink");
    if (root.contains("supplies")) {
      doc.instance.supplies = root["supplies"].get<std::vector<double>>();
    }
    validate_instance(doc.instance);
    if (root.contains("strategy")) doc.strategy = strategy_from_json(root["strategy"]);
    if (root.contains("topology")) {
      doc.topology = topology_from_json(root["topology"], doc.instance.num_sources());
    }
    if (root.contains("result")) doc.result = result_from_json(root["result"]);
    return doc;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("ill-typed document: ") + e.what());
  }
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_document(text.str());
}

std::string emit_document(const Document& document) {
  json root;
  root["schema"] = document.schema;
  json sources = json::array();
  for (const Point& p : document.instance.sources) sources.push_back(point_to_json(p));
  root["sources"] = std::move(sources);
  if (!document.instance.supplies.empty()) root["supplies"] = document.instance.supplies;
  root["sink"] = point_to_json(document.instance.sink);
  root["strategy"] = strategy_to_json(document.strategy);
  if (document.topology) root["topology"] = topology_to_json(*document.topology);
  if (document.result) root["result"] = result_to_json(*document.result);
  return root.dump(2) + "\n";
}

double round12(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

ResultRecord make_result_record(const SolvedTree& tree, std::string kind, std::string solver,
                                double objective) {
  ResultRecord r;
  r.kind = std::move(kind);
  r.solver = std::move(solver);
  for (const Point& p : tree.steiner_positions) r.steiner_positions.push_back({round12(p.x), round12(p.y)});
  for (NodeId v = 0; v < tree.topology.num_nodes(); ++v) {
    if (!tree.topology.is_sink(v)) r.flows.push_back(round12(tree.flows[v]));
  }
  r.cost = round12(tree.cost);
  r.objective = round12(objective);
  return r;
}

SolvedTree tree_from_document(const Document& document) {
  if (!document.topology) throw ValidationError("document has no topology");
  if (!document.result) throw ValidationError("document has no result");
  const Topology& t = *document.topology;
  if (document.result->steiner_positions.size() != static_cast<std::size_t>(t.num_steiner())) {
    throw ValidationError("result has " + std::to_string(document.result->steiner_positions.size()) +
                          " Steiner positions for " + std::to_string(t.num_steiner()) + " slots");
  }
  std::vector<double> flows = compute_flows(t, document.instance.supply_vector());
  return make_solved_tree(document.instance, t, document.result->steiner_positions,
                          std::move(flows));
}

}  // namespace fqst
