#include "fqst/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

#include "fqst/algebraic.hpp"
#include "fqst/analysis.hpp"
#include "fqst/document.hpp"
#include "fqst/errors.hpp"
#include "fqst/exact_search.hpp"
#include "fqst/geo_solver.hpp"
#include "fqst/svg.hpp"

namespace fqst::cli {

using nlohmann::json;

namespace {

constexpr double kAngleTolerance = 1e-7;

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const GuardRefusalError& e) {
    err << "refused: " << e.what() << "\n";
    return kGuardRefusal;
  } catch (const ConsistencyError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kCertificateFailure;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

double extent(const Instance& instance) {
  Point lo = instance.sink;
  Point hi = instance.sink;
  for (const Point& z : instance.sources) {
    lo = {std::min(lo.x, z.x), std::min(lo.y, z.y)};
    hi = {std::max(hi.x, z.x), std::max(hi.y, z.y)};
  }
  return std::max(1.0, dist(lo, hi));
}

std::string node_label(const Topology& t, NodeId v) {
  if (t.is_sink(v)) return "sink";
  if (t.is_source(v)) return "z" + std::to_string(v);
  return "s" + std::to_string(t.steiner_index(v));
}

json centroid_summary(const SolvedTree& tree, double tol) {
  const std::vector<CentroidCheck> checks = check_centroid_certificate(tree, tol);
  double worst = 0.0;
  json failures = json::array();
  for (const CentroidCheck& c : checks) {
    worst = std::max(worst, c.deviation);
    if (!c.pass) failures.push_back(node_label(tree.topology, c.steiner));
  }
  return {{"pass", certificate_holds(checks)},
          {"max_deviation", round12(worst)},
          {"tolerance", tol},
          {"failures", failures}};
}

json degree_summary(const SolvedTree& tree, int phi, double tol) {
  json failures = json::array();
  for (const DegreeViolation& v : check_degree_window(tree, phi, tol)) {
    failures.push_back(node_label(tree.topology, v.node) + ": " + v.message);
  }
  return {{"pass", failures.empty()}, {"phi", phi}, {"failures", failures}};
}

json angle_summary(const SolvedTree& tree) {
  json failures = json::array();
  for (const AngleViolation& v : check_angles(tree, kAngleTolerance)) {
    failures.push_back(node_label(tree.topology, v.node) + ": angle " +
                       std::to_string(v.angle) + " between " +
                       node_label(tree.topology, v.in_neighbour) + " and " +
                       node_label(tree.topology, v.out_neighbour));
  }
  return {{"pass", failures.empty()}, {"tolerance", kAngleTolerance}, {"failures", failures}};
}

json overlap_summary(const SolvedTree& tree, std::optional<int> phi) {
  json failures = json::array();
  int caveats = 0;
  int degenerate = 0;
  for (const Overlap& o : check_overlapping_edges(tree, kAngleTolerance, phi)) {
    if (o.caveat) {
      ++caveats;
    } else if (o.degenerate) {
      ++degenerate;
    } else {
      failures.push_back(node_label(tree.topology, o.node) + ": edges to " +
                         node_label(tree.topology, o.first) + " and " +
                         node_label(tree.topology, o.second) + " overlap");
    }
  }
  return {{"pass", failures.empty()},
          {"degree_phi_caveats", caveats},
          {"zero_length", degenerate},
          {"failures", failures}};
}

// Checks that only apply to claimed global optima.
json global_summaries(const SolvedTree& tree, const BoundStrategy& strategy, double tol) {
  json out = json::object();
  if (const auto* db = std::get_if<DegreeBound>(&strategy)) {
    out["degree_window"] = degree_summary(tree, db->phi, tol);
    out["overlaps"] = overlap_summary(tree, db->phi);
  } else {
    out["angles"] = angle_summary(tree);
    out["overlaps"] = overlap_summary(tree, std::nullopt);
  }
  return out;
}

json admissibility(const Topology& topology, const BoundStrategy& strategy) {
  json messages = json::array();
  for (const Violation& v : validate_topology(topology, strategy)) messages.push_back(v.message);
  return {{"pass", messages.empty()}, {"violations", messages}};
}

void add_seed(json& extra, const Options& options) {
  if (options.seed) extra["seed"] = *options.seed;
}

json bounds_json(const Instance& instance, const BoundStrategy& strategy) {
  const int n = instance.num_sources();
  json out;
  if (const auto* eb = std::get_if<ExplicitBound>(&strategy)) {
    out["lower_bound_path"] = round12(lower_bound_path(instance, eb->k));
    out["steiner_budget"] = eb->k;
  } else if (const auto* nw = std::get_if<NodeWeighted>(&strategy)) {
    const BeadedTree bst = beaded_spanning_tree(instance, nw->c);
    const int b = steiner_count_bound(instance, nw->c);
    double lower = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= b; ++k) lower = std::min(lower, lower_bound_path(instance, k) + nw->c * k);
    out["lower_bound_path"] = round12(lower);
    out["bst_objective"] = round12(bst.objective);
    out["bst_steiner_count"] = bst.tree.topology.num_steiner();
    out["steiner_count_bound"] = b;
  } else {
    out["lower_bound_path"] = round12(lower_bound_path(instance, std::max(0, n - 1)));
    out["steiner_budget"] = std::max(0, n - 1);
  }
  return out;
}

}  // namespace

int solve_topology(const std::string& path, const Options& options, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    Document doc = load_document(path);
    if (!doc.topology) {
      err << "usage error: solve-topology needs a document with a \"topology\"\n";
      return static_cast<int>(kInputError);
    }
    const bool geometric = geo_solver_applies(doc.instance, *doc.topology);
    const SolvedTree tree = geometric ? solve_full_topology(doc.instance, *doc.topology).tree
                                      : solve_topology(doc.instance, *doc.topology);
    const double tol = options.tolerance * extent(doc.instance);
    ResultRecord record = make_result_record(tree, "topology", geometric ? "geometric" : "algebraic",
                                             objective(tree, doc.strategy));
    record.extra["certificates"] = {{"centroid", centroid_summary(tree, tol)},
                                    {"strategy_admissible", admissibility(tree.topology, doc.strategy)}};
    add_seed(record.extra, options);
    doc.result = std::move(record);
    out << emit_document(doc);
    return static_cast<int>(kSuccess);
  });
}

int exact(const std::string& path, const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Document doc = load_document(path);
    SearchOptions search;
    search.guard_n = options.guard_n;
    search.threads = options.threads;
    const SearchReport report = solve_exact(doc.instance, doc.strategy, search);
    const double tol = options.tolerance * extent(doc.instance);
    ResultRecord record = make_result_record(report.best, "exact", "enumeration", report.objective);
    json certificates = global_summaries(report.best, doc.strategy, tol);
    certificates["centroid"] = centroid_summary(report.best, tol);
    certificates["strategy_admissible"] = admissibility(report.best.topology, doc.strategy);
    record.extra["certificates"] = std::move(certificates);
    record.extra["search"] = {{"topologies_examined", report.topologies_examined},
                              {"topologies_pruned", report.topologies_pruned},
                              {"strategy", describe(report.strategy)},
                              {"guard_n", effective_guard(search)}};
    record.extra["bounds"] = bounds_json(doc.instance, doc.strategy);
    add_seed(record.extra, options);
    doc.topology = report.best.topology;
    doc.result = std::move(record);
    out << emit_document(doc);
    return static_cast<int>(kSuccess);
  });
}

int check(const std::string& path, const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = load_document(path);
    if (!doc.topology || !doc.result) {
      err << "usage error: check needs a result document with \"topology\" and \"result\"\n";
      return static_cast<int>(kInputError);
    }
    const SolvedTree tree = tree_from_document(doc);
    const ResultRecord& r = *doc.result;
    const double tol = options.tolerance * extent(doc.instance);
    json checks = json::object();
    checks["centroid"] = centroid_summary(tree, tol);

    const double cost_tol = options.tolerance * std::max(1.0, std::abs(tree.cost));
    checks["cost"] = {{"pass", std::abs(tree.cost - r.cost) <= cost_tol},
                      {"reported", r.cost},
                      {"recomputed", round12(tree.cost)}};
    bool flows_ok = r.flows.size() == static_cast<std::size_t>(tree.topology.num_edges());
    for (NodeId v = 0, i = 0; flows_ok && v < tree.topology.num_nodes(); ++v) {
      if (tree.topology.is_sink(v)) continue;
      flows_ok = std::abs(tree.flows[v] - r.flows[i++]) <=
                 options.tolerance * std::max(1.0, tree.flows[v]);
    }
    checks["flows"] = {{"pass", flows_ok}};
    const double obj = objective(tree, doc.strategy);
    checks["objective"] = {
        {"pass", std::abs(obj - r.objective) <= options.tolerance * std::max(1.0, std::abs(obj))},
        {"reported", r.objective},
        {"recomputed", round12(obj)}};
    if (r.kind == "exact") {
      checks["strategy_admissible"] = admissibility(tree.topology, doc.strategy);
      const json global = global_summaries(tree, doc.strategy, tol);
      for (const auto& [name, value] : global.items()) checks[name] = value;
    }
    bool pass = true;
    for (const auto& [name, value] : checks.items()) pass = pass && value.at("pass").get<bool>();
    json report = {{"kind", r.kind}, {"pass", pass}, {"checks", checks}};
    if (options.seed) report["seed"] = *options.seed;
    out << report.dump(2) << "\n";
    return static_cast<int>(pass ? kSuccess : kCertificateFailure);
  });
}

int render(const std::string& path, const std::string& svg_path, const Options&,
           std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = load_document(path);
    std::string svg;
    if (doc.topology && doc.result) {
      svg = render_svg(tree_from_document(doc));
    } else if (doc.topology) {
      svg = render_svg(solve_topology(doc.instance, *doc.topology));
    } else {
      svg = render_instance_svg(doc.instance);
    }
    std::ofstream file(svg_path, std::ios::binary);
    if (!file) {
      err << "input error: cannot write " << svg_path << "\n";
      return static_cast<int>(kInputError);
    }
    file << svg;
    out << "wrote " << svg_path << "\n";
    return static_cast<int>(kSuccess);
  });
}

int bounds(const std::string& path, const Options& options, std::ostream& out,
           std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = load_document(path);
    json report = bounds_json(doc.instance, doc.strategy);
    report["strategy"] = describe(doc.strategy);
    if (options.seed) report["seed"] = *options.seed;
    out << report.dump(2) << "\n";
    return static_cast<int>(kSuccess);
  });
}

}  // namespace fqst::cli
