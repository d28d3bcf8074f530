#include "fdcolor/documents.hpp"

namespace fdcolor {

namespace {

Document vertex_list(const VertexSet& s) {
  Document out = Document::array();
  for (auto v : s.members()) out.push_back(v);
  return out;
}

Document distance_value(std::size_t d) {
  if (d == kInfiniteDistance) return "inf";
  return d;
}

Document pair_record(const PairRecord& r) {
  Document out;
  out["a"] = vertex_list(r.a);
  out["b"] = vertex_list(r.b);
  out["distance"] = distance_value(r.distance);
  out["metric"] = r.metric;
  if (r.metric == "tv") {
    out["slot"] = r.slot.value_or(0);
    out["tv"] = r.tv;
    out["radius"] = r.radius;
  } else {
    out["discrepancy"] = r.exact_discrepancy.get_str();
  }
  out["independent"] = r.independent;
  return out;
}

}  // namespace

Document coloring_document(const Graph& g, const std::string& graph_descriptor,
                           std::uint64_t seed, const ColoringPlan& plan,
                           const ColorAssignment& colors) {
  Document doc;
  doc["kind"] = "coloring";
  doc["variant"] = to_string(plan.variant);
  doc["seed"] = seed;
  doc["graph"] = graph_descriptor;
  doc["vertex_count"] = g.vertex_count();
  doc["edge_count"] = g.edge_count();
  doc["degree_bound"] = plan.degree_bound;
  doc["palette"] = colors.q();
  doc["arity"] = colors.arity();
  doc["proper"] = check_properness(g, colors);

  Document levels = Document::array();
  for (std::size_t level = 0; level < plan.levels.size(); ++level) {
    const auto& lp = plan.levels[level];
    Document l;
    l["level"] = level;
    l["degree_bound"] = lp.degree_bound;
    l["first_slot"] = slot_of(plan.degree_bound, level, 1);
    l["stripped"] = lp.stripped;
    Document arcs = Document::array();
    for (const auto& a : lp.arcs) arcs.push_back({a.tail, a.head, a.label});
    l["arcs"] = std::move(arcs);
    Document comps = Document::array();
    for (std::size_t i = 0; i < lp.slots.size(); ++i) {
      for (const auto& c : lp.slots[i]) {
        Document entry;
        entry["label"] = i + 1;
        entry["topology"] = to_string(c.topology);
        entry["vertices"] = c.vertices;
        comps.push_back(std::move(entry));
      }
    }
    l["components"] = std::move(comps);
    levels.push_back(std::move(l));
  }
  doc["levels"] = std::move(levels);

  const auto flat = colors.flattened();
  Document vertices = Document::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Document tuple = Document::array();
    for (auto s : colors.tuple(v)) tuple.push_back(static_cast<int>(s) + 1);
    Document entry;
    entry["id"] = v;
    entry["tuple"] = std::move(tuple);
    entry["color"] = flat.empty() ? 0 : flat[v];
    vertices.push_back(std::move(entry));
  }
  doc["vertices"] = std::move(vertices);
  return doc;
}

Document report_document(const DependenceReport& report,
                         std::optional<std::size_t> smallest_passing) {
  Document doc;
  doc["kind"] = "dependence_report";
  doc["mode"] = report.mode;
  doc["variant"] = to_string(report.variant);
  doc["seed"] = report.seed;
  doc["k"] = report.k;
  doc["graph"] = report.graph;
  doc["verdict"] = report.pass ? "PASS" : "FAIL";
  if (report.mode == "exact") {
    doc["worst_discrepancy"] = report.worst_exact.get_str();
    if (smallest_passing) doc["smallest_passing_k"] = *smallest_passing;
  } else {
    doc["trials"] = report.trials;
    doc["bootstrap"] = report.bootstrap;
    doc["control_detected"] = report.control_detected;
  }
  doc["warnings"] = report.warnings;
  Document pairs = Document::array();
  for (const auto& r : report.records) pairs.push_back(pair_record(r));
  doc["pairs"] = std::move(pairs);
  if (report.mode != "exact") {
    Document controls = Document::array();
    for (const auto& r : report.controls) controls.push_back(pair_record(r));
    doc["controls"] = std::move(controls);
  }
  return doc;
}

std::string render(const Document& doc) { return doc.dump(2) + "\n"; }

}  // namespace fdcolor
