#ifndef FMS_EXPORT_HPP
#define FMS_EXPORT_HPP

#include <algorithm>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "fms/brg.hpp"
#include "fms/petri.hpp"
#include "fms/ptpns.hpp"
#include "fms/timing.hpp"

// Artifact emitters: Graphviz DOT for the net and its state graphs, and a
// self-contained SVG Gantt chart. Layout is fully deterministic and every
// coordinate is an integer, so emitted documents are byte-stable.

namespace fms {

// Token multiset of a marking, e.g. "{p111, pS2, r2, r3x2}".
inline std::string marking_label(const PetriNet& net, const Marking& m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t p = 0; p < net.num_places(); ++p) {
    if (m[p] == 0) continue;
    if (!first) out += ", ";
    first = false;
    out += net.place_names[p];
    if (m[p] > 1) out += "x" + std::to_string(m[p]);
  }
  return out + "}";
}

// The whole net: places as circles (resources filled), transitions as boxes,
// arcs from pre/post. Operation places carry their delay; marked places show
// their m0 token count.
inline void write_net_dot(std::ostream& os, const PlaceTimedNet& tn) {
  const PetriNet& net = tn.net;
  os << "digraph ptpns {\n  rankdir=LR;\n  node [fontsize=10];\n";
  for (std::size_t p = 0; p < net.num_places(); ++p) {
    os << "  \"" << net.place_names[p] << "\" [shape=";
    os << (tn.kind[p] == PlaceKind::Resource ? "ellipse, style=filled, "
                                               "fillcolor=lightgrey"
                                             : "circle");
    os << ", label=\"" << net.place_names[p];
    if (tn.delay[p] > 0) os << "\\nd=" << tn.delay[p];
    if (tn.m0[p] > 0) os << "\\n(" << tn.m0[p] << ")";
    os << "\"];\n";
  }
  for (std::size_t t = 0; t < net.num_transitions(); ++t)
    os << "  \"" << net.transition_names[t]
       << "\" [shape=box, height=0.2, label=\"" << net.transition_names[t]
       << "\"];\n";
  for (std::size_t p = 0; p < net.num_places(); ++p)
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
      if (net.pre[p][t])
        os << "  \"" << net.place_names[p] << "\" -> \""
           << net.transition_names[t] << "\";\n";
      if (net.post[p][t])
        os << "  \"" << net.transition_names[t] << "\" -> \""
           << net.place_names[p] << "\";\n";
    }
  os << "}\n";
}

// Reachability graph: nodes M0.., edges labeled with the fired transition.
inline void write_rg_dot(std::ostream& os, const PetriNet& net,
                         const ReachabilityGraph& rg) {
  os << "digraph rg {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n";
  for (std::size_t i = 0; i < rg.markings.size(); ++i)
    os << "  M" << i << " [label=\"M" << i << "\\n"
       << marking_label(net, rg.markings[i]) << "\"];\n";
  for (const ReachEdge& e : rg.edges)
    os << "  M" << e.src << " -> M" << e.dst << " [label=\""
       << net.transition_names[e.transition] << "\"];\n";
  os << "}\n";
}

// Basis reachability graph: edges carry the explicit transition and, when the
// explanation is non-empty, the implicit firing vector behind it.
inline void write_brg_dot(std::ostream& os, const PetriNet& net,
                          const BasisGraph& g) {
  os << "digraph brg {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    os << "  M" << i << " [label=\"M" << i << "\\n"
       << marking_label(net, g.nodes[i]) << "\"];\n";
  for (const BasisEdge& e : g.edges) {
    os << "  M" << e.src << " -> M" << e.dst << " [label=\""
       << net.transition_names[e.transition];
    std::string y;
    for (std::size_t t = 0; t < e.y.size(); ++t)
      for (int k = 0; k < e.y[t]; ++k)
        y += (y.empty() ? "" : " ") + net.transition_names[t];
    if (!y.empty()) os << " | y: " << y;
    os << "\"];\n";
  }
  os << "}\n";
}

// Gantt geometry: time u maps to x = kGanttLeft + u * kGanttScale.
inline constexpr long long kGanttLeft = 40;
inline constexpr long long kGanttScale = 20;

namespace detail {

inline constexpr long long kLaneHeight = 24;
inline constexpr long long kGanttTop = 16;

struct GanttBar {
  OpRecord rec;
  int lane;  // global lane index, one lane per resource unit
};

// One lane per capacity unit; bars are packed first-fit in record order, and
// an overloaded (infeasible) schedule falls back to the lane that frees up
// first so every record is still drawn.
inline std::vector<GanttBar> assign_lanes(const PlaceTimedNet& tn,
                                          std::vector<OpRecord> rows) {
  std::sort(rows.begin(), rows.end(), [](const OpRecord& a, const OpRecord& b) {
    return std::tie(a.resource, a.start, a.end, a.job, a.instance) <
           std::tie(b.resource, b.start, b.end, b.job, b.instance);
  });
  std::vector<int> lane_base(tn.num_resources() + 1, 0);
  for (std::size_t r = 0; r < tn.num_resources(); ++r)
    lane_base[r + 1] = lane_base[r] + tn.capacity(static_cast<int>(r));
  std::vector<long long> busy_until(lane_base.back(), 0);
  std::vector<GanttBar> bars;
  for (const OpRecord& rec : rows) {
    int first = lane_base[rec.resource];
    int last = lane_base[rec.resource + 1];
    int pick = first;
    for (int lane = first; lane < last; ++lane) {
      if (busy_until[lane] <= rec.start) {
        pick = lane;
        break;
      }
      if (busy_until[lane] < busy_until[pick]) pick = lane;
    }
    busy_until[pick] = std::max(busy_until[pick], rec.end);
    bars.push_back({rec, pick});
  }
  return bars;
}

}  // namespace detail

// Self-contained SVG: one horizontal lane per resource unit, one labeled
// <rect class="op"> per operation record, a time axis in instance units. An
// empty record set still yields the lanes and the axis.
inline void emit_gantt(std::ostream& os, const PlaceTimedNet& tn,
                       const std::vector<OpRecord>& rows) {
  using detail::kGanttTop;
  using detail::kLaneHeight;

  long long horizon = 0;
  for (const OpRecord& rec : rows) horizon = std::max(horizon, rec.end);
  const auto bars = detail::assign_lanes(tn, rows);
  long long lanes = 0;
  for (std::size_t r = 0; r < tn.num_resources(); ++r)
    lanes += tn.capacity(static_cast<int>(r));

  const long long axis_y = kGanttTop + lanes * kLaneHeight;
  const long long width = kGanttLeft + horizon * kGanttScale + 30;
  const long long height = axis_y + 30;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  os << "  <style>.op { fill: #9ec5e8; stroke: #255a85; } "
        ".grid { stroke: #cccccc; } .axis { stroke: #333333; }</style>\n";

  // Lane separators and labels (resource name, unit index when capacity > 1).
  long long lane = 0;
  for (std::size_t r = 0; r < tn.num_resources(); ++r)
    for (int u = 0; u < tn.capacity(static_cast<int>(r)); ++u, ++lane) {
      long long y = kGanttTop + lane * kLaneHeight;
      os << "  <line class=\"grid\" x1=\"" << kGanttLeft << "\" y1=\"" << y
         << "\" x2=\"" << width - 10 << "\" y2=\"" << y << "\"/>\n";
      std::string name = tn.instance.resources[r].name;
      if (tn.capacity(static_cast<int>(r)) > 1)
        name += "#" + std::to_string(u + 1);
      os << "  <text x=\"4\" y=\"" << y + kLaneHeight / 2 + 4 << "\">" << name
         << "</text>\n";
    }

  // Time axis with a tick at every unit and a number every five.
  os << "  <line class=\"axis\" x1=\"" << kGanttLeft << "\" y1=\"" << axis_y
     << "\" x2=\"" << width - 10 << "\" y2=\"" << axis_y << "\"/>\n";
  for (long long u = 0; u <= horizon; ++u) {
    long long x = kGanttLeft + u * kGanttScale;
    long long len = (u % 5 == 0) ? 6 : 3;
    os << "  <line class=\"axis\" x1=\"" << x << "\" y1=\"" << axis_y
       << "\" x2=\"" << x << "\" y2=\"" << axis_y + len << "\"/>\n";
    if (u % 5 == 0)
      os << "  <text x=\"" << x - 3 << "\" y=\"" << axis_y + 18 << "\">" << u
         << "</text>\n";
  }

  for (const detail::GanttBar& bar : bars) {
    long long x = kGanttLeft + bar.rec.start * kGanttScale;
    long long w = (bar.rec.end - bar.rec.start) * kGanttScale;
    long long y = kGanttTop + bar.lane * kLaneHeight + 3;
    std::string label = tn.instance.jobs[bar.rec.job].name;
    if (tn.instance.jobs[bar.rec.job].lot > 1)
      label += "." + std::to_string(bar.rec.instance + 1);
    os << "  <rect class=\"op\" x=\"" << x << "\" y=\"" << y << "\" width=\""
       << w << "\" height=\"" << kLaneHeight - 6 << "\"/>\n";
    os << "  <text x=\"" << x + 3 << "\" y=\"" << y + 13 << "\">" << label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace fms

#endif  // FMS_EXPORT_HPP
