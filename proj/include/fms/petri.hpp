#ifndef FMS_PETRI_HPP
#define FMS_PETRI_HPP

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

// Untimed place/transition nets: markings, firing, reachability, and the
// acyclicity test used to validate basis partitions. Timing lives elsewhere.

namespace fms {

// Token count per place, indexed as in PetriNet::place_names.
using Marking = std::vector<int>;

struct MarkingHash {
  std::size_t operator()(const Marking& m) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : m) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

// Ordinary net: all arc weights are 0 or 1. pre/post are place x transition.
struct PetriNet {
  std::vector<std::string> place_names;
  std::vector<std::string> transition_names;
  std::vector<std::vector<int>> pre;   // pre[p][t] = 1 iff p is an input of t
  std::vector<std::vector<int>> post;  // post[p][t] = 1 iff p is an output of t

  std::size_t num_places() const { return place_names.size(); }
  std::size_t num_transitions() const { return transition_names.size(); }

  int incidence(std::size_t p, std::size_t t) const {
    return post[p][t] - pre[p][t];
  }
};

// Thrown when a state-space walk hits its node cap.
struct TruncationError : std::runtime_error {
  explicit TruncationError(std::size_t cap)
      : std::runtime_error("state cap of " + std::to_string(cap) +
                           " markings exceeded") {}
};

inline void check_transition_index(const PetriNet& net, std::size_t t) {
  if (t >= net.num_transitions())
    throw std::out_of_range("transition index " + std::to_string(t) +
                            " out of range");
}

inline bool enabled(const PetriNet& net, const Marking& m, std::size_t t) {
  check_transition_index(net, t);
  for (std::size_t p = 0; p < net.num_places(); ++p)
    if (m[p] < net.pre[p][t]) return false;
  return true;
}

inline Marking fire(const PetriNet& net, const Marking& m, std::size_t t) {
  if (!enabled(net, m, t))
    throw std::logic_error("transition " + net.transition_names[t] +
                           " is not enabled");
  Marking out = m;
  for (std::size_t p = 0; p < net.num_places(); ++p)
    out[p] += net.incidence(p, t);
  return out;
}

// Fires seq left to right; reports the position of the first disabled prefix.
inline Marking fire_sequence(const PetriNet& net, const Marking& m,
                             const std::vector<std::size_t>& seq) {
  Marking cur = m;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    check_transition_index(net, seq[i]);
    if (!enabled(net, cur, seq[i]))
      throw std::logic_error("sequence disabled at position " +
                             std::to_string(i) + " (" +
                             net.transition_names[seq[i]] + ")");
    cur = fire(net, cur, seq[i]);
  }
  return cur;
}

// y_sigma: per-transition occurrence counts of a sequence.
inline std::vector<int> firing_vector(const PetriNet& net,
                                      const std::vector<std::size_t>& seq) {
  std::vector<int> y(net.num_transitions(), 0);
  for (std::size_t t : seq) {
    check_transition_index(net, t);
    y[t] += 1;
  }
  return y;
}

struct ReachEdge {
  int src;
  std::size_t transition;
  int dst;
};

struct ReachabilityGraph {
  std::vector<Marking> markings;  // markings[0] == m0, BFS discovery order
  std::vector<ReachEdge> edges;
};

// Breadth-first reachability with transitions tried in index order, so node
// numbering is deterministic. Throws TruncationError past max_markings.
inline ReachabilityGraph reachability_graph(const PetriNet& net,
                                            const Marking& m0,
                                            std::size_t max_markings) {
  ReachabilityGraph g;
  std::unordered_map<Marking, int, MarkingHash> index;
  g.markings.push_back(m0);
  index.emplace(m0, 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
      if (!enabled(net, g.markings[cur], t)) continue;
      Marking next = fire(net, g.markings[cur], t);
      auto it = index.find(next);
      int dst;
      if (it == index.end()) {
        if (g.markings.size() >= max_markings)
          throw TruncationError(max_markings);
        dst = static_cast<int>(g.markings.size());
        g.markings.push_back(std::move(next));
        index.emplace(g.markings.back(), dst);
        queue.push_back(dst);
      } else {
        dst = it->second;
      }
      g.edges.push_back({cur, t, dst});
    }
  }
  return g;
}

// True iff the subnet induced by the given transitions (plus all places, with
// only the arcs touching those transitions) has no directed cycle.
inline bool induced_subnet_acyclic(const PetriNet& net,
                                   const std::vector<bool>& in_subset) {
  if (in_subset.size() != net.num_transitions())
    throw std::invalid_argument("subset mask size mismatch");
  std::size_t np = net.num_places(), nt = net.num_transitions();
  // Node ids: places are 0..np-1, transition t is np+t.
  std::vector<std::vector<int>> adj(np + nt);
  for (std::size_t t = 0; t < nt; ++t) {
    if (!in_subset[t]) continue;
    for (std::size_t p = 0; p < np; ++p) {
      if (net.pre[p][t]) adj[p].push_back(static_cast<int>(np + t));
      if (net.post[p][t]) adj[np + t].push_back(static_cast<int>(p));
    }
  }
  // Iterative three-colour DFS.
  std::vector<char> color(np + nt, 0);  // 0 white, 1 grey, 2 black
  std::vector<std::pair<int, std::size_t>> stack;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (color[s] != 0) continue;
    stack.push_back({static_cast<int>(s), 0});
    color[s] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < adj[node].size()) {
        int child = adj[node][next++];
        if (color[child] == 1) return false;  // back edge: cycle
        if (color[child] == 0) {
          color[child] = 1;
          stack.push_back({child, 0});
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

}  // namespace fms

#endif  // FMS_PETRI_HPP
