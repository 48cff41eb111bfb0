#ifndef FMS_BRG_HPP
#define FMS_BRG_HPP

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fms/instance.hpp"
#include "fms/petri.hpp"
#include "fms/ptpns.hpp"

// Basis reachability: transitions are split into explicit and implicit sets
// (the implicit-induced subnet must be acyclic, end transitions must stay
// explicit). A minimal explanation of an explicit transition t at marking m
// is a minimal firing-count vector over the implicit transitions whose firing
// enables t; the basis graph stores only the markings reached by
// "explanation + explicit transition" moves. The union of implicit reaches of
// the basis markings recovers the full reachable set.

namespace fms {

struct BasisPartition {
  std::vector<bool> is_implicit;   // per transition
  std::vector<int> implicit_list;  // implicit transitions in net order
  std::vector<int> explicit_list;  // explicit transitions in net order

  std::size_t num_implicit() const { return implicit_list.size(); }
};

inline BasisPartition make_partition(const PlaceTimedNet& tn,
                                     const std::vector<bool>& explicit_mask) {
  if (explicit_mask.size() != tn.net.num_transitions())
    throw std::invalid_argument("partition mask size mismatch");
  BasisPartition part;
  part.is_implicit.resize(tn.net.num_transitions());
  for (std::size_t t = 0; t < tn.net.num_transitions(); ++t) {
    part.is_implicit[t] = !explicit_mask[t];
    if (tn.is_end_transition[t] && part.is_implicit[t])
      throw std::invalid_argument("end transition " +
                                  tn.net.transition_names[t] +
                                  " must be explicit");
    if (part.is_implicit[t])
      part.implicit_list.push_back(static_cast<int>(t));
    else
      part.explicit_list.push_back(static_cast<int>(t));
  }
  if (!induced_subnet_acyclic(tn.net, part.is_implicit))
    throw std::invalid_argument("implicit-induced subnet has a cycle");
  return part;
}

// Greedy default: walk transitions in net order and make each one implicit
// whenever the implicit subnet stays acyclic (end transitions are skipped).
inline BasisPartition default_partition(const PlaceTimedNet& tn) {
  std::vector<bool> implicit_mask(tn.net.num_transitions(), false);
  for (std::size_t t = 0; t < tn.net.num_transitions(); ++t) {
    if (tn.is_end_transition[t]) continue;
    implicit_mask[t] = true;
    if (!induced_subnet_acyclic(tn.net, implicit_mask))
      implicit_mask[t] = false;
  }
  std::vector<bool> explicit_mask(tn.net.num_transitions());
  for (std::size_t t = 0; t < tn.net.num_transitions(); ++t)
    explicit_mask[t] = !implicit_mask[t];
  return make_partition(tn, explicit_mask);
}

// Partition file: one explicit-transition name per line, or the single word
// "auto" for the greedy default. '#' comments allowed.
inline BasisPartition parse_partition(const std::string& text,
                                      const PlaceTimedNet& tn) {
  std::vector<std::pair<int, std::string>> names;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string tok = detail::trim(raw);
    if (!tok.empty()) names.push_back({lineno, tok});
  }
  if (names.size() == 1 && names[0].second == "auto")
    return default_partition(tn);
  std::vector<bool> explicit_mask(tn.net.num_transitions(), false);
  for (const auto& [line, name] : names) {
    if (name == "auto")
      throw ParseError(line, "'auto' cannot be mixed with transition names");
    int t = find_transition(tn.net, name);
    if (t < 0) throw ParseError(line, "unknown transition '" + name + "'");
    explicit_mask[t] = true;
  }
  return make_partition(tn, explicit_mask);
}

// y is indexed over BasisPartition::implicit_list; witness is a firable
// implicit sequence (net transition indices) realizing y.
struct Explanation {
  std::vector<int> y;
  std::vector<std::size_t> witness;
};

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    return MarkingHash{}(v);
  }
};

inline bool covers(const Marking& m, const PetriNet& net, std::size_t t) {
  for (std::size_t p = 0; p < net.num_places(); ++p)
    if (m[p] < net.pre[p][t]) return false;
  return true;
}

// leq on firing-count vectors: the domination order of explanations.
inline bool vec_leq(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline std::vector<Explanation> compute_explanations(const PlaceTimedNet& tn,
                                                     const BasisPartition& part,
                                                     const Marking& m,
                                                     std::size_t t) {
  const PetriNet& net = tn.net;
  std::size_t ni = part.num_implicit();
  struct Item {
    std::vector<int> y;
    Marking m;
    std::vector<std::size_t> witness;
  };
  std::vector<Explanation> accepted;
  std::deque<Item> queue;
  std::unordered_map<std::vector<int>, char, VecHash> seen;
  queue.push_back({std::vector<int>(ni, 0), m, {}});
  seen.emplace(queue.front().y, 1);
  // Breadth-first over implicit firing-count vectors: items come off the
  // queue in nondecreasing total count, so any dominator of an enabling
  // vector is accepted before the dominated vector surfaces.
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    auto dominated = [&](const std::vector<int>& y) {
      for (const auto& acc : accepted)
        if (vec_leq(acc.y, y)) return true;
      return false;
    };
    if (covers(item.m, net, t)) {
      if (!dominated(item.y))
        accepted.push_back({std::move(item.y), std::move(item.witness)});
      continue;  // extensions would only dominate
    }
    for (std::size_t idx = 0; idx < ni; ++idx) {
      std::size_t ti = static_cast<std::size_t>(part.implicit_list[idx]);
      if (!covers(item.m, net, ti)) continue;
      std::vector<int> y2 = item.y;
      y2[idx] += 1;
      if (seen.count(y2) || dominated(y2)) continue;
      seen.emplace(y2, 1);
      Item next;
      next.y = std::move(y2);
      next.m = fire(net, item.m, ti);
      next.witness = item.witness;
      next.witness.push_back(ti);
      queue.push_back(std::move(next));
    }
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Explanation& a, const Explanation& b) { return a.y < b.y; });
  return accepted;
}

}  // namespace detail

// Memoises minimal-explanation sets per (marking, explicit transition).
class ExplanationCache {
 public:
  ExplanationCache(const PlaceTimedNet& tn, const BasisPartition& part)
      : tn_(tn), part_(part) {}

  const std::vector<Explanation>& lookup(const Marking& m, std::size_t t) {
    if (part_.is_implicit[t])
      throw std::logic_error("explanations are defined for explicit "
                             "transitions only");
    auto key = std::make_pair(m, t);
    auto it = memo_.find(key);
    if (it == memo_.end())
      it = memo_.emplace(key, detail::compute_explanations(tn_, part_, m, t))
               .first;
    return it->second;
  }

  const BasisPartition& partition() const { return part_; }
  const PlaceTimedNet& net() const { return tn_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<Marking, std::size_t>& k) const {
      return MarkingHash{}(k.first) * 31 + k.second;
    }
  };
  const PlaceTimedNet& tn_;
  const BasisPartition& part_;
  std::unordered_map<std::pair<Marking, std::size_t>, std::vector<Explanation>,
                     KeyHash>
      memo_;
};

inline std::vector<Explanation> minimal_explanations(const PlaceTimedNet& tn,
                                                     const BasisPartition& part,
                                                     const Marking& m,
                                                     std::size_t t) {
  if (part.is_implicit[t])
    throw std::logic_error(
        "explanations are defined for explicit transitions only");
  return detail::compute_explanations(tn, part, m, t);
}

// M' = m + C_I y + C(:,t). y must be one of the minimal explanations.
inline Marking basis_successor(const PlaceTimedNet& tn,
                               const BasisPartition& part, const Marking& m,
                               std::size_t t, const std::vector<int>& y,
                               ExplanationCache& cache) {
  const auto& ymin = cache.lookup(m, t);
  bool member = false;
  for (const auto& e : ymin)
    if (e.y == y) member = true;
  if (!member)
    throw std::logic_error("vector is not a minimal explanation of " +
                           tn.net.transition_names[t]);
  Marking out = m;
  for (std::size_t idx = 0; idx < y.size(); ++idx) {
    std::size_t ti = static_cast<std::size_t>(part.implicit_list[idx]);
    for (std::size_t p = 0; p < tn.net.num_places(); ++p)
      out[p] += y[idx] * tn.net.incidence(p, ti);
  }
  for (std::size_t p = 0; p < tn.net.num_places(); ++p)
    out[p] += tn.net.incidence(p, t);
  return out;
}

struct BasisEdge {
  int src;
  std::size_t transition;
  std::vector<int> y;
  int dst;
};

struct BasisGraph {
  std::vector<Marking> nodes;  // nodes[0] == m0, BFS discovery order
  std::vector<BasisEdge> edges;
};

inline BasisGraph build_brg(const PlaceTimedNet& tn, const BasisPartition& part,
                            std::size_t max_markings, ExplanationCache& cache) {
  BasisGraph g;
  std::unordered_map<Marking, int, MarkingHash> index;
  g.nodes.push_back(tn.m0);
  index.emplace(tn.m0, 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    const Marking m = g.nodes[cur];  // copy: g.nodes may grow below
    for (int t : part.explicit_list) {
      for (const auto& e : cache.lookup(m, t)) {
        Marking next =
            basis_successor(tn, part, m, static_cast<std::size_t>(t), e.y,
                            cache);
        auto it = index.find(next);
        int dst;
        if (it == index.end()) {
          if (g.nodes.size() >= max_markings)
            throw TruncationError(max_markings);
          dst = static_cast<int>(g.nodes.size());
          g.nodes.push_back(std::move(next));
          index.emplace(g.nodes.back(), dst);
          queue.push_back(dst);
        } else {
          dst = it->second;
        }
        g.edges.push_back({cur, static_cast<std::size_t>(t), e.y, dst});
      }
    }
  }
  return g;
}

// All markings reachable from m using implicit transitions only (finite
// because the implicit subnet is acyclic). Discovery order, m first.
inline std::vector<Marking> implicit_reach(const PlaceTimedNet& tn,
                                           const BasisPartition& part,
                                           const Marking& m) {
  std::vector<Marking> out{m};
  std::unordered_map<Marking, char, MarkingHash> seen;
  seen.emplace(m, 1);
  std::deque<Marking> queue{m};
  while (!queue.empty()) {
    Marking cur = std::move(queue.front());
    queue.pop_front();
    for (int ti : part.implicit_list) {
      if (!detail::covers(cur, tn.net, static_cast<std::size_t>(ti))) continue;
      Marking next = fire(tn.net, cur, static_cast<std::size_t>(ti));
      if (seen.count(next)) continue;
      seen.emplace(next, 1);
      queue.push_back(next);
      out.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace fms

#endif  // FMS_BRG_HPP
