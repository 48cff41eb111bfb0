#ifndef FMS_SEARCH_HPP
#define FMS_SEARCH_HPP

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fms/brg.hpp"
#include "fms/heuristic.hpp"
#include "fms/ptpns.hpp"
#include "fms/timing.hpp"

// Generation-filtered beam search over basis markings. Each generation
// expands every surviving parent, keeps the best beta_l children per parent,
// merges them into a deduplicated candidate pool, and carries the best
// beta_g forward. Fitness is f = g + h with g from the incremental schedule
// replay and h from the bottleneck-resource estimate.

namespace fms {

// One explicit step of a trajectory: the explicit transition, its chosen
// minimal explanation, and the implicit firing order that realizes it.
struct Event {
  std::size_t transition = 0;
  std::vector<int> y;
  std::vector<std::size_t> suffix;  // witness ++ transition, firable in order
  bool operator==(const Event&) const = default;
};

struct SearchNode {
  Marking marking;
  std::vector<Event> events;
  ScheduleState schedule;  // g = schedule.g
  Rat h{0};
  Rat f{0};
};

// Pass kUnboundedBeam to disable either width.
inline constexpr long long kUnboundedBeam =
    std::numeric_limits<long long>::max();

struct BeamParams {
  long long beta_g = 50;
  long long beta_l = 5;
};

inline SearchNode make_root(const PlaceTimedNet& tn, const WrtMatrix& wrtm) {
  SearchNode root;
  root.marking = tn.m0;
  root.schedule = init_schedule_state(tn);
  root.h = heuristic_cost(tn, wrtm, tn.m0);
  root.f = root.h;
  return root;
}

// All successors of a node, one per (explicit transition, minimal
// explanation), in deterministic order: transitions as the net lists them,
// explanations lexicographically.
inline std::vector<SearchNode> expand(const PlaceTimedNet& tn,
                                      const BasisPartition& part,
                                      const WrtMatrix& wrtm,
                                      ExplanationCache& cache,
                                      const SearchNode& node) {
  std::vector<SearchNode> out;
  for (int t : part.explicit_list) {
    std::size_t te = static_cast<std::size_t>(t);
    for (const Explanation& ex : cache.lookup(node.marking, te)) {
      SearchNode next;
      next.marking = basis_successor(tn, part, node.marking, te, ex.y, cache);
      Event ev;
      ev.transition = te;
      ev.y = ex.y;
      ev.suffix = ex.witness;
      ev.suffix.push_back(te);
      next.schedule = apply_events(tn, node.schedule, ev.suffix);
      next.events = node.events;
      next.events.push_back(std::move(ev));
      next.h = heuristic_cost(tn, wrtm, next.marking);
      next.f = Rat(next.schedule.g) + next.h;
      out.push_back(std::move(next));
    }
  }
  return out;
}

struct GfbsResult {
  bool found = false;
  long long makespan = kInfiniteTime;
  std::vector<Event> events;
  ScheduleState schedule;
  long long expanded = 0;  // expand() calls across the whole run
  std::vector<std::vector<Marking>> open_trace;  // OPEN markings per generation
};

namespace detail {

// Ascending f, then g, then arrival order (the sorts below are stable).
inline bool better_fitness(const SearchNode& a, const SearchNode& b) {
  if (a.f != b.f) return a.f < b.f;
  return a.schedule.g < b.schedule.g;
}

}  // namespace detail

inline GfbsResult gfbs(const PlaceTimedNet& tn, const BasisPartition& part,
                       const BeamParams& params, ExplanationCache& cache) {
  if (params.beta_g < 1 || params.beta_l < 1)
    throw std::invalid_argument("beam widths must be at least 1");
  const WrtMatrix wrtm = wrt(tn);
  GfbsResult res;

  std::vector<SearchNode> open = {make_root(tn, wrtm)};
  while (!open.empty()) {
    res.open_trace.emplace_back();
    for (const SearchNode& node : open)
      res.open_trace.back().push_back(node.marking);

    std::vector<SearchNode> generation;
    for (const SearchNode& node : open) {
      if (node.marking == tn.mf) {
        res.found = true;
        res.makespan = node.schedule.g;
        res.events = node.events;
        res.schedule = node.schedule;
        return res;
      }
      std::vector<SearchNode> templist = expand(tn, part, wrtm, cache, node);
      ++res.expanded;
      std::stable_sort(templist.begin(), templist.end(),
                       detail::better_fitness);
      if (static_cast<long long>(templist.size()) > params.beta_l)
        templist.resize(params.beta_l);
      for (SearchNode& child : templist) {
        auto dup = std::find_if(generation.begin(), generation.end(),
                                [&](const SearchNode& gnode) {
                                  return gnode.marking == child.marking;
                                });
        if (dup == generation.end())
          generation.push_back(std::move(child));
        else if (child.schedule.g < dup->schedule.g)
          *dup = std::move(child);
      }
    }
    std::stable_sort(generation.begin(), generation.end(),
                     detail::better_fitness);
    if (static_cast<long long>(generation.size()) > params.beta_g)
      generation.resize(params.beta_g);
    open = std::move(generation);
  }
  return res;  // exhausted: (epsilon, infinity)
}

// The flat firing order realized by a trajectory, e.g. for schedule export.
inline std::vector<std::size_t> full_sequence(const std::vector<Event>& events) {
  std::vector<std::size_t> seq;
  for (const Event& ev : events)
    seq.insert(seq.end(), ev.suffix.begin(), ev.suffix.end());
  return seq;
}

}  // namespace fms

#endif  // FMS_SEARCH_HPP
