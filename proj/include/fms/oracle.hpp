#ifndef FMS_ORACLE_HPP
#define FMS_ORACLE_HPP

#include <algorithm>
#include <map>
#include <queue>
#include <string>
#include <unordered_set>
#include <unordered_map>
#include <vector>

#include "fms/heuristic.hpp"
#include "fms/petri.hpp"
#include "fms/ptpns.hpp"
#include "fms/timing.hpp"

// Ground-truth instruments: an exact branch-and-bound search for the optimal
// makespan over timed states, an exhaustive enumerator that also computes
// the best completion through every timed state, and a schedule checker.
// These are deliberately independent of the beam search so they can sit in
// judgement over it; they only scale to desk-size instances.

namespace fms {

namespace detail {

// Minimal remaining processing time from a job place to its end place
// (excluding the residing place's own operation, which is already booked).
inline std::vector<long long> min_remaining(const PlaceTimedNet& tn) {
  std::vector<long long> rem(tn.net.num_places(), 0);
  for (std::size_t i = 0; i < tn.instance.jobs.size(); ++i) {
    int steps = static_cast<int>(tn.op_place[i].size());
    for (int j = steps; j-- > 0;)
      for (int p : tn.op_place[i][j]) {
        long long best = -1;
        for (int nxt : route_successors(tn, p)) {
          long long cand = tn.delay[nxt] + rem[nxt];
          if (best < 0 || cand < best) best = cand;
        }
        rem[p] = std::max<long long>(best, 0);
      }
    long long best = -1;
    for (int nxt : route_successors(tn, tn.start_place[i])) {
      long long cand = tn.delay[nxt] + rem[nxt];
      if (best < 0 || cand < best) best = cand;
    }
    rem[tn.start_place[i]] = std::max<long long>(best, 0);
  }
  return rem;
}

// Canonical encoding of a timed state. Job instances are interchangeable, so
// cursors are sorted per job and timeline records are reduced to busy
// intervals; states that differ only by instance labels collapse together.
inline std::vector<long long> canonical_key(const PlaceTimedNet& tn,
                                            const Marking& m,
                                            const ScheduleState& st) {
  std::vector<long long> key;
  for (int v : m) key.push_back(v);
  key.push_back(-1);
  for (const auto& instances : st.cursors) {
    std::vector<std::pair<long long, long long>> cur;
    for (const JobCursor& c : instances) cur.emplace_back(c.place, c.last_end);
    std::sort(cur.begin(), cur.end());
    for (const auto& [place, end] : cur) {
      key.push_back(place);
      key.push_back(end);
    }
    key.push_back(-1);
  }
  for (const Timeline& x : st.timelines) {
    std::vector<std::pair<long long, long long>> spans;
    for (const OpRecord& rec : x) spans.emplace_back(rec.start, rec.end);
    std::sort(spans.begin(), spans.end());
    for (const auto& [s, e] : spans) {
      key.push_back(s);
      key.push_back(e);
    }
    key.push_back(-1);
  }
  return key;
}

struct KeyHash {
  std::size_t operator()(const std::vector<long long>& key) const {
    std::size_t h = 1469598103934665603ull;
    for (long long v : key) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline long long rat_ceil(const Rat& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

}  // namespace detail

struct OracleResult {
  bool found = false;
  long long makespan = kInfiniteTime;
  long long states = 0;  // timed states taken from the frontier
};

// Exact minimal makespan by best-first search over timed states, ordered by
// an admissible lower bound (the realized cost, each instance's earliest
// possible completion, and the bottleneck workload estimate). Exploring the
// net's transitions in reverse order must not change the result; the flag
// exists so tests can assert that.
inline OracleResult oracle_optimal(const PlaceTimedNet& tn,
                                   std::size_t max_states = 1000000,
                                   bool reverse_order = false) {
  const WrtMatrix wrtm = wrt(tn);
  const std::vector<long long> rem = detail::min_remaining(tn);

  struct Entry {
    long long bound;
    long long seq;  // FIFO tie-break for determinism
    Marking marking;
    ScheduleState schedule;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    return std::tie(a.bound, a.seq) > std::tie(b.bound, b.seq);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> frontier(
      worse);
  std::unordered_set<std::vector<long long>, detail::KeyHash> seen;

  auto lower_bound = [&](const Marking& m, const ScheduleState& st) {
    long long lb = st.g;
    for (const auto& instances : st.cursors)
      for (const JobCursor& c : instances)
        lb = std::max(lb, c.last_end + rem[c.place]);
    lb = std::max(lb, detail::rat_ceil(heuristic_cost(tn, wrtm, m)));
    return lb;
  };

  long long seq = 0;
  OracleResult res;
  Entry root{lower_bound(tn.m0, init_schedule_state(tn)), seq++, tn.m0,
             init_schedule_state(tn)};
  frontier.push(std::move(root));
  while (!frontier.empty()) {
    Entry cur = frontier.top();
    frontier.pop();
    auto key = detail::canonical_key(tn, cur.marking, cur.schedule);
    if (!seen.insert(std::move(key)).second) continue;
    if (++res.states > static_cast<long long>(max_states))
      throw TruncationError(max_states);
    if (cur.marking == tn.mf) {
      res.found = true;
      res.makespan = cur.schedule.g;
      return res;
    }
    std::size_t nt = tn.net.num_transitions();
    for (std::size_t i = 0; i < nt; ++i) {
      std::size_t t = reverse_order ? nt - 1 - i : i;
      if (!enabled(tn.net, cur.marking, t)) continue;
      Entry next;
      next.marking = fire(tn.net, cur.marking, t);
      next.schedule = apply_events(tn, cur.schedule, {t});
      if (seen.count(detail::canonical_key(tn, next.marking, next.schedule)))
        continue;
      next.bound = lower_bound(next.marking, next.schedule);
      next.seq = seq++;
      frontier.push(std::move(next));
    }
  }
  return res;  // no complete schedule exists
}

// One timed state of the exhaustive enumeration. best_through is the minimal
// makespan over all complete schedules whose trajectory passes through this
// state, or kInfiniteTime if none reaches the final marking.
struct EnumeratedState {
  Marking marking;
  ScheduleState schedule;
  long long best_through = kInfiniteTime;
};

// Enumerates every reachable timed state (up to instance-relabeling) by
// layered breadth-first search, then folds best_through backward. Every
// firing advances exactly one job instance by one step, so discovery order
// is a topological order of the timed-state graph.
inline std::vector<EnumeratedState> oracle_enumerate(
    const PlaceTimedNet& tn, std::size_t max_states = 1000000) {
  std::vector<EnumeratedState> states;
  std::vector<std::vector<int>> succ;
  std::unordered_map<std::vector<long long>, int, detail::KeyHash> index;

  states.push_back({tn.m0, init_schedule_state(tn), kInfiniteTime});
  succ.emplace_back();
  index.emplace(detail::canonical_key(tn, tn.m0, states[0].schedule), 0);
  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    // Copy: states may reallocate while we expand.
    const Marking m = states[cur].marking;
    const ScheduleState st = states[cur].schedule;
    for (std::size_t t = 0; t < tn.net.num_transitions(); ++t) {
      if (!enabled(tn.net, m, t)) continue;
      Marking m2 = fire(tn.net, m, t);
      ScheduleState st2 = apply_events(tn, st, {t});
      auto key = detail::canonical_key(tn, m2, st2);
      auto it = index.find(key);
      int dst;
      if (it == index.end()) {
        if (states.size() >= max_states) throw TruncationError(max_states);
        dst = static_cast<int>(states.size());
        states.push_back({std::move(m2), std::move(st2), kInfiniteTime});
        succ.emplace_back();
        index.emplace(std::move(key), dst);
      } else {
        dst = it->second;
      }
      succ[cur].push_back(dst);
    }
  }
  for (std::size_t i = states.size(); i-- > 0;) {
    if (states[i].marking == tn.mf) {
      states[i].best_through = states[i].schedule.g;
      continue;
    }
    for (int nxt : succ[i])
      states[i].best_through =
          std::min(states[i].best_through, states[nxt].best_through);
  }
  return states;
}

struct CheckResult {
  bool feasible = false;
  long long makespan = 0;
  std::vector<std::string> problems;
};

// Validates a row set against the instance: durations, complete routes per
// job instance, step order without overlap, and resource capacities. The
// makespan is reported even when infeasible.
inline CheckResult check_schedule(const PlaceTimedNet& tn,
                                  const std::vector<OpRecord>& rows) {
  CheckResult res;
  auto complain = [&](const std::string& text) { res.problems.push_back(text); };

  std::map<std::pair<int, int>, std::vector<OpRecord>> per_instance;
  std::vector<Timeline> timelines(tn.num_resources());
  for (const OpRecord& rec : rows) {
    res.makespan = std::max(res.makespan, rec.end);
    std::string where = "job " + tn.instance.jobs[rec.job].name + " instance " +
                        std::to_string(rec.instance + 1) + " step " +
                        std::to_string(rec.step);
    if (rec.end - rec.start != tn.delay[rec.place])
      complain(where + ": duration " + std::to_string(rec.end - rec.start) +
               " does not match the declared " +
               std::to_string(tn.delay[rec.place]));
    per_instance[{rec.job, rec.instance}].push_back(rec);
    timelines[rec.resource].push_back(rec);
  }

  for (std::size_t i = 0; i < tn.instance.jobs.size(); ++i) {
    const Job& job = tn.instance.jobs[i];
    for (int k = 0; k < job.lot; ++k) {
      auto it = per_instance.find({static_cast<int>(i), k});
      std::string who =
          "job " + job.name + " instance " + std::to_string(k + 1);
      if (it == per_instance.end()) {
        complain(who + ": no operations scheduled");
        continue;
      }
      auto& ops = it->second;
      std::sort(ops.begin(), ops.end(),
                [](const OpRecord& a, const OpRecord& b) {
                  return std::tie(a.step, a.start) < std::tie(b.step, b.start);
                });
      bool steps_ok = ops.size() == job.steps.size();
      for (std::size_t j = 0; j < ops.size() && steps_ok; ++j)
        steps_ok = ops[j].step == static_cast<int>(j) + 1;
      if (!steps_ok) {
        complain(who + ": steps do not form the route 1.." +
                 std::to_string(job.steps.size()) + " exactly once each");
        continue;
      }
      for (std::size_t j = 1; j < ops.size(); ++j)
        if (ops[j].start < ops[j - 1].end)
          complain(who + ": step " + std::to_string(ops[j].step) +
                   " starts at " + std::to_string(ops[j].start) +
                   " before step " + std::to_string(ops[j - 1].step) +
                   " ends at " + std::to_string(ops[j - 1].end));
    }
  }

  for (std::size_t r = 0; r < tn.num_resources(); ++r)
    for (const OpRecord& rec : timelines[r]) {
      int load = load_at(timelines[r], rec.start);
      if (load > tn.capacity(static_cast<int>(r))) {
        complain("resource " + tn.instance.resources[r].name + " holds " +
                 std::to_string(load) + " operations at time " +
                 std::to_string(rec.start) + ", capacity is " +
                 std::to_string(tn.capacity(static_cast<int>(r))));
        break;  // one report per resource is enough
      }
    }

  res.feasible = res.problems.empty();
  return res;
}

}  // namespace fms

#endif  // FMS_ORACLE_HPP
