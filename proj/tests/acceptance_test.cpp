// Acceptance gate: the fixed checks this library must reproduce, one
// pass/fail line each. Runs standalone (no test framework) so the output is
// exactly the checklist; exits nonzero if any line fails.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fms/brg.hpp"
#include "fms/heuristic.hpp"
#include "fms/instance.hpp"
#include "fms/oracle.hpp"
#include "fms/petri.hpp"
#include "fms/ptpns.hpp"
#include "fms/search.hpp"
#include "fms/timing.hpp"
#include "example_net.hpp"
#include "util.hpp"

using namespace fms;
using testutil::example_partition;
using testutil::kBasisMarkings;
using testutil::T;
using testutil::unit;

namespace {

int failures = 0;

bool report(const std::string& name, bool ok) {
  std::cout << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
  if (!ok) ++failures;
  return ok;
}

PlaceTimedNet table1() { return testutil::load_net("table1.fms"); }
PlaceTimedNet table3() { return testutil::load_net("table3.fms"); }

GfbsResult run_gfbs(const PlaceTimedNet& tn, const BasisPartition& part,
                    long long beta_g, long long beta_l) {
  ExplanationCache cache(tn, part);
  return gfbs(tn, part, BeamParams{beta_g, beta_l}, cache);
}

// -- criteria 1-9: exact values from the worked examples ---------------------

bool c1_net_shape() {
  auto tn = table1();
  if (tn.net.num_places() != 15 || tn.net.num_transitions() != 10)
    return false;
  return reachability_graph(tn.net, tn.m0, 100000).markings.size() == 26;
}

bool c2_basis_compression() {
  auto tn = table1();
  auto part = example_partition(tn);
  ExplanationCache cache(tn, part);
  auto g = build_brg(tn, part, 100000, cache);
  if (g.nodes.size() != 11) return false;
  if (g.nodes[0] != tn.m0) return false;
  if (tn.mf != kBasisMarkings[10]) return false;
  for (const Marking& m : g.nodes)
    if (m == tn.mf) return true;
  return false;
}

bool c3_minimal_explanations() {
  auto tn = table1();
  auto part = example_partition(tn);
  auto at_root = minimal_explanations(tn, part, tn.m0, T(tn, "t121"));
  if (at_root.size() != 1 || at_root[0].y != unit(part, T(tn, "t111")))
    return false;
  auto at_m2 =
      minimal_explanations(tn, part, kBasisMarkings[2], T(tn, "tE1"));
  return at_m2.size() == 1 && at_m2[0].y == unit(part, T(tn, "t132"));
}

bool c4_idle_intervals() {
  Timeline busy;
  OpRecord a{};
  a.start = 25;
  a.end = 45;
  OpRecord b{};
  b.start = 26;
  b.end = 47;
  busy = {a, b};
  std::vector<Interval> want = {{0, 26}, {45, kInfiniteTime}};
  return find_idle_time(busy, 2) == want;
}

bool c5_replay_cost() {
  Instance inst = parse_instance(
      testutil::read_file(testutil::data_path("table1.fms")));
  for (auto& r : inst.resources) r.capacity = 2;
  for (auto& j : inst.jobs) j.lot = 2;
  auto tn = build_ptpns(inst);
  std::vector<std::size_t> prefix = {T(tn, "t111"), T(tn, "t122"),
                                     T(tn, "t211"), T(tn, "t221")};
  auto st = apply_events(tn, init_schedule_state(tn), prefix);
  if (st.g != 47) return false;
  st = apply_events(tn, st, {T(tn, "t132"), T(tn, "tE1")});
  return st.g == 72;
}

bool c6_fitness_triple() {
  auto tn = table1();
  auto part = example_partition(tn);
  auto wrtm = wrt(tn);
  ExplanationCache cache(tn, part);
  auto children = expand(tn, part, wrtm, cache, make_root(tn, wrtm));
  return children.size() == 3 && children[0].f == Rat(101) &&
         children[1].f == Rat(98) && children[2].f == Rat(96);
}

bool c7_beam_schedule() {
  auto tn = table3();
  auto res = run_gfbs(tn, default_partition(tn), 3, 2);
  if (!res.found || res.makespan != 21) return false;
  auto check = check_schedule(tn, collect_records(res.schedule));
  return check.feasible && check.makespan == 21;
}

bool c8_partition_invariance() {
  auto tn = table3();
  const std::vector<std::vector<std::string>> implicit_sets = {
      {"t111", "t141", "t211", "t241"},
      {"t121", "t132", "t151", "t221", "t241"},
      {"t121", "t122", "t151", "t211", "t231"},
      {"t121", "t132", "t151", "t211", "t231"},
      {"t122", "t131", "t151", "t211", "t231", "t251"},
      {"t111", "t131", "t132", "t151", "t211", "t231", "t251"},
  };
  for (const auto& names : implicit_sets) {
    std::vector<bool> exp(tn.net.num_transitions(), true);
    for (const auto& n : names) exp[T(tn, n)] = false;
    auto res = run_gfbs(tn, make_partition(tn, exp), 3, 2);
    if (!res.found || res.makespan != 21) return false;
  }
  return true;
}

bool c9_greedy_chain() {
  auto tn = table1();
  auto res = run_gfbs(tn, example_partition(tn), 1, 1);
  if (!res.found || res.makespan != 75) return false;
  std::vector<std::vector<Marking>> want = {{kBasisMarkings[0]},
                                            {kBasisMarkings[3]},
                                            {kBasisMarkings[5]},
                                            {kBasisMarkings[8]},
                                            {kBasisMarkings[10]}};
  return res.open_trace == want;
}

// -- criterion 10: property suites on random instances -----------------------

// Desk-size instances: at most three job copies over at most four resources,
// durations below ten.
std::vector<Instance> instance_pool(std::size_t count) {
  std::mt19937 rng(20260814);
  std::vector<Instance> pool;
  while (pool.size() < count) {
    Instance inst = testutil::random_instance(rng);
    long long copies = 0;
    for (const Job& job : inst.jobs) copies += job.lot;
    if (copies <= 3) pool.push_back(std::move(inst));
  }
  return pool;
}

bool suite_closure(const std::vector<Instance>& pool) {
  for (const Instance& inst : pool) {
    auto tn = build_ptpns(inst);
    auto part = default_partition(tn);
    ExplanationCache cache(tn, part);
    auto rg = reachability_graph(tn.net, tn.m0, 200000);
    auto brg = build_brg(tn, part, 200000, cache);
    std::set<Marking> covered;
    for (const Marking& m : brg.nodes)
      for (const Marking& r : implicit_reach(tn, part, m)) covered.insert(r);
    std::set<Marking> reachable(rg.markings.begin(), rg.markings.end());
    if (covered != reachable) {
      std::cerr << "closure gap on:\n" << print_instance(inst);
      return false;
    }
  }
  return true;
}

bool suite_explanations(const std::vector<Instance>& pool) {
  for (const Instance& inst : pool) {
    auto tn = build_ptpns(inst);
    auto part = default_partition(tn);
    ExplanationCache cache(tn, part);
    auto brg = build_brg(tn, part, 200000, cache);
    for (const Marking& m : brg.nodes)
      for (int t : part.explicit_list) {
        const auto& exps = cache.lookup(m, static_cast<std::size_t>(t));
        for (std::size_t i = 0; i < exps.size(); ++i)
          for (std::size_t j = 0; j < exps.size(); ++j) {
            if (i == j) continue;
            if (fms::detail::vec_leq(exps[i].y, exps[j].y))
              return false;  // antichain
            if (i < j && !std::lexicographical_compare(exps[i].y.begin(),
                                                       exps[i].y.end(),
                                                       exps[j].y.begin(),
                                                       exps[j].y.end()))
              return false;  // sorted, no duplicates
          }
        for (const Explanation& ex : exps) {
          Marking m2 = fire_sequence(tn.net, m, ex.witness);  // must be firable
          if (!enabled(tn.net, m2, static_cast<std::size_t>(t))) return false;
          auto fv = firing_vector(tn.net, ex.witness);
          for (std::size_t k = 0; k < part.implicit_list.size(); ++k)
            if (fv[part.implicit_list[k]] != ex.y[k]) return false;
          for (int e : part.explicit_list)
            if (fv[e] != 0) return false;
        }
      }
  }
  return true;
}

bool suite_oracle_soundness(const std::vector<Instance>& pool) {
  for (const Instance& inst : pool) {
    auto tn = build_ptpns(inst);
    auto part = default_partition(tn);
    auto best = oracle_optimal(tn, 300000);
    if (!best.found) return false;  // these instances always complete
    for (auto [bg, bl] : {std::pair<long long, long long>{1, 1},
                          {2, 2},
                          {50, 5}}) {
      auto res = run_gfbs(tn, part, bg, bl);
      if (!res.found) continue;  // narrow beams may strand; that is allowed
      if (res.makespan < best.makespan) {
        std::cerr << "beam beat the oracle on:\n" << print_instance(inst);
        return false;
      }
      auto check = check_schedule(tn, collect_records(res.schedule));
      if (!check.feasible || check.makespan != res.makespan) return false;
    }
    auto wrtm = wrt(tn);
    for (const EnumeratedState& s : oracle_enumerate(tn, 300000)) {
      if (s.best_through == kInfiniteTime) continue;
      if (heuristic_cost(tn, wrtm, s.marking) > Rat(s.best_through)) {
        std::cerr << "inadmissible estimate on:\n" << print_instance(inst);
        return false;
      }
    }
  }
  return true;
}

bool suite_conservation(const std::vector<Instance>& pool) {
  for (const Instance& inst : pool) {
    auto tn = build_ptpns(inst);
    auto rg = reachability_graph(tn.net, tn.m0, 200000);
    for (const Marking& m : rg.markings) {
      for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
        int tokens = m[tn.start_place[i]] + m[tn.end_place[i]];
        for (const auto& step : tn.op_place[i])
          for (int p : step) tokens += m[p];
        if (tokens != inst.jobs[i].lot) return false;
      }
      for (std::size_t r = 0; r < tn.num_resources(); ++r) {
        int tokens = m[tn.resource_place[r]];
        for (std::size_t p = 0; p < tn.net.num_places(); ++p)
          if (tn.kind[p] == PlaceKind::Operation &&
              tn.place_resource[p] == static_cast<int>(r))
            tokens += m[p];
        if (tokens != tn.capacity(static_cast<int>(r))) return false;
      }
    }
  }
  return true;
}

// A timed suite must also finish within its budget.
bool timed(bool (*suite)(const std::vector<Instance>&),
           const std::vector<Instance>& pool) {
  auto started = std::chrono::steady_clock::now();
  bool ok = suite(pool);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
  return ok && secs < 60;
}

// Larger externally-shaped instances must load and schedule end to end.
bool harness_demo_instances() {
  for (const std::string name : {"batch_demo.fms", "fms_demo.fms"}) {
    auto tn = testutil::load_net(name);
    auto res = run_gfbs(tn, default_partition(tn), 50, 5);
    if (!res.found) return false;
    auto check = check_schedule(tn, collect_records(res.schedule));
    if (!check.feasible || check.makespan != res.makespan) return false;
  }
  return true;
}

}  // namespace

int main() {
  report("criterion 1 (net shape and reachability count)", c1_net_shape());
  report("criterion 2 (basis-graph compression)", c2_basis_compression());
  report("criterion 3 (minimal explanations)", c3_minimal_explanations());
  report("criterion 4 (idle-interval computation)", c4_idle_intervals());
  report("criterion 5 (schedule replay cost)", c5_replay_cost());
  report("criterion 6 (root fitness triple)", c6_fitness_triple());
  report("criterion 7 (beam schedule, six-machine instance)",
         c7_beam_schedule());
  report("criterion 8 (partition invariance)", c8_partition_invariance());
  report("criterion 9 (greedy generation chain)", c9_greedy_chain());

  auto pool = instance_pool(120);
  report("criterion 10a (implicit closure, 120 instances)",
         timed(suite_closure, pool));
  report("criterion 10b (explanation antichain and witnesses)",
         timed(suite_explanations, pool));
  report("criterion 10c (oracle soundness and admissibility)",
         timed(suite_oracle_soundness, pool));
  report("criterion 10d (token conservation)", timed(suite_conservation, pool));

  report("external-shape harness (demo instances)", harness_demo_instances());

  return failures == 0 ? 0 : 1;
}
