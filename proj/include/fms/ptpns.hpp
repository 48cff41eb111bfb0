#ifndef FMS_PTPNS_HPP
#define FMS_PTPNS_HPP

#include <set>
#include <string>
#include <vector>

#include "fms/instance.hpp"
#include "fms/petri.hpp"

// Place-timed Petri net built from a job-shop instance. Place layout per job:
// start place, one operation place per (step, alternative), end place; the
// resource places follow after all job places. Transitions per job: one start
// transition per alternative of step 1, then for each later step one
// transition per (target alternative, predecessor alternative) pair, then one
// end transition per alternative of the last step. Naming follows the usual
// p111/t111 convention (job, step, alternative), with underscores once an
// index needs more than one digit.

namespace fms {

enum class PlaceKind { Start, Operation, End, Resource };

struct PlaceTimedNet {
  PetriNet net;
  Instance instance;

  std::vector<PlaceKind> kind;      // per place
  std::vector<int> delay;          // D(p): operation duration, else 0
  std::vector<int> place_job;      // job index, -1 for resource places
  std::vector<int> place_step;     // 1-based step of an operation place
  std::vector<int> place_alt;      // 1-based alternative of an operation place
  std::vector<int> place_resource; // resource index (Operation/Resource), -1

  std::vector<int> start_place;    // per job
  std::vector<int> end_place;      // per job
  std::vector<std::vector<std::vector<int>>> op_place;  // [job][step][alt]
  std::vector<int> resource_place; // per resource index

  std::vector<bool> is_end_transition;  // T_En mask
  std::vector<int> trans_job;        // per transition
  std::vector<int> trans_op_place;   // operation place produced, -1 for T_En
  std::vector<int> trans_from_place; // job place consumed (start/op place)

  Marking m0, mf;

  int capacity(int resource) const {
    return instance.resources[resource].capacity;
  }
  std::size_t num_resources() const { return instance.resources.size(); }
};

namespace detail {

inline std::string index_name(const std::string& prefix, int i, int j, int k) {
  if (i <= 9 && j <= 9 && k <= 9)
    return prefix + std::to_string(i) + std::to_string(j) + std::to_string(k);
  return prefix + std::to_string(i) + "_" + std::to_string(j) + "_" +
         std::to_string(k);
}

}  // namespace detail

inline PlaceTimedNet build_ptpns(const Instance& inst) {
  validate_instance(inst);
  PlaceTimedNet tn;
  tn.instance = inst;
  PetriNet& net = tn.net;

  auto add_place = [&](const std::string& name, PlaceKind kind, int delay,
                       int job, int step, int alt, int resource) {
    net.place_names.push_back(name);
    tn.kind.push_back(kind);
    tn.delay.push_back(delay);
    tn.place_job.push_back(job);
    tn.place_step.push_back(step);
    tn.place_alt.push_back(alt);
    tn.place_resource.push_back(resource);
    return static_cast<int>(net.place_names.size()) - 1;
  };

  int njobs = static_cast<int>(inst.jobs.size());
  tn.op_place.resize(njobs);
  for (int i = 0; i < njobs; ++i) {
    const Job& job = inst.jobs[i];
    tn.start_place.push_back(
        add_place("pS" + std::to_string(i + 1), PlaceKind::Start, 0, i, -1,
                  -1, -1));
    tn.op_place[i].resize(job.steps.size());
    for (int j = 0; j < static_cast<int>(job.steps.size()); ++j) {
      for (int k = 0; k < static_cast<int>(job.steps[j].size()); ++k) {
        const Alternative& alt = job.steps[j][k];
        tn.op_place[i][j].push_back(
            add_place(detail::index_name("p", i + 1, j + 1, k + 1),
                      PlaceKind::Operation, alt.duration, i, j + 1, k + 1,
                      alt.resource));
      }
    }
    tn.end_place.push_back(
        add_place("pE" + std::to_string(i + 1), PlaceKind::End, 0, i, -1, -1,
                  -1));
  }
  for (int r = 0; r < static_cast<int>(inst.resources.size()); ++r)
    tn.resource_place.push_back(add_place(inst.resources[r].name,
                                          PlaceKind::Resource, 0, -1, -1, -1,
                                          r));

  std::size_t np = net.num_places();
  auto add_transition = [&](const std::string& name, int job, int op_place,
                            int from_place, bool is_end) {
    net.transition_names.push_back(name);
    tn.trans_job.push_back(job);
    tn.trans_op_place.push_back(op_place);
    tn.trans_from_place.push_back(from_place);
    tn.is_end_transition.push_back(is_end);
    for (std::size_t p = 0; p < np; ++p) {
      net.pre[p].push_back(0);
      net.post[p].push_back(0);
    }
    return static_cast<int>(net.transition_names.size()) - 1;
  };
  net.pre.assign(np, {});
  net.post.assign(np, {});

  for (int i = 0; i < njobs; ++i) {
    const Job& job = inst.jobs[i];
    int last = static_cast<int>(job.steps.size()) - 1;
    // Start transitions: one per alternative of step 1.
    for (int k = 0; k < static_cast<int>(job.steps[0].size()); ++k) {
      int p = tn.op_place[i][0][k];
      int t = add_transition(detail::index_name("t", i + 1, 1, k + 1), i, p,
                             tn.start_place[i], false);
      net.pre[tn.start_place[i]][t] = 1;
      net.pre[tn.resource_place[job.steps[0][k].resource]][t] = 1;
      net.post[p][t] = 1;
    }
    // Interior transitions: (target alternative, predecessor alternative).
    for (int j = 1; j <= last; ++j) {
      int counter = 0;
      for (int k = 0; k < static_cast<int>(job.steps[j].size()); ++k) {
        for (int q = 0; q < static_cast<int>(job.steps[j - 1].size()); ++q) {
          ++counter;
          int from = tn.op_place[i][j - 1][q];
          int to = tn.op_place[i][j][k];
          int t = add_transition(detail::index_name("t", i + 1, j + 1, counter),
                                 i, to, from, false);
          net.pre[from][t] = 1;
          net.pre[tn.resource_place[job.steps[j][k].resource]][t] = 1;
          net.post[to][t] = 1;
          net.post[tn.resource_place[job.steps[j - 1][q].resource]][t] = 1;
        }
      }
    }
    // End transitions: one per alternative of the last step.
    for (int k = 0; k < static_cast<int>(job.steps[last].size()); ++k) {
      std::string name = job.steps[last].size() == 1
                             ? "tE" + std::to_string(i + 1)
                             : "tE" + std::to_string(i + 1) + "_" +
                                   std::to_string(k + 1);
      int from = tn.op_place[i][last][k];
      int t = add_transition(name, i, -1, from, true);
      net.pre[from][t] = 1;
      net.post[tn.end_place[i]][t] = 1;
      net.post[tn.resource_place[job.steps[last][k].resource]][t] = 1;
    }
  }

  std::set<std::string> names(net.place_names.begin(), net.place_names.end());
  names.insert(net.transition_names.begin(), net.transition_names.end());
  if (names.size() != net.num_places() + net.num_transitions())
    throw std::logic_error("internal: duplicate place/transition name");

  tn.m0.assign(np, 0);
  tn.mf.assign(np, 0);
  for (int i = 0; i < njobs; ++i) {
    tn.m0[tn.start_place[i]] = inst.jobs[i].lot;
    tn.mf[tn.end_place[i]] = inst.jobs[i].lot;
  }
  for (int r = 0; r < static_cast<int>(inst.resources.size()); ++r) {
    tn.m0[tn.resource_place[r]] = inst.resources[r].capacity;
    tn.mf[tn.resource_place[r]] = inst.resources[r].capacity;
  }
  return tn;
}

inline int find_transition(const PetriNet& net, const std::string& name) {
  for (std::size_t t = 0; t < net.num_transitions(); ++t)
    if (net.transition_names[t] == name) return static_cast<int>(t);
  return -1;
}

inline int find_place(const PetriNet& net, const std::string& name) {
  for (std::size_t p = 0; p < net.num_places(); ++p)
    if (net.place_names[p] == name) return static_cast<int>(p);
  return -1;
}

}  // namespace fms

#endif  // FMS_PTPNS_HPP
