#ifndef FMS_HEURISTIC_HPP
#define FMS_HEURISTIC_HPP

#include <boost/rational.hpp>
#include <vector>

#include "fms/petri.hpp"
#include "fms/ptpns.hpp"

// Remaining-cost estimate for a marking: a weighted-operation-time matrix
// (duration over capacity), a weighted-resource-time matrix (minimal
// cumulative WOT from a place to its job's end place, per resource), and the
// bottleneck-resource estimate h built from them. All arithmetic is exact.

namespace fms {

using Rat = boost::rational<long long>;

// Theta(p, r): time a token in operation place p occupies one capacity unit
// of r, i.e. D(p)/U(r) for the place's own resource, zero elsewhere.
struct WotMatrix {
  std::vector<std::vector<Rat>> theta;  // [place][resource]
};

// Gamma(p, r): minimal cumulative WOT still ahead of a token at job place p
// before it reaches its end place, counting only work on r. The residing
// place's own operation is already booked when the token arrives, so it is
// not part of "ahead".
struct WrtMatrix {
  std::vector<std::vector<Rat>> gamma;  // [place][resource]
};

// Non-resource places a token can move to next: the operation places of the
// following step (start places feed step 1), then the job's end place.
inline std::vector<int> route_successors(const PlaceTimedNet& tn, int place) {
  std::vector<int> out;
  int job = tn.place_job[place];
  if (job < 0 || tn.kind[place] == PlaceKind::End) return out;
  int next_step;  // 1-based step the token enters next
  if (tn.kind[place] == PlaceKind::Start)
    next_step = 1;
  else
    next_step = tn.place_step[place] + 1;
  if (next_step > static_cast<int>(tn.op_place[job].size())) {
    out.push_back(tn.end_place[job]);
    return out;
  }
  return tn.op_place[job][next_step - 1];
}

inline WotMatrix wot(const PlaceTimedNet& tn) {
  WotMatrix w;
  w.theta.assign(tn.net.num_places(),
                 std::vector<Rat>(tn.num_resources(), Rat(0)));
  for (std::size_t p = 0; p < tn.net.num_places(); ++p)
    if (tn.kind[p] == PlaceKind::Operation)
      w.theta[p][tn.place_resource[p]] =
          Rat(tn.delay[p], tn.capacity(tn.place_resource[p]));
  return w;
}

inline WrtMatrix wrt(const PlaceTimedNet& tn) {
  WotMatrix w = wot(tn);
  WrtMatrix g;
  g.gamma.assign(tn.net.num_places(),
                 std::vector<Rat>(tn.num_resources(), Rat(0)));
  // Backward over each job's route graph; end places stay zero.
  for (std::size_t i = 0; i < tn.instance.jobs.size(); ++i) {
    int steps = static_cast<int>(tn.op_place[i].size());
    for (int j = steps; j-- > 0;)
      for (int p : tn.op_place[i][j])
        for (std::size_t r = 0; r < tn.num_resources(); ++r) {
          bool first = true;
          Rat best(0);
          for (int nxt : route_successors(tn, p)) {
            Rat cand = w.theta[nxt][r] + g.gamma[nxt][r];
            if (first || cand < best) best = cand;
            first = false;
          }
          g.gamma[p][r] = best;
        }
    int s = tn.start_place[i];
    for (std::size_t r = 0; r < tn.num_resources(); ++r) {
      bool first = true;
      Rat best(0);
      for (int nxt : route_successors(tn, s)) {
        Rat cand = w.theta[nxt][r] + g.gamma[nxt][r];
        if (first || cand < best) best = cand;
        first = false;
      }
      g.gamma[s][r] = best;
    }
  }
  return g;
}

// Bottleneck estimate: the heaviest per-resource sum of remaining weighted
// work over all tokens on job places.
inline Rat heuristic_cost(const PlaceTimedNet& tn, const WrtMatrix& g,
                          const Marking& m) {
  Rat best(0);
  for (std::size_t r = 0; r < tn.num_resources(); ++r) {
    Rat sum(0);
    for (std::size_t p = 0; p < tn.net.num_places(); ++p)
      if (tn.kind[p] != PlaceKind::Resource && m[p] > 0)
        sum += Rat(m[p]) * g.gamma[p][r];
    if (sum > best) best = sum;
  }
  return best;
}

}  // namespace fms

#endif  // FMS_HEURISTIC_HPP
