#ifndef FMS_TESTS_UTIL_HPP
#define FMS_TESTS_UTIL_HPP

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fms/instance.hpp"
#include "fms/ptpns.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(FMS_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline fms::PlaceTimedNet load_net(const std::string& name) {
  return fms::build_ptpns(fms::parse_instance(read_file(data_path(name))));
}

inline std::size_t T(const fms::PlaceTimedNet& tn, const std::string& name) {
  int t = fms::find_transition(tn.net, name);
  if (t < 0) throw std::runtime_error("no transition " + name);
  return static_cast<std::size_t>(t);
}

inline std::size_t P(const fms::PlaceTimedNet& tn, const std::string& name) {
  int p = fms::find_place(tn.net, name);
  if (p < 0) throw std::runtime_error("no place " + name);
  return static_cast<std::size_t>(p);
}

// Small valid random instances for property checks: a few resources and
// jobs, short routes, no resource shared by consecutive steps.
inline fms::Instance random_instance(std::mt19937& rng) {
  fms::Instance inst;
  int nres = 2 + static_cast<int>(rng() % 3);
  for (int r = 0; r < nres; ++r)
    inst.resources.push_back(
        {"r" + std::to_string(r + 1), 1 + static_cast<int>(rng() % 2)});
  int njobs = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < njobs; ++i) {
    fms::Job job;
    job.name = "b" + std::to_string(i + 1);
    job.lot = 1 + static_cast<int>(rng() % 2);
    int steps = 1 + static_cast<int>(rng() % 3);
    std::vector<int> prev_used;
    for (int j = 0; j < steps; ++j) {
      // No alternative may reuse a resource of the previous step.
      std::vector<int> avail;
      for (int r = 0; r < nres; ++r)
        if (std::find(prev_used.begin(), prev_used.end(), r) ==
            prev_used.end())
          avail.push_back(r);
      if (avail.empty()) break;
      std::shuffle(avail.begin(), avail.end(), rng);
      std::size_t nalts = std::min<std::size_t>(1 + rng() % 2, avail.size());
      std::vector<fms::Alternative> alts;
      prev_used.clear();
      for (std::size_t k = 0; k < nalts; ++k) {
        alts.push_back({avail[k], 1 + static_cast<int>(rng() % 9)});
        prev_used.push_back(avail[k]);
      }
      job.steps.push_back(alts);
    }
    inst.jobs.push_back(job);
  }
  return inst;
}

}  // namespace testutil

#endif
