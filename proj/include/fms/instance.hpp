#ifndef FMS_INSTANCE_HPP
#define FMS_INSTANCE_HPP

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Job-shop instance description and its line-oriented text format:
//
//   # comment (anywhere on a line)
//   resource NAME CAPACITY
//   job NAME lot COUNT
//   step NAME:DURATION ( | NAME:DURATION )*
//
// Steps attach to the most recent job, in processing order. Each step lists
// one or more alternative (resource, duration) pairs. Consecutive steps of a
// job must not share a resource: a job would otherwise have to release and
// re-acquire the same unit in one move, which the net model does not allow.

namespace fms {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

struct ResourceDecl {
  std::string name;
  int capacity = 0;
  bool operator==(const ResourceDecl&) const = default;
};

struct Alternative {
  int resource = -1;  // index into Instance::resources
  int duration = 0;
  bool operator==(const Alternative&) const = default;
};

struct Job {
  std::string name;
  int lot = 0;
  std::vector<std::vector<Alternative>> steps;  // steps[j] = alternatives
  bool operator==(const Job&) const = default;
};

struct Instance {
  std::vector<ResourceDecl> resources;
  std::vector<Job> jobs;
  bool operator==(const Instance&) const = default;

  int resource_index(const std::string& name) const {
    for (std::size_t i = 0; i < resources.size(); ++i)
      if (resources[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline int parse_positive_int(const std::string& tok, int line,
                              const std::string& what) {
  if (tok.empty()) throw ParseError(line, "missing " + what);
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(line, what + " must be a positive integer, got '" +
                                  tok + "'");
  long long v = 0;
  for (char c : tok) {
    v = v * 10 + (c - '0');
    if (v > 1000000000) throw ParseError(line, what + " too large");
  }
  if (v <= 0) throw ParseError(line, what + " must be positive");
  return static_cast<int>(v);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// Validates a programmatically built instance; parse_instance covers the same
// rules with line numbers. Throws std::invalid_argument.
inline void validate_instance(const Instance& inst) {
  if (inst.resources.empty()) throw std::invalid_argument("no resources");
  if (inst.jobs.empty()) throw std::invalid_argument("no jobs");
  std::map<std::string, int> seen;
  for (const auto& r : inst.resources) {
    if (!detail::valid_name(r.name))
      throw std::invalid_argument("bad resource name '" + r.name + "'");
    if (seen.count(r.name))
      throw std::invalid_argument("duplicate resource '" + r.name + "'");
    seen[r.name] = 1;
    if (r.capacity <= 0)
      throw std::invalid_argument("resource " + r.name +
                                  " capacity must be positive");
  }
  std::map<std::string, int> job_seen;
  for (const auto& j : inst.jobs) {
    if (!detail::valid_name(j.name))
      throw std::invalid_argument("bad job name '" + j.name + "'");
    if (job_seen.count(j.name))
      throw std::invalid_argument("duplicate job '" + j.name + "'");
    job_seen[j.name] = 1;
    if (j.lot <= 0)
      throw std::invalid_argument("job " + j.name + " lot must be positive");
    if (j.steps.empty())
      throw std::invalid_argument("job " + j.name + " has no steps");
    for (std::size_t s = 0; s < j.steps.size(); ++s) {
      if (j.steps[s].empty())
        throw std::invalid_argument("job " + j.name + " step " +
                                    std::to_string(s + 1) +
                                    " has no alternatives");
      for (const auto& alt : j.steps[s]) {
        if (alt.resource < 0 ||
            alt.resource >= static_cast<int>(inst.resources.size()))
          throw std::invalid_argument("job " + j.name +
                                      " references unknown resource");
        if (alt.duration <= 0)
          throw std::invalid_argument("job " + j.name + " step " +
                                      std::to_string(s + 1) +
                                      " duration must be positive");
      }
      if (s > 0) {
        for (const auto& prev : j.steps[s - 1])
          for (const auto& cur : j.steps[s])
            if (prev.resource == cur.resource)
              throw std::invalid_argument(
                  "job " + j.name + ": steps " + std::to_string(s) + " and " +
                  std::to_string(s + 1) + " share resource " +
                  inst.resources[cur.resource].name);
      }
    }
  }
}

inline Instance parse_instance(const std::string& text) {
  Instance inst;
  std::map<std::string, int> res_index;
  std::map<std::string, int> job_names;
  std::vector<std::vector<int>> job_step_lines;  // for diagnostics
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    auto toks = detail::split_ws(line);
    const std::string& kw = toks[0];
    if (kw == "resource") {
      if (toks.size() != 3)
        throw ParseError(lineno, "expected: resource NAME CAPACITY");
      if (!detail::valid_name(toks[1]))
        throw ParseError(lineno, "bad resource name '" + toks[1] + "'");
      if (res_index.count(toks[1]))
        throw ParseError(lineno, "duplicate resource '" + toks[1] + "'");
      int cap = detail::parse_positive_int(toks[2], lineno, "capacity");
      res_index[toks[1]] = static_cast<int>(inst.resources.size());
      inst.resources.push_back({toks[1], cap});
    } else if (kw == "job") {
      if (toks.size() != 4 || toks[2] != "lot")
        throw ParseError(lineno, "expected: job NAME lot COUNT");
      if (!detail::valid_name(toks[1]))
        throw ParseError(lineno, "bad job name '" + toks[1] + "'");
      if (job_names.count(toks[1]))
        throw ParseError(lineno, "duplicate job '" + toks[1] + "'");
      int lot = detail::parse_positive_int(toks[3], lineno, "lot");
      job_names[toks[1]] = static_cast<int>(inst.jobs.size());
      inst.jobs.push_back({toks[1], lot, {}});
      job_step_lines.push_back({});
    } else if (kw == "step") {
      if (inst.jobs.empty())
        throw ParseError(lineno, "step before any job declaration");
      std::string body = detail::trim(line.substr(4));
      if (body.empty()) throw ParseError(lineno, "empty step");
      std::vector<Alternative> alts;
      std::size_t pos = 0;
      while (pos <= body.size()) {
        std::size_t bar = body.find('|', pos);
        std::string part = detail::trim(
            bar == std::string::npos ? body.substr(pos)
                                     : body.substr(pos, bar - pos));
        if (part.empty())
          throw ParseError(lineno, "empty alternative in step");
        std::size_t colon = part.find(':');
        if (colon == std::string::npos)
          throw ParseError(lineno, "expected NAME:DURATION, got '" + part +
                                       "'");
        std::string rname = detail::trim(part.substr(0, colon));
        std::string dtok = detail::trim(part.substr(colon + 1));
        auto it = res_index.find(rname);
        if (it == res_index.end())
          throw ParseError(lineno, "unknown resource '" + rname + "'");
        int dur = detail::parse_positive_int(dtok, lineno, "duration");
        alts.push_back({it->second, dur});
        if (bar == std::string::npos) break;
        pos = bar + 1;
      }
      Job& job = inst.jobs.back();
      if (!job.steps.empty()) {
        int stepno = static_cast<int>(job.steps.size()) + 1;
        for (const auto& prev : job.steps.back())
          for (const auto& cur : alts)
            if (prev.resource == cur.resource)
              throw ParseError(
                  lineno, "job " + job.name + ": steps " +
                              std::to_string(stepno - 1) + " and " +
                              std::to_string(stepno) + " share resource " +
                              inst.resources[cur.resource].name);
      }
      job.steps.push_back(std::move(alts));
      job_step_lines.back().push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (inst.resources.empty()) throw ParseError(lineno, "no resources declared");
  if (inst.jobs.empty()) throw ParseError(lineno, "no jobs declared");
  for (const auto& j : inst.jobs)
    if (j.steps.empty())
      throw ParseError(lineno, "job " + j.name + " has no steps");
  return inst;
}

// Canonical text form; parse_instance(print_instance(x)) == x.
inline std::string print_instance(const Instance& inst) {
  std::ostringstream out;
  for (const auto& r : inst.resources)
    out << "resource " << r.name << " " << r.capacity << "\n";
  for (const auto& j : inst.jobs) {
    out << "job " << j.name << " lot " << j.lot << "\n";
    for (const auto& step : j.steps) {
      out << "step ";
      for (std::size_t k = 0; k < step.size(); ++k) {
        if (k) out << " | ";
        out << inst.resources[step[k].resource].name << ":"
            << step[k].duration;
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace fms

#endif  // FMS_INSTANCE_HPP
