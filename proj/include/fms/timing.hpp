#ifndef FMS_TIMING_HPP
#define FMS_TIMING_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fms/instance.hpp"
#include "fms/ptpns.hpp"

// Resource timelines and the real cost g of a partial schedule. Operations
// are placed one at a time at the earliest start that respects both the job
// instance's own precedence and the resource's remaining capacity; placed
// operations are never moved.

namespace fms {

// Distinguished "unbounded" end time, ordered above every finite instant.
inline constexpr long long kInfiniteTime =
    std::numeric_limits<long long>::max();

// Half-open span [start, end); end may be kInfiniteTime.
struct Interval {
  long long start = 0;
  long long end = 0;
  bool operator==(const Interval&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  os << '[' << iv.start << ", ";
  if (iv.end == kInfiniteTime)
    os << "inf";
  else
    os << iv.end;
  return os << ')';
}

// One scheduled operation: job `instance` (0-based) runs step/alt (1-based)
// on `resource` during [start, end).
struct OpRecord {
  int job = -1;
  int instance = -1;
  int step = 0;
  int alt = 0;
  int place = -1;
  int resource = -1;
  long long start = 0;
  long long end = 0;
  bool operator==(const OpRecord&) const = default;
};

using Timeline = std::vector<OpRecord>;

// Number of operations in `x` running at instant `chi`.
inline int load_at(const Timeline& x, long long chi) {
  int n = 0;
  for (const OpRecord& rec : x)
    if (rec.start <= chi && chi < rec.end) ++n;
  return n;
}

// Maximal disjoint intervals where fewer than `u` operations of `x` run,
// sorted by start. Sweeps tagged endpoint events (ends before starts at equal
// times) to find the fully-loaded spans, then complements against [0, inf).
inline std::vector<Interval> find_idle_time(const Timeline& x, int u) {
  if (u < 1) throw std::invalid_argument("resource capacity must be >= 1");
  // kind 0 = end, 1 = start, so ends sort first at equal times.
  std::vector<std::pair<long long, int>> events;
  events.reserve(2 * x.size());
  for (const OpRecord& rec : x) {
    events.emplace_back(rec.start, 1);
    events.emplace_back(rec.end, 0);
  }
  std::sort(events.begin(), events.end());

  std::vector<Interval> full;
  int w = 0;
  long long full_since = 0;
  for (const auto& [chi, kind] : events) {
    if (kind == 1) {
      if (++w == u) full_since = chi;
    } else {
      if (w == u && full_since != chi) full.push_back({full_since, chi});
      --w;
    }
  }

  std::vector<Interval> idle;
  long long cursor = 0;
  for (const Interval& busy : full) {
    if (busy.start > cursor) idle.push_back({cursor, busy.start});
    cursor = busy.end;
  }
  idle.push_back({cursor, kInfiniteTime});
  return idle;
}

// Least start chi >= ready with [chi, chi + d) inside one idle interval.
// `idle` must come from find_idle_time, whose final interval is unbounded,
// so a feasible start always exists.
inline long long earliest_start(const std::vector<Interval>& idle,
                                long long ready, long long d) {
  for (const Interval& iv : idle) {
    long long chi = std::max(iv.start, ready);
    if (iv.end == kInfiniteTime || chi + d <= iv.end) return chi;
  }
  throw std::logic_error("idle intervals lack an unbounded tail");
}

// Where one job instance currently resides and when it last finished.
struct JobCursor {
  int place = -1;
  long long last_end = 0;
  bool operator==(const JobCursor&) const = default;
};

// Persistent timed snapshot: per-resource timelines, one cursor per job
// instance, and the realized cost g = max end over all placed operations.
struct ScheduleState {
  std::vector<Timeline> timelines;          // indexed by resource
  std::vector<std::vector<JobCursor>> cursors;  // [job][instance]
  long long g = 0;
  bool operator==(const ScheduleState&) const = default;
};

inline ScheduleState init_schedule_state(const PlaceTimedNet& tn) {
  ScheduleState st;
  st.timelines.resize(tn.num_resources());
  st.cursors.resize(tn.instance.jobs.size());
  for (std::size_t i = 0; i < tn.instance.jobs.size(); ++i)
    st.cursors[i].assign(tn.instance.jobs[i].lot,
                         JobCursor{tn.start_place[i], 0});
  return st;
}

namespace detail {

// The token moved by a transition is the instance of its job sitting on the
// consumed place with the smallest last-end time (ties: smallest index).
inline int pick_instance(const ScheduleState& st, int job, int from_place) {
  int best = -1;
  for (std::size_t k = 0; k < st.cursors[job].size(); ++k) {
    const JobCursor& cur = st.cursors[job][k];
    if (cur.place != from_place) continue;
    if (best < 0 || cur.last_end < st.cursors[job][best].last_end)
      best = static_cast<int>(k);
  }
  return best;
}

}  // namespace detail

// Replays `seq` (an implicit sequence plus its explicit transition, ordered
// firably) on a copy of `in`: every non-end transition books its output
// operation at the earliest feasible start at or after the moving instance's
// previous end. Returns the extended state; g is the updated real cost.
inline ScheduleState apply_events(const PlaceTimedNet& tn,
                                  const ScheduleState& in,
                                  const std::vector<std::size_t>& seq) {
  ScheduleState st = in;
  for (std::size_t t : seq) {
    if (t >= tn.net.num_transitions())
      throw std::out_of_range("transition index out of range");
    int job = tn.trans_job[t];
    int from = tn.trans_from_place[t];
    int inst = detail::pick_instance(st, job, from);
    if (inst < 0)
      throw std::logic_error("transition " + tn.net.transition_names[t] +
                             " is not firable: no instance of job " +
                             tn.instance.jobs[job].name + " at place " +
                             tn.net.place_names[from]);
    JobCursor& cur = st.cursors[job][inst];
    if (tn.is_end_transition[t]) {
      cur.place = tn.end_place[job];
      continue;
    }
    int p = tn.trans_op_place[t];
    int r = tn.place_resource[p];
    long long d = tn.delay[p];
    auto idle = find_idle_time(st.timelines[r], tn.capacity(r));
    long long s = earliest_start(idle, cur.last_end, d);
    st.timelines[r].push_back(OpRecord{job, inst, tn.place_step[p],
                                       tn.place_alt[p], p, r, s, s + d});
    cur = JobCursor{p, s + d};
    st.g = std::max(st.g, s + d);
  }
  return st;
}

// All placed operations sorted by (start, resource, job, instance) — the
// order used for CSV export.
inline std::vector<OpRecord> collect_records(const ScheduleState& st) {
  std::vector<OpRecord> all;
  for (const Timeline& x : st.timelines)
    all.insert(all.end(), x.begin(), x.end());
  std::sort(all.begin(), all.end(), [](const OpRecord& a, const OpRecord& b) {
    return std::tie(a.start, a.resource, a.job, a.instance) <
           std::tie(b.start, b.resource, b.job, b.instance);
  });
  return all;
}

inline const char* kScheduleCsvHeader = "job,instance,step,alt,resource,start,end";

// One row per operation; names for job and resource, 1-based instance.
inline void write_schedule_csv(std::ostream& os, const PlaceTimedNet& tn,
                               const ScheduleState& st) {
  os << kScheduleCsvHeader << '\n';
  for (const OpRecord& rec : collect_records(st))
    os << tn.instance.jobs[rec.job].name << ',' << rec.instance + 1 << ','
       << rec.step << ',' << rec.alt << ','
       << tn.instance.resources[rec.resource].name << ',' << rec.start << ','
       << rec.end << '\n';
}

namespace detail {

inline long long parse_csv_time(const std::string& field, int line) {
  std::size_t pos = 0;
  long long v;
  try {
    v = std::stoll(field, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + field + "'");
  }
  if (pos != field.size())
    throw ParseError(line, "expected an integer, got '" + field + "'");
  if (v < 0) throw ParseError(line, "times must be nonnegative");
  return v;
}

}  // namespace detail

// Parses a schedule CSV back into records resolved against `tn`. Structural
// and naming problems throw ParseError; whether the schedule is actually
// feasible is a separate question (see check_schedule).
inline std::vector<OpRecord> read_schedule_csv(std::istream& is,
                                               const PlaceTimedNet& tn) {
  std::vector<OpRecord> records;
  std::string raw;
  int line = 0;
  bool saw_header = false;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = detail::trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (!saw_header) {
      if (s != kScheduleCsvHeader)
        throw ParseError(line, "expected header '" +
                                   std::string(kScheduleCsvHeader) + "'");
      saw_header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(detail::trim(field));
    if (f.size() != 7)
      throw ParseError(line, "expected 7 comma-separated fields, got " +
                                 std::to_string(f.size()));
    OpRecord rec;
    rec.job = -1;
    for (std::size_t i = 0; i < tn.instance.jobs.size(); ++i)
      if (tn.instance.jobs[i].name == f[0]) rec.job = static_cast<int>(i);
    if (rec.job < 0) throw ParseError(line, "unknown job '" + f[0] + "'");
    const Job& job = tn.instance.jobs[rec.job];
    long long inst = detail::parse_csv_time(f[1], line);
    if (inst < 1 || inst > job.lot)
      throw ParseError(line, "instance out of range for job '" + f[0] + "'");
    rec.instance = static_cast<int>(inst) - 1;
    long long step = detail::parse_csv_time(f[2], line);
    if (step < 1 || step > static_cast<long long>(job.steps.size()))
      throw ParseError(line, "step out of range for job '" + f[0] + "'");
    rec.step = static_cast<int>(step);
    long long alt = detail::parse_csv_time(f[3], line);
    if (alt < 1 ||
        alt > static_cast<long long>(job.steps[rec.step - 1].size()))
      throw ParseError(line, "alternative out of range for step " + f[2] +
                                 " of job '" + f[0] + "'");
    rec.alt = static_cast<int>(alt);
    rec.place = tn.op_place[rec.job][rec.step - 1][rec.alt - 1];
    rec.resource = tn.place_resource[rec.place];
    if (tn.instance.resources[rec.resource].name != f[4])
      throw ParseError(line, "resource '" + f[4] + "' does not match " +
                                 "alternative " + f[3] + " of step " + f[2] +
                                 " (expected '" +
                                 tn.instance.resources[rec.resource].name +
                                 "')");
    rec.start = detail::parse_csv_time(f[5], line);
    rec.end = detail::parse_csv_time(f[6], line);
    if (rec.end <= rec.start)
      throw ParseError(line, "operation must end after it starts");
    records.push_back(rec);
  }
  if (!saw_header) throw ParseError(line, "missing header row");
  return records;
}

}  // namespace fms

#endif  // FMS_TIMING_HPP
