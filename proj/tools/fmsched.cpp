// fmsched: command-line front end for the fms scheduling library.
//
// Subcommands: validate, net, rg, brg, schedule, oracle, check. Reports go
// to standard output as key=value lines; diagnostics go to standard error.
// Exit codes: 0 success, 1 infeasible or no solution, 2 usage or parse
// errors, 3 internal errors (a produced schedule failing re-validation).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fms/brg.hpp"
#include "fms/export.hpp"
#include "fms/instance.hpp"
#include "fms/oracle.hpp"
#include "fms/ptpns.hpp"
#include "fms/search.hpp"
#include "fms/timing.hpp"

namespace {

struct Options {
  std::string instance;
  std::string partition = "auto";
  long long beta_g = 50;
  long long beta_l = 5;
  std::size_t max_states = 1000000;
  std::string out = "schedule.csv";
  std::string gantt;
  std::string dot;
  std::string csv;  // check: schedule file to examine
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

fms::PlaceTimedNet load_net(const Options& opt) {
  return fms::build_ptpns(fms::parse_instance(slurp(opt.instance)));
}

fms::BasisPartition load_partition(const Options& opt,
                                   const fms::PlaceTimedNet& tn) {
  if (opt.partition == "auto") return fms::default_partition(tn);
  return fms::parse_partition(slurp(opt.partition), tn);
}

// Beam widths: 0 means unbounded.
long long beam(long long requested) {
  return requested == 0 ? fms::kUnboundedBeam : requested;
}

void partition_report(const fms::BasisPartition& part) {
  std::cout << "explicit=" << part.explicit_list.size() << "\n"
            << "implicit=" << part.implicit_list.size() << "\n";
}

long long elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - since)
      .count();
}

int run_validate(const Options& opt) {
  auto tn = load_net(opt);
  long long lots = 0;
  for (const fms::Job& job : tn.instance.jobs) lots += job.lot;
  std::cout << "instance=" << opt.instance << "\n"
            << "jobs=" << tn.instance.jobs.size() << "\n"
            << "lots=" << lots << "\n"
            << "resources=" << tn.num_resources() << "\n"
            << "places=" << tn.net.num_places() << "\n"
            << "transitions=" << tn.net.num_transitions() << "\n";
  return 0;
}

int run_net(const Options& opt) {
  auto tn = load_net(opt);
  std::size_t arcs = 0;
  for (std::size_t p = 0; p < tn.net.num_places(); ++p)
    for (std::size_t t = 0; t < tn.net.num_transitions(); ++t)
      arcs += tn.net.pre[p][t] + tn.net.post[p][t];
  std::cout << "instance=" << opt.instance << "\n"
            << "places=" << tn.net.num_places() << "\n"
            << "transitions=" << tn.net.num_transitions() << "\n"
            << "arcs=" << arcs << "\n";
  if (!opt.dot.empty()) {
    std::ostringstream os;
    fms::write_net_dot(os, tn);
    spill(opt.dot, os.str());
    std::cout << "dot=" << opt.dot << "\n";
  }
  return 0;
}

int run_rg(const Options& opt) {
  auto tn = load_net(opt);
  auto rg = fms::reachability_graph(tn.net, tn.m0, opt.max_states);
  std::cout << "instance=" << opt.instance << "\n"
            << "markings=" << rg.markings.size() << "\n"
            << "edges=" << rg.edges.size() << "\n";
  if (!opt.dot.empty()) {
    std::ostringstream os;
    fms::write_rg_dot(os, tn.net, rg);
    spill(opt.dot, os.str());
    std::cout << "dot=" << opt.dot << "\n";
  }
  return 0;
}

int run_brg(const Options& opt) {
  auto tn = load_net(opt);
  auto part = load_partition(opt, tn);
  fms::ExplanationCache cache(tn, part);
  auto g = fms::build_brg(tn, part, opt.max_states, cache);
  std::cout << "instance=" << opt.instance << "\n";
  partition_report(part);
  std::cout << "basis_markings=" << g.nodes.size() << "\n"
            << "edges=" << g.edges.size() << "\n";
  if (!opt.dot.empty()) {
    std::ostringstream os;
    fms::write_brg_dot(os, tn.net, g);
    spill(opt.dot, os.str());
    std::cout << "dot=" << opt.dot << "\n";
  }
  return 0;
}

int run_schedule(const Options& opt) {
  auto tn = load_net(opt);
  auto part = load_partition(opt, tn);
  fms::ExplanationCache cache(tn, part);
  auto started = std::chrono::steady_clock::now();
  auto res = fms::gfbs(tn, part,
                       fms::BeamParams{beam(opt.beta_g), beam(opt.beta_l)},
                       cache);
  long long wall = elapsed_ms(started);

  std::cout << "instance=" << opt.instance << "\n";
  partition_report(part);
  std::cout << "beta_g=" << opt.beta_g << "\n"
            << "beta_l=" << opt.beta_l << "\n";
  if (!res.found) {
    std::cout << "F_max=inf\n"
              << "expanded=" << res.expanded << "\n"
              << "wall_ms=" << wall << "\n";
    std::cerr << "no schedule survives these beam widths\n";
    return 1;
  }

  auto records = fms::collect_records(res.schedule);
  auto check = fms::check_schedule(tn, records);
  if (!check.feasible || check.makespan != res.makespan) {
    std::cerr << "internal error: schedule failed re-validation";
    if (!check.problems.empty()) std::cerr << ": " << check.problems.front();
    std::cerr << "\n";
    return 3;
  }

  std::ostringstream csv;
  fms::write_schedule_csv(csv, tn, res.schedule);
  spill(opt.out, csv.str());
  std::cout << "F_max=" << res.makespan << "\n"
            << "expanded=" << res.expanded << "\n"
            << "wall_ms=" << wall << "\n"
            << "out=" << opt.out << "\n";
  if (!opt.gantt.empty()) {
    std::ostringstream svg;
    fms::emit_gantt(svg, tn, records);
    spill(opt.gantt, svg.str());
    std::cout << "gantt=" << opt.gantt << "\n";
  }
  return 0;
}

int run_oracle(const Options& opt) {
  auto tn = load_net(opt);
  auto started = std::chrono::steady_clock::now();
  auto res = fms::oracle_optimal(tn, opt.max_states);
  long long wall = elapsed_ms(started);
  std::cout << "instance=" << opt.instance << "\n"
            << "states=" << res.states << "\n"
            << "wall_ms=" << wall << "\n";
  if (!res.found) {
    std::cout << "optimum=inf\n";
    std::cerr << "no complete schedule exists\n";
    return 1;
  }
  std::cout << "optimum=" << res.makespan << "\n";
  return 0;
}

int run_check(const Options& opt) {
  auto tn = load_net(opt);
  std::istringstream csv(slurp(opt.csv));
  auto rows = fms::read_schedule_csv(csv, tn);
  auto res = fms::check_schedule(tn, rows);
  std::cout << "instance=" << opt.instance << "\n"
            << "schedule=" << opt.csv << "\n"
            << "operations=" << rows.size() << "\n"
            << "feasible=" << (res.feasible ? "true" : "false") << "\n"
            << "makespan=" << res.makespan << "\n"
            << "problems=" << res.problems.size() << "\n";
  for (const std::string& problem : res.problems)
    std::cerr << "problem: " << problem << "\n";
  return res.feasible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petri-net scheduling for flexible manufacturing systems"};
  app.require_subcommand(1);
  Options opt;

  auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--instance", opt.instance, "instance file (.fms)")
        ->required();
  };
  auto add_partition = [&](CLI::App* cmd) {
    cmd->add_option("--partition", opt.partition,
                    "explicit-transition file, or 'auto' for the greedy "
                    "default");
  };
  auto add_dot = [&](CLI::App* cmd) {
    cmd->add_option("--dot", opt.dot, "write a Graphviz DOT file here");
  };
  auto add_max_states = [&](CLI::App* cmd) {
    cmd->add_option("--max-states", opt.max_states,
                    "abort past this many states");
  };

  CLI::App* validate =
      app.add_subcommand("validate", "parse an instance and report its size");
  add_instance(validate);

  CLI::App* net = app.add_subcommand("net", "build the place-timed Petri net");
  add_instance(net);
  add_dot(net);

  CLI::App* rg = app.add_subcommand("rg", "enumerate the reachability graph");
  add_instance(rg);
  add_dot(rg);
  add_max_states(rg);

  CLI::App* brg =
      app.add_subcommand("brg", "enumerate the basis reachability graph");
  add_instance(brg);
  add_partition(brg);
  add_dot(brg);
  add_max_states(brg);

  CLI::App* schedule =
      app.add_subcommand("schedule", "search for a low-makespan schedule");
  add_instance(schedule);
  add_partition(schedule);
  schedule->add_option("--beta-g", opt.beta_g,
                       "generation beam width (0 = unbounded)");
  schedule->add_option("--beta-l", opt.beta_l,
                       "per-parent beam width (0 = unbounded)");
  schedule->add_option("--out", opt.out, "schedule CSV path");
  schedule->add_option("--gantt", opt.gantt, "write an SVG Gantt chart here");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "exact optimal makespan by exhaustive search");
  add_instance(oracle);
  add_max_states(oracle);

  CLI::App* check =
      app.add_subcommand("check", "validate a schedule CSV against an instance");
  add_instance(check);
  check->add_option("csv", opt.csv, "schedule CSV to check")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(opt);
    if (app.got_subcommand(net)) return run_net(opt);
    if (app.got_subcommand(rg)) return run_rg(opt);
    if (app.got_subcommand(brg)) return run_brg(opt);
    if (app.got_subcommand(schedule)) return run_schedule(opt);
    if (app.got_subcommand(oracle)) return run_oracle(opt);
    if (app.got_subcommand(check)) return run_check(opt);
  } catch (const fms::TruncationError& e) {
    std::cerr << "gave up: " << e.what() << "\n";
    return 1;
  } catch (const fms::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
