// Copyright 2026 The memsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "explore.hpp"
#include "generators.hpp"
#include "scheduler.hpp"
#include "test_util.hpp"

using namespace memsched;
using namespace memsched::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
  if (ok) {
    std::cout << "PASS  " << index << " " << name << "\n";
  } else {
    std::cout << "FAIL  " << index << " " << name
              << (detail.empty() ? "" : " -- " + detail) << "\n";
    ++g_failures;
  }
}

struct FixtureCase {
  std::string sfg, map, cfg;
};

const std::vector<FixtureCase>& fixture_corpus() {
  static const std::vector<FixtureCase> cases = {
      {"copy.sfg", "copy.map", "copy.cfg"},
      {"cab.sfg", "cab_1port.map", "cab.cfg"},
      {"cab.sfg", "cab_2port.map", "cab.cfg"},
      {"cab.sfg", "cab_reg.map", "cab.cfg"},
      {"fir4.sfg", "fir4_1bank.map", "fir4.cfg"},
      {"fir4.sfg", "fir4_2bank.map", "fir4.cfg"},
      {"fir16.sfg", "fir16_1bank.map", "fir16.cfg"},
      {"fir16.sfg", "fir16_2bank.map", "fir16.cfg"},
      {"iir.sfg", "iir.map", "iir.cfg"},
      {"mac4.sfg", "mac4.map", "mac4.cfg"},
      {"dyn.sfg", "dyn.map", "dyn.cfg"},
  };
  return cases;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1. soundness: checker passes on every schedule the engine emits -------

bool criterion_soundness(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : fixture_corpus()) {
    SfgGraph g = SfgGraph::parse(read_fixture(c.sfg));
    MemoryMap m = MemoryMap::parse(read_fixture(c.map));
    SchedulerConfig cfg = SchedulerConfig::parse(read_fixture(c.cfg));
    Schedule s = schedule(g, m, cfg);
    Verdict v = check_schedule(g, m, cfg, s);
    if (!v.ok) {
      detail = c.sfg + " + " + c.map + ": " + v.to_string();
      return false;
    }
  }

  std::mt19937 rng(20260808);
  GeneratorOptions opt;
  opt.max_vertices = 30;
  opt.max_banks = 3;
  opt.max_ports = 2;
  int scheduled = 0;
  for (int i = 0; i < 200; ++i) {
    SfgGraph g = SfgGraph::parse(random_sfg_text(rng, opt, "r" + std::to_string(i)));
    MemoryMap m = MemoryMap::parse(random_map_text(rng, opt, g));
    SchedulerConfig cfg;
    cfg.horizon = 4 * (long)g.vertices().size() + 8;
    cfg.op_latency["mul"] = 2;
    try {
      Schedule s = schedule(g, m, cfg);
      Verdict v = check_schedule(g, m, cfg, s);
      if (!v.ok) {
        detail = "random instance " + std::to_string(i) + ": " + v.to_string();
        return false;
      }
      ++scheduled;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasible) {
        detail = "random instance " + std::to_string(i) + ": " + e.what();
        return false;
      }
    }
  }
  if (scheduled < 150) {
    detail = "only " + std::to_string(scheduled) + "/200 random instances scheduled";
    return false;
  }
  double elapsed = seconds_since(t0);
  g_notes.push_back("soundness: " + std::to_string(scheduled) + "/200 random instances scheduled, " +
                    std::to_string(elapsed) + " s");
  if (elapsed >= 10.0) {
    detail = "took " + std::to_string(elapsed) + " s (budget 10 s)";
    return false;
  }
  return true;
}

// --- 2. oracle equivalence --------------------------------------------------

bool criterion_oracle(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();

  // The two hand-built kernels must land exactly on the optimum.
  {
    SfgGraph g = SfgGraph::parse(read_fixture("cab.sfg"));
    SchedulerConfig cfg = SchedulerConfig::parse(read_fixture("cab.cfg"));
    MemoryMap one = MemoryMap::parse(read_fixture("cab_1port.map"));
    MemoryMap two = MemoryMap::parse(read_fixture("cab_2port.map"));
    OracleResult r1 = oracle_optimal(g, one, cfg);
    OracleResult r2 = oracle_optimal(g, two, cfg);
    if (!r1.feasible || r1.schedule.achieved_latency != 4 ||
        schedule(g, one, cfg).achieved_latency != 4) {
      detail = "one-port kernel: expected optimum 4";
      return false;
    }
    if (!r2.feasible || r2.schedule.achieved_latency != 3 ||
        schedule(g, two, cfg).achieved_latency != 3) {
      detail = "two-port kernel: expected optimum 3";
      return false;
    }
  }

  std::mt19937 rng(777);
  GeneratorOptions opt;
  opt.max_vertices = 8;  // keeps non-delay count within the oracle guard
  int compared = 0, equal = 0;
  for (int i = 0; i < 100; ++i) {
    SfgGraph g = SfgGraph::parse(random_sfg_text(rng, opt, "o" + std::to_string(i)));
    MemoryMap m = MemoryMap::parse(random_map_text(rng, opt, g));
    SchedulerConfig cfg;
    cfg.horizon = 4 * (long)g.vertices().size() + 8;
    cfg.op_latency["mul"] = 2;

    long list_latency = -1;
    try {
      list_latency = schedule(g, m, cfg).achieved_latency;
    } catch (const Error&) {
      continue;  // infeasible instances carry no latency to compare
    }
    SchedulerConfig oracle_cfg = cfg;
    oracle_cfg.horizon = list_latency + 4;
    OracleResult r = oracle_optimal(g, m, oracle_cfg);
    if (!r.feasible) {
      detail = "instance " + std::to_string(i) +
               ": list scheduler succeeded but the oracle found nothing";
      return false;
    }
    if (list_latency < r.schedule.achieved_latency) {
      detail = "instance " + std::to_string(i) + ": list " + std::to_string(list_latency) +
               " beat the oracle " + std::to_string(r.schedule.achieved_latency);
      return false;
    }
    Verdict v = check_schedule(g, m, oracle_cfg, r.schedule);
    if (!v.ok) {
      detail = "oracle schedule failed verification: " + v.to_string();
      return false;
    }
    ++compared;
    if (list_latency == r.schedule.achieved_latency) ++equal;
  }
  double elapsed = seconds_since(t0);
  g_notes.push_back("oracle: " + std::to_string(compared) + " instances compared, list optimal on " +
                    std::to_string(equal) + ", " + std::to_string(elapsed) + " s");
  if (compared < 80) {
    detail = "only " + std::to_string(compared) + "/100 instances were comparable";
    return false;
  }
  if (elapsed >= 60.0) {
    detail = "took " + std::to_string(elapsed) + " s (budget 60 s)";
    return false;
  }
  return true;
}

// --- 3. memory-bound law ----------------------------------------------------

std::string star_graph_text(int n) {
  std::ostringstream out;
  out << "sfg star" << n << "\n";
  for (int i = 0; i < n; ++i)
    out << "node r" << i << " kind=data symbol=A access=read\n";
  out << "node acc kind=add\n";
  out << "node y_w kind=data symbol=Y access=write\n";
  for (int i = 0; i < n; ++i) out << "edge r" << i << " -> acc\n";
  out << "edge acc -> y_w\n";
  return out.str();
}

bool criterion_memory_bound(std::string& detail) {
  for (int n : {4, 8, 16}) {
    for (int p : {1, 2}) {
      SfgGraph g = SfgGraph::parse(star_graph_text(n));
      MemoryMap m = MemoryMap::parse(
          "bank B0 ports=" + std::to_string(p) +
          " read_latency=1 write_latency=1 capacity=64\n"
          "place A kind=memory bank=B0 addr=0\n"
          "place Y kind=memory bank=B0 addr=1\n");
      SchedulerConfig cfg;
      cfg.horizon = n + 8;
      Schedule s = schedule(g, m, cfg);
      long bound = (n + p - 1) / p;
      if (s.achieved_latency < bound) {
        detail = "star n=" + std::to_string(n) + " p=" + std::to_string(p) +
                 ": latency below the port bound";
        return false;
      }
      long reads_end = read_phase_end(g, s);
      if (reads_end != bound) {
        detail = "star n=" + std::to_string(n) + " p=" + std::to_string(p) +
                 ": reads end at " + std::to_string(reads_end) + ", expected exactly " +
                 std::to_string(bound);
        return false;
      }
      Verdict v = check_schedule(g, m, cfg, s);
      if (!v.ok) {
        detail = v.to_string();
        return false;
      }
    }
  }
  return true;
}

// --- 4. bank splitting ------------------------------------------------------

bool criterion_bank_split(std::string& detail) {
  struct Variant {
    const char* sfg;
    const char* cfg;
    const char* one;
    const char* two;
    long reads_one, reads_two;
  };
  // FIR-16 carries the claim; FIR-4 is the reduced cross-check.
  for (const auto& v : {Variant{"fir16.sfg", "fir16.cfg", "fir16_1bank.map",
                                "fir16_2bank.map", 32, 16},
                        Variant{"fir4.sfg", "fir4.cfg", "fir4_1bank.map",
                                "fir4_2bank.map", 8, 4}}) {
    SfgGraph g = SfgGraph::parse(read_fixture(v.sfg));
    SchedulerConfig cfg = SchedulerConfig::parse(read_fixture(v.cfg));
    Schedule s_one = schedule(g, MemoryMap::parse(read_fixture(v.one)), cfg);
    Schedule s_two = schedule(g, MemoryMap::parse(read_fixture(v.two)), cfg);

    if (s_two.achieved_latency >= s_one.achieved_latency) {
      detail = std::string(v.sfg) + ": split banks did not lower latency (" +
               std::to_string(s_one.achieved_latency) + " -> " +
               std::to_string(s_two.achieved_latency) + ")";
      return false;
    }
    long one_end = read_phase_end(g, s_one);
    long two_end = read_phase_end(g, s_two);
    if (one_end != v.reads_one || two_end != v.reads_two) {
      detail = std::string(v.sfg) + ": read phases " + std::to_string(one_end) + "/" +
               std::to_string(two_end) + ", expected " + std::to_string(v.reads_one) +
               "/" + std::to_string(v.reads_two);
      return false;
    }
  }
  return true;
}

// --- 5. timing analysis -----------------------------------------------------

bool criterion_asap_alap(std::string& detail) {
  for (const auto& c : fixture_corpus()) {
    SfgGraph g = SfgGraph::parse(read_fixture(c.sfg));
    MemoryMap m = MemoryMap::parse(read_fixture(c.map));
    SchedulerConfig cfg = SchedulerConfig::parse(read_fixture(c.cfg));
    auto early = asap(g, m, cfg);
    auto late = alap(g, m, cfg);
    for (const auto& id : g.topo_order()) {
      if (early.at(id) > late.at(id)) {
        detail = c.sfg + ": asap(" + id + ") > alap(" + id + ")";
        return false;
      }
      if (early.at(id) != brute_earliest_start(g, m, cfg, id)) {
        detail = c.sfg + ": asap(" + id + ") disagrees with path enumeration";
        return false;
      }
      if (mobility(id, early.at(id), late) != late.at(id) - early.at(id)) {
        detail = c.sfg + ": mobility at asap time is not alap - asap for " + id;
        return false;
      }
    }
  }
  return true;
}

// --- 6. CLI determinism -----------------------------------------------------

struct CliResult {
  int status = -1;
  std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args) {
  CliResult r;
  std::string cmd = std::string(MEMSCHED_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int rc = pclose(pipe);
  r.status = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool criterion_cli_determinism(std::string& detail) {
  fs::path tmp = fs::current_path() / "acceptance_tmp";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  std::ofstream(tmp / "tight.cfg") << "horizon=2\n";

  struct Invocation {
    std::string name;
    std::string args;
    bool writes_out;
    int expect_status;
  };
  std::vector<Invocation> invocations;
  for (const auto& c : fixture_corpus()) {
    std::string base = fixture_path(c.sfg) + " " + fixture_path(c.map) + " --config " +
                       fixture_path(c.cfg);
    invocations.push_back({"schedule " + c.sfg + "+" + c.map,
                           "schedule " + base + " --gantt --mcg", false, 0});
  }
  invocations.push_back({"schedule with --out",
                         "schedule " + fixture_path("cab.sfg") + " " +
                             fixture_path("cab_1port.map") + " --config " +
                             fixture_path("cab.cfg") + " --gantt --out " +
                             (tmp / "out").string(),
                         true, 0});
  invocations.push_back({"schedule infeasible",
                         "schedule " + fixture_path("cab.sfg") + " " +
                             fixture_path("cab_1port.map") + " --config " +
                             (tmp / "tight.cfg").string(),
                         false, 2});
  invocations.push_back({"schedule parse error",
                         "schedule " + fixture_path("cab.sfg") + " " +
                             fixture_path("cab.cfg") + " --config " +
                             fixture_path("cab.cfg"),
                         false, 2});
  invocations.push_back(
      {"explore", "explore " + fixture_path("fir4.sfg") + " --maps " +
                      fixture_path("fir4_1bank.map") + "," + fixture_path("fir4_2bank.map") +
                      " --horizons 16,32 --config " + fixture_path("fir4.cfg"),
       false, 0});

  // verify needs a dump on disk first
  {
    CliResult r = run_cli("schedule " + fixture_path("cab.sfg") + " " +
                          fixture_path("cab_1port.map") + " --config " +
                          fixture_path("cab.cfg") + " --out " + (tmp / "vout").string());
    if (r.status != 0) {
      detail = "could not produce a dump for verify: " + r.output;
      return false;
    }
  }
  invocations.push_back({"verify", "verify " + fixture_path("cab.sfg") + " " +
                                       fixture_path("cab_1port.map") + " --config " +
                                       fixture_path("cab.cfg") + " --schedule " +
                                       (tmp / "vout" / "schedule.txt").string(),
                         false, 0});

  std::ofstream(tmp / "clash.txt") << "sched a_r start=0 end=1 res=B0\n"
                                      "sched b_r start=0 end=1 res=B0\n"
                                      "sched c start=1 end=2 res=add\n"
                                      "sched y_w start=2 end=3 res=B0\n";
  invocations.push_back({"verify port clash",
                         "verify " + fixture_path("cab.sfg") + " " +
                             fixture_path("cab_1port.map") + " --config " +
                             fixture_path("cab.cfg") + " --schedule " +
                             (tmp / "clash.txt").string(),
                         false, 1});
  std::ofstream(tmp / "truncated.txt") << "sched a_r start=0\n";
  invocations.push_back({"verify truncated dump",
                         "verify " + fixture_path("cab.sfg") + " " +
                             fixture_path("cab_1port.map") + " --config " +
                             fixture_path("cab.cfg") + " --schedule " +
                             (tmp / "truncated.txt").string(),
                         false, 2});

  for (const auto& inv : invocations) {
    CliResult first = run_cli(inv.args);
    std::string files_first;
    if (inv.writes_out)
      files_first = slurp(tmp / "out" / "schedule.txt") + slurp(tmp / "out" / "gantt.txt");

    CliResult second = run_cli(inv.args);
    std::string files_second;
    if (inv.writes_out)
      files_second = slurp(tmp / "out" / "schedule.txt") + slurp(tmp / "out" / "gantt.txt");

    if (first.status != inv.expect_status) {
      detail = inv.name + ": exit " + std::to_string(first.status) + ", expected " +
               std::to_string(inv.expect_status) + "\n" + first.output;
      return false;
    }
    if (first.status != second.status || first.output != second.output ||
        files_first != files_second) {
      detail = inv.name + ": two runs differ";
      return false;
    }
    if (first.output.empty() && inv.expect_status != 0) {
      detail = inv.name + ": expected a diagnostic on stderr";
      return false;
    }
  }
  return true;
}

// --- 7. dynamic placement ---------------------------------------------------

bool criterion_dynamic_placement(std::string& detail) {
  SfgGraph g = SfgGraph::parse(read_fixture("dyn.sfg"));
  MemoryMap m = MemoryMap::parse(read_fixture("dyn.map"));
  SchedulerConfig cfg = SchedulerConfig::parse(read_fixture("dyn.cfg"));
  Schedule s = schedule(g, m, cfg);

  const ScheduleEntry* before = s.find("s1_r");
  const ScheduleEntry* after = s.find("s2_r");
  if (!before || !after) {
    detail = "missing entries for the straddling reads";
    return false;
  }
  const TransferDirective& t = m.transfers()[0];
  long completion = t.at_cycle + m.transfer_latency(t);
  if (!(before->resource == t.from_bank && before->end <= t.at_cycle)) {
    detail = "pre-transfer read not served by " + t.from_bank + " before cycle " +
             std::to_string(t.at_cycle);
    return false;
  }
  if (!(after->resource == t.to_bank && after->start >= completion)) {
    detail = "post-transfer read not served by " + t.to_bank + " from cycle " +
             std::to_string(completion);
    return false;
  }
  for (const auto& e : s.entries) {
    const SfgVertex& v = g.vertex(e.vertex);
    if (v.is_data() && v.symbol == t.symbol && e.start < completion && e.end > t.at_cycle) {
      detail = "access '" + e.vertex + "' lands inside the transfer window";
      return false;
    }
  }
  Verdict v = check_schedule(g, m, cfg, s);
  if (!v.ok) {
    detail = v.to_string();
    return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*fn)(std::string&);
  };
  const Criterion criteria[] = {
      {"soundness (fixtures + 200 random instances)", criterion_soundness},
      {"oracle equivalence (100 random small instances)", criterion_oracle},
      {"memory-bound law on star graphs", criterion_memory_bound},
      {"bank splitting lowers latency (FIR-16, FIR-4)", criterion_bank_split},
      {"asap/alap/mobility against path enumeration", criterion_asap_alap},
      {"CLI determinism (byte-identical reruns)", criterion_cli_determinism},
      {"dynamic placement honors the transfer window", criterion_dynamic_placement},
  };

  int index = 1;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    report(index++, c.name, ok, detail);
  }
  for (const auto& n : g_notes) std::cout << "note: " << n << "\n";
  return g_failures == 0 ? 0 : 1;
}
