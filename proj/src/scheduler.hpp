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

#ifndef MEMSCHED_SCHEDULER_HPP
#define MEMSCHED_SCHEDULER_HPP

#include <map>
#include <string>
#include <vector>

#include "mcg.hpp"
#include "memory_map.hpp"
#include "sfg.hpp"

namespace memsched {

struct SchedulerConfig {
  // Cycle budget for one iteration of the kernel. Exceeding it is
  // infeasibility, never a silent stretch.
  long horizon = 0;

  // Latency per operation name; operations not listed take 1 cycle.
  std::map<std::string, int> op_latency;

  // Functional-unit count per operation name; operations not listed are
  // unconstrained. Memory ports are constrained regardless.
  std::map<std::string, int> fu_limits;

  // Parses lines of the form `horizon=<int>`, `latency.<op>=<int>` and
  // `fu.<op>=<int>`; '#' starts a comment.
  static SchedulerConfig parse(const std::string& text);

  int latency_for_op(const std::string& op) const;
};

// Resource name used for register-placed accesses in schedule entries.
inline const char kRegisterResource[] = "register";

struct ScheduleEntry {
  std::string vertex;
  long start = 0;
  long end = 0;  // exclusive; start + latency
  // Bank name for memory accesses, "register" for register accesses, the
  // operation name (functional-unit class) for operations.
  std::string resource;
};

struct ExecutedTransfer {
  TransferDirective directive;
  long start = 0;
  long end = 0;  // holds one port on both banks during [start, end)
};

struct Schedule {
  std::vector<ScheduleEntry> entries;  // sorted by (start, vertex)
  std::vector<ExecutedTransfer> dma;   // sorted by (start, symbol)
  long achieved_latency = 0;           // max end over entries

  const ScheduleEntry* find(const std::string& vertex) const;

  // One line per entry: `sched <vertex> start=<c> end=<c> res=<name>`,
  // sorted by (start, vertex).
  std::string dump() const;

  // Inverse of dump(). Blank lines and '#' comments are tolerated; anything
  // else must be a well-formed sched line. achieved_latency is recomputed;
  // the dma list stays empty (the checker re-derives transfers from the map).
  static Schedule parse_dump(const std::string& text);
};

// Earliest start per non-delay vertex ignoring ports and functional units:
// longest-path distances over the precedence relation. Access latencies use
// each symbol's initial (cycle 0) residence.
std::map<std::string, long> asap(const SfgGraph& g, const MemoryMap& m,
                                 const SchedulerConfig& cfg);

// Latest start per non-delay vertex such that every successor still finishes
// by the horizon; this is the deadline the mobility criterion measures
// against. Throws Error(kInfeasible) naming a critical path when the horizon
// is too small.
std::map<std::string, long> alap(const SfgGraph& g, const MemoryMap& m,
                                 const SchedulerConfig& cfg);

// Cycles of slack left for a ready vertex: deadline minus current cycle.
// Zero means schedule now; negative means the horizon is already lost.
long mobility(const std::string& vertex, long cycle,
              const std::map<std::string, long>& deadlines);

// Cycle-driven forward list scheduling under memory constraints. Each cycle:
// finished accesses release their tokens, due transfers occupy ports on both
// banks, the ready list is filtered by bank accessibility (a vertex whose
// bank has no idle token, or whose symbol is mid-transfer, is removed no
// matter its priority), and the remainder is scheduled greedily in
// (mobility, conflict weight desc, id) order. Throws Error(kInfeasible) when
// a deadline is missed or a transfer's ports are busy.
Schedule schedule(const SfgGraph& g, const MemoryMap& m, const SchedulerConfig& cfg);

struct Verdict {
  bool ok = true;
  std::string constraint;  // violated constraint name when !ok
  long cycle = 0;
  std::vector<std::string> vertices;
  std::string detail;

  // "OK" or "FAIL <constraint> cycle=<c> vertices=<ids>".
  std::string to_string() const;
};

// Re-derives every schedule constraint without consulting the scheduler:
// entry structure, precedence, per-bank per-cycle port capacity (including
// declared transfers), transfer windows, horizon, and latency/resource
// consistency. Adversarial input is fine; violations are verdicts, not
// errors.
Verdict check_schedule(const SfgGraph& g, const MemoryMap& m,
                       const SchedulerConfig& cfg, const Schedule& s);

struct OracleResult {
  bool feasible = false;
  Schedule schedule;  // valid iff feasible
};

// Exhaustive branch-and-bound over start-time assignments, minimizing
// achieved latency subject to exactly the constraints check_schedule
// enforces. Guard: at most 12 non-delay vertices (throws Error(kTooLarge)).
OracleResult oracle_optimal(const SfgGraph& g, const MemoryMap& m,
                            const SchedulerConfig& cfg);

}  // namespace memsched

#endif  // MEMSCHED_SCHEDULER_HPP
