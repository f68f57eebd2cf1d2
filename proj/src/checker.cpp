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

#include <algorithm>
#include <map>
#include <set>

#include "sched_internal.hpp"
#include "scheduler.hpp"

namespace memsched {

namespace {

Verdict fail(const std::string& constraint, long cycle,
             std::vector<std::string> vertices, const std::string& detail) {
  Verdict v;
  v.ok = false;
  v.constraint = constraint;
  v.cycle = cycle;
  std::sort(vertices.begin(), vertices.end());
  v.vertices = std::move(vertices);
  v.detail = detail;
  return v;
}

}  // namespace

// Checks run in a fixed order and the first violation wins: structure,
// precedence, port capacity, transfer windows, horizon, latency/resource
// consistency.
Verdict check_schedule(const SfgGraph& g, const MemoryMap& m,
                       const SchedulerConfig& cfg, const Schedule& s) {
  // Structure: exactly one entry per non-delay vertex, none for anything else.
  std::map<std::string, const ScheduleEntry*> by_vertex;
  for (const auto& e : s.entries) {
    if (!g.has_vertex(e.vertex))
      return fail("structure", e.start, {e.vertex}, "entry for unknown vertex");
    if (g.vertex(e.vertex).is_delay())
      return fail("structure", e.start, {e.vertex}, "delay vertices are not schedulable");
    if (!by_vertex.emplace(e.vertex, &e).second)
      return fail("structure", e.start, {e.vertex}, "duplicate entry");
    if (e.start < 0 || e.end < e.start)
      return fail("structure", e.start, {e.vertex}, "bad start/end");
  }
  for (const auto& v : g.vertices()) {
    if (!v.is_delay() && !by_vertex.count(v.id))
      return fail("structure", 0, {v.id}, "vertex has no entry");
  }
  long max_end = 0;
  for (const auto& e : s.entries) max_end = std::max(max_end, e.end);
  if (s.achieved_latency != max_end)
    return fail("structure", max_end, {},
                "achieved_latency does not equal the maximum entry end");

  // Precedence: a consumer starts only after its producer completes.
  auto edges = g.precedence_edges();
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    const ScheduleEntry* src = by_vertex.at(e.src);
    const ScheduleEntry* dst = by_vertex.at(e.dst);
    if (dst->start < src->end)
      return fail("precedence", dst->start, {e.src, e.dst},
                  "'" + e.dst + "' starts before '" + e.src + "' completes");
  }

  // Port capacity: accesses plus declared transfers, per bank per cycle. The
  // occupied bank is re-derived from residence, not read from the entry.
  auto transfers = detail::executed_transfers(m, cfg.horizon);
  long scan_end = max_end;
  for (const auto& t : transfers) scan_end = std::max(scan_end, t.end);

  struct Occupant {
    long start, end;
    std::string label;
  };
  std::map<std::string, std::vector<Occupant>> per_bank;
  for (const auto& e : s.entries) {
    const SfgVertex& v = g.vertex(e.vertex);
    if (!v.is_data()) continue;
    const Placement* p = m.find_placement(v.symbol);
    if (!p)
      return fail("structure", e.start, {e.vertex},
                  "symbol '" + v.symbol + "' has no placement");
    if (p->kind != StorageKind::kMemory) continue;
    auto bank = m.residence(v.symbol, e.start);
    per_bank[*bank].push_back({e.start, e.end, e.vertex});
  }
  for (const auto& t : transfers) {
    per_bank[t.directive.from_bank].push_back({t.start, t.end, "dma:" + t.directive.symbol});
    per_bank[t.directive.to_bank].push_back({t.start, t.end, "dma:" + t.directive.symbol});
  }
  for (long c = 0; c < scan_end; ++c) {
    for (const auto& [bank, occupants] : per_bank) {
      std::vector<std::string> live;
      for (const auto& o : occupants)
        if (o.start <= c && c < o.end) live.push_back(o.label);
      if ((int)live.size() > m.bank(bank).ports)
        return fail("port-capacity", c, live,
                    "bank '" + bank + "' has " + std::to_string(m.bank(bank).ports) +
                        " port(s)");
    }
  }

  // Transfer windows: no access may touch a symbol while it is being moved.
  for (const auto& e : s.entries) {
    const SfgVertex& v = g.vertex(e.vertex);
    if (!v.is_data()) continue;
    const Placement* p = m.find_placement(v.symbol);
    if (p->kind != StorageKind::kMemory) continue;
    if (m.overlaps_transfer_window(v.symbol, e.start, e.end))
      return fail("transfer-window", e.start, {e.vertex},
                  "access to '" + v.symbol + "' overlaps its transfer");
  }

  // Horizon.
  for (const auto& e : s.entries) {
    if (e.end > cfg.horizon)
      return fail("horizon", e.end, {e.vertex},
                  "ends past the cycle budget " + std::to_string(cfg.horizon));
  }

  // Latency and resource consistency.
  for (const auto& e : s.entries) {
    auto cost = detail::vertex_cost(g.vertex(e.vertex), m, cfg, e.start);
    if (e.end - e.start != cost.latency)
      return fail("latency", e.start, {e.vertex},
                  "expected latency " + std::to_string(cost.latency) + ", entry has " +
                      std::to_string(e.end - e.start));
    if (e.resource != cost.resource)
      return fail("latency", e.start, {e.vertex},
                  "expected resource '" + cost.resource + "', entry has '" + e.resource + "'");
  }

  return {};
}

}  // namespace memsched
