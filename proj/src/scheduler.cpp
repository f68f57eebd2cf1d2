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

#include "scheduler.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sched_internal.hpp"

namespace memsched {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

long parse_cfg_long(const std::string& s, int line, const std::string& what, long min) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v < min) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse,
                what + " must be an integer >= " + std::to_string(min) + ", got '" + s + "'",
                line);
  }
}

}  // namespace

namespace detail {

VertexCost vertex_cost(const SfgVertex& v, const MemoryMap& m,
                       const SchedulerConfig& cfg, long cycle) {
  if (v.is_operation()) {
    return {cfg.latency_for_op(v.op), v.op};
  }
  if (v.is_data()) {
    const Placement* p = m.find_placement(v.symbol);
    if (!p)
      throw Error(ErrorCode::kUnmapped, "symbol '" + v.symbol + "' has no placement");
    if (p->kind == StorageKind::kRegister) return {0, kRegisterResource};
    auto bank_name = m.residence(v.symbol, cycle);
    const MemoryBank& b = m.bank(*bank_name);
    long lat = v.access == DataAccess::kRead ? b.read_latency : b.write_latency;
    return {lat, b.name};
  }
  throw Error(ErrorCode::kInvalidArg, "delay vertex '" + v.id + "' is not schedulable");
}

std::vector<ExecutedTransfer> executed_transfers(const MemoryMap& m, long horizon) {
  std::vector<ExecutedTransfer> out;
  for (const auto& t : m.transfers()) {
    if (t.at_cycle > horizon) continue;
    out.push_back({t, t.at_cycle, t.at_cycle + m.transfer_latency(t)});
  }
  std::sort(out.begin(), out.end(),
            [](const ExecutedTransfer& a, const ExecutedTransfer& b) {
              if (a.start != b.start) return a.start < b.start;
              return a.directive.symbol < b.directive.symbol;
            });
  return out;
}

std::map<std::string, std::vector<std::string>> precedence_predecessors(const SfgGraph& g) {
  std::map<std::string, std::vector<std::string>> preds;
  for (const auto& v : g.vertices())
    if (!v.is_delay()) preds[v.id];
  for (const auto& e : g.precedence_edges()) preds[e.dst].push_back(e.src);
  return preds;
}

}  // namespace detail

SchedulerConfig SchedulerConfig::parse(const std::string& text) {
  SchedulerConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string tok;
    while (ls >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.size())
        throw Error(ErrorCode::kParse, "expected key=value, got '" + tok + "'", line_no);
      std::string key = tok.substr(0, eq);
      std::string value = tok.substr(eq + 1);
      if (key == "horizon") {
        cfg.horizon = parse_cfg_long(value, line_no, "horizon", 1);
      } else if (key.rfind("latency.", 0) == 0) {
        std::string op = key.substr(8);
        if (op.empty()) throw Error(ErrorCode::kParse, "latency. requires an op name", line_no);
        cfg.op_latency[op] = (int)parse_cfg_long(value, line_no, key, 1);
      } else if (key.rfind("fu.", 0) == 0) {
        std::string op = key.substr(3);
        if (op.empty()) throw Error(ErrorCode::kParse, "fu. requires an op name", line_no);
        cfg.fu_limits[op] = (int)parse_cfg_long(value, line_no, key, 1);
      } else {
        throw Error(ErrorCode::kParse, "unknown key '" + key + "'", line_no);
      }
    }
  }
  return cfg;
}

int SchedulerConfig::latency_for_op(const std::string& op) const {
  auto it = op_latency.find(op);
  return it == op_latency.end() ? 1 : it->second;
}

const ScheduleEntry* Schedule::find(const std::string& vertex) const {
  for (const auto& e : entries)
    if (e.vertex == vertex) return &e;
  return nullptr;
}

std::string Schedule::dump() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << "sched " << e.vertex << " start=" << e.start << " end=" << e.end
        << " res=" << e.resource << "\n";
  }
  return out.str();
}

Schedule Schedule::parse_dump(const std::string& text) {
  Schedule s;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks[0] != "sched" || toks.size() != 5)
      throw Error(ErrorCode::kParse,
                  "expected 'sched <vertex> start=<c> end=<c> res=<name>'", line_no);
    ScheduleEntry e;
    e.vertex = toks[1];
    auto field = [&](const std::string& t, const std::string& key) {
      if (t.rfind(key + "=", 0) != 0)
        throw Error(ErrorCode::kParse, "expected " + key + "=..., got '" + t + "'", line_no);
      return t.substr(key.size() + 1);
    };
    e.start = parse_cfg_long(field(toks[2], "start"), line_no, "start", 0);
    e.end = parse_cfg_long(field(toks[3], "end"), line_no, "end", 0);
    e.resource = field(toks[4], "res");
    if (e.resource.empty())
      throw Error(ErrorCode::kParse, "res= must not be empty", line_no);
    if (e.end < e.start)
      throw Error(ErrorCode::kParse, "end before start for '" + e.vertex + "'", line_no);
    s.entries.push_back(std::move(e));
  }
  std::sort(s.entries.begin(), s.entries.end(),
            [](const ScheduleEntry& a, const ScheduleEntry& b) {
              if (a.start != b.start) return a.start < b.start;
              return a.vertex < b.vertex;
            });
  s.achieved_latency = 0;
  for (const auto& e : s.entries) s.achieved_latency = std::max(s.achieved_latency, e.end);
  return s;
}

std::map<std::string, long> asap(const SfgGraph& g, const MemoryMap& m,
                                 const SchedulerConfig& cfg) {
  auto preds = detail::precedence_predecessors(g);
  std::map<std::string, long> start;
  for (const auto& id : g.topo_order()) {
    long s = 0;
    for (const auto& p : preds[id]) {
      long lat = detail::vertex_cost(g.vertex(p), m, cfg, 0).latency;
      s = std::max(s, start.at(p) + lat);
    }
    start[id] = s;
  }
  return start;
}

namespace {

// Reconstructs one maximal chain through `pivot` for infeasibility reports.
std::vector<std::string> critical_path_through(
    const SfgGraph& g, const MemoryMap& m, const SchedulerConfig& cfg,
    const std::map<std::string, long>& asap_start, const std::string& pivot) {
  auto preds = detail::precedence_predecessors(g);
  std::map<std::string, std::vector<std::string>> succs;
  for (const auto& e : g.precedence_edges()) succs[e.src].push_back(e.dst);
  auto lat0 = [&](const std::string& id) {
    return detail::vertex_cost(g.vertex(id), m, cfg, 0).latency;
  };

  std::vector<std::string> path = {pivot};
  std::string cur = pivot;
  for (;;) {
    std::string best;
    for (const auto& p : preds[cur]) {
      if (asap_start.at(p) + lat0(p) == asap_start.at(cur) && (best.empty() || p < best))
        best = p;
    }
    if (best.empty()) break;
    path.insert(path.begin(), best);
    cur = best;
  }
  cur = pivot;
  for (;;) {
    std::string best;
    for (const auto& s : succs[cur]) {
      if (asap_start.at(s) == asap_start.at(cur) + lat0(cur) &&
          (best.empty() || s < best))
        best = s;
    }
    if (best.empty()) break;
    path.push_back(best);
    cur = best;
  }
  return path;
}

}  // namespace

std::map<std::string, long> alap(const SfgGraph& g, const MemoryMap& m,
                                 const SchedulerConfig& cfg) {
  if (cfg.horizon < 1)
    throw Error(ErrorCode::kInvalidArg, "horizon must be >= 1 (is it set in the config?)");
  auto order = g.topo_order();
  std::map<std::string, std::vector<std::string>> succs;
  for (const auto& e : g.precedence_edges()) succs[e.src].push_back(e.dst);

  std::map<std::string, long> deadline;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::string& id = *it;
    long lat = detail::vertex_cost(g.vertex(id), m, cfg, 0).latency;
    long d = cfg.horizon - lat;
    for (const auto& s : succs[id]) d = std::min(d, deadline.at(s) - lat);
    deadline[id] = d;
  }

  auto asap_start = asap(g, m, cfg);
  for (const auto& [id, d] : deadline) {
    if (d < asap_start.at(id)) {
      auto path = critical_path_through(g, m, cfg, asap_start, id);
      long length = 0;
      for (const auto& v : path) length += detail::vertex_cost(g.vertex(v), m, cfg, 0).latency;
      throw Error(ErrorCode::kInfeasible,
                  "critical path exceeds horizon " + std::to_string(cfg.horizon) + ": " +
                      join(path, " -> ") + " (length " + std::to_string(length) + ")");
    }
  }
  return deadline;
}

long mobility(const std::string& vertex, long cycle,
              const std::map<std::string, long>& deadlines) {
  auto it = deadlines.find(vertex);
  if (it == deadlines.end())
    throw Error(ErrorCode::kInvalidArg, "no deadline for vertex '" + vertex + "'");
  return it->second - cycle;
}

Schedule schedule(const SfgGraph& g, const MemoryMap& m, const SchedulerConfig& cfg) {
  auto coverage = check_against_sfg(m, g);
  if (!coverage.ok())
    throw Error(ErrorCode::kUnmapped, "unmapped symbols: " + join(coverage.unmapped, ", "));
  auto deadlines = alap(g, m, cfg);  // also validates the horizon

  auto mcgs = build_mcg(g, m);
  std::map<std::string, int> conflict_weight;
  for (const auto& mcg : mcgs)
    for (const auto& node : mcg.nodes) conflict_weight[node] = mcg.weight_sum(node);

  std::map<std::string, TokenPool> pools;
  for (const auto& b : m.banks()) pools.emplace(b.name, TokenPool(b.name, b.ports));

  // Release cycles of busy functional units, per constrained op class.
  std::map<std::string, std::vector<long>> fu_busy;

  auto pending = detail::executed_transfers(m, cfg.horizon);
  std::size_t next_transfer = 0;

  auto preds = detail::precedence_predecessors(g);
  std::set<std::string> remaining;
  for (const auto& v : g.vertices())
    if (!v.is_delay()) remaining.insert(v.id);

  std::map<std::string, ScheduleEntry> placed;
  std::vector<ExecutedTransfer> dma;
  long cycle = 0;

  while (!remaining.empty() || next_transfer < pending.size()) {
    if (cycle > cfg.horizon) {
      // Only reachable with work left: every pending transfer fires at or
      // before the horizon.
      throw Error(ErrorCode::kInfeasible,
                  "cycle budget " + std::to_string(cfg.horizon) +
                      " exhausted with " + std::to_string(remaining.size()) +
                      " operations unscheduled");
    }

    for (auto& [_, pool] : pools) pool.retire(cycle);

    while (next_transfer < pending.size() && pending[next_transfer].start == cycle) {
      const auto& t = pending[next_transfer];
      auto& from = pools.at(t.directive.from_bank);
      auto& to = pools.at(t.directive.to_bank);
      if (!from.accessible(cycle) || !to.accessible(cycle)) {
        throw Error(ErrorCode::kInfeasible,
                    "transfer-port clash: moving '" + t.directive.symbol + "' from '" +
                        t.directive.from_bank + "' to '" + t.directive.to_bank +
                        "' at cycle " + std::to_string(cycle) + " finds no idle port");
      }
      long window = t.end - t.start;
      from.take("dma:" + t.directive.symbol, cycle, window);
      to.take("dma:" + t.directive.symbol, cycle, window);
      dma.push_back(t);
      ++next_transfer;
    }

    // Zero-latency completions (register accesses) can enable more work in
    // the same cycle, so iterate to a fixpoint.
    bool progress = true;
    while (progress) {
      progress = false;

      std::vector<std::string> ready;
      for (const auto& v : remaining) {
        bool ok = true;
        for (const auto& p : preds[v]) {
          auto it = placed.find(p);
          if (it == placed.end() || it->second.end > cycle) {
            ok = false;
            break;
          }
        }
        if (ok) ready.push_back(v);
      }

      for (const auto& v : ready) {
        if (mobility(v, cycle, deadlines) < 0) {
          throw Error(ErrorCode::kInfeasible,
                      "deadline " + std::to_string(deadlines.at(v)) + " of '" + v +
                          "' missed at cycle " + std::to_string(cycle));
        }
      }

      // Accessibility: a memory access whose bank has no idle token, or whose
      // access window would overlap a transfer of its symbol, leaves the list.
      std::vector<std::string> candidates;
      for (const auto& v : ready) {
        const SfgVertex& vx = g.vertex(v);
        if (vx.is_data()) {
          const Placement* p = m.find_placement(vx.symbol);
          if (p->kind == StorageKind::kMemory) {
            auto cost = detail::vertex_cost(vx, m, cfg, cycle);
            if (m.overlaps_transfer_window(vx.symbol, cycle, cycle + cost.latency)) continue;
            if (!pools.at(cost.resource).accessible(cycle)) continue;
          }
        }
        candidates.push_back(v);
      }

      std::sort(candidates.begin(), candidates.end(),
                [&](const std::string& a, const std::string& b) {
                  long ma = deadlines.at(a), mb = deadlines.at(b);
                  if (ma != mb) return ma < mb;  // lower mobility first
                  int wa = conflict_weight.count(a) ? conflict_weight.at(a) : 0;
                  int wb = conflict_weight.count(b) ? conflict_weight.at(b) : 0;
                  if (wa != wb) return wa > wb;  // drain contended banks first
                  return a < b;
                });

      for (const auto& v : candidates) {
        const SfgVertex& vx = g.vertex(v);
        auto cost = detail::vertex_cost(vx, m, cfg, cycle);
        if (cycle + cost.latency > cfg.horizon) continue;  // would overrun; postpone

        if (vx.is_operation()) {
          auto limit = cfg.fu_limits.find(vx.op);
          if (limit != cfg.fu_limits.end()) {
            int busy = 0;
            for (long release : fu_busy[vx.op])
              if (release > cycle) ++busy;
            if (busy >= limit->second) continue;  // all units of this class busy
            fu_busy[vx.op].push_back(cycle + cost.latency);
          }
        } else if (cost.resource != kRegisterResource) {
          auto& pool = pools.at(cost.resource);
          if (!pool.accessible(cycle)) continue;  // tokens ran out this cycle
          pool.take(v, cycle, cost.latency);
        }

        placed[v] = {v, cycle, cycle + cost.latency, cost.resource};
        remaining.erase(v);
        if (cost.latency == 0) progress = true;
      }
    }

    ++cycle;
  }

  Schedule s;
  for (const auto& [_, e] : placed) s.entries.push_back(e);
  std::sort(s.entries.begin(), s.entries.end(),
            [](const ScheduleEntry& a, const ScheduleEntry& b) {
              if (a.start != b.start) return a.start < b.start;
              return a.vertex < b.vertex;
            });
  s.dma = std::move(dma);
  s.achieved_latency = 0;
  for (const auto& e : s.entries) s.achieved_latency = std::max(s.achieved_latency, e.end);
  return s;
}

std::string Verdict::to_string() const {
  if (ok) return "OK";
  std::ostringstream out;
  out << "FAIL " << constraint << " cycle=" << cycle << " vertices=" << join(vertices, ",");
  return out.str();
}

}  // namespace memsched
