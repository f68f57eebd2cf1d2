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

constexpr std::size_t kOracleVertexLimit = 12;

// Exhaustive minimum-latency search over start-time assignments in a fixed
// topological order. Enumerating starts in ascending order with a sound
// lower bound keeps the search exact while pruning most of the space.
class BranchAndBound {
 public:
  BranchAndBound(const SfgGraph& g, const MemoryMap& m, const SchedulerConfig& cfg)
      : g_(g), m_(m), cfg_(cfg), order_(g.topo_order()) {
    preds_ = detail::precedence_predecessors(g);
    transfers_ = detail::executed_transfers(m, cfg.horizon);

    // Accesses never extend past the horizon; transfers may.
    long grid_end = cfg.horizon;
    for (const auto& t : transfers_) grid_end = std::max(grid_end, t.end);
    for (const auto& b : m.banks())
      occupancy_[b.name].assign((std::size_t)grid_end + 1, 0);
    for (const auto& t : transfers_) {
      for (long c = t.start; c < t.end; ++c) {
        ++occupancy_[t.directive.from_bank][(std::size_t)c];
        ++occupancy_[t.directive.to_bank][(std::size_t)c];
      }
    }

    // Remaining-work lower bound per vertex, using the smallest latency the
    // vertex could ever have (any resident bank), so pruning stays sound
    // under dynamic placement.
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      long tail = min_latency(*it);
      long best_succ = 0;
      for (const auto& e : g.precedence_edges())
        if (e.src == *it) best_succ = std::max(best_succ, tail_[e.dst]);
      tail_[*it] = tail + best_succ;
    }

    best_latency_ = cfg.horizon + 1;
  }

  OracleResult run() {
    starts_.assign(order_.size(), 0);
    ends_.assign(order_.size(), 0);
    index_.clear();
    for (std::size_t i = 0; i < order_.size(); ++i) index_[order_[i]] = i;
    dfs(0, 0);

    OracleResult result;
    if (best_latency_ > cfg_.horizon) return result;  // infeasible under horizon
    result.feasible = true;
    Schedule& s = result.schedule;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      auto cost = detail::vertex_cost(g_.vertex(order_[i]), m_, cfg_, best_starts_[i]);
      s.entries.push_back({order_[i], best_starts_[i], best_starts_[i] + cost.latency,
                           cost.resource});
    }
    std::sort(s.entries.begin(), s.entries.end(),
              [](const ScheduleEntry& a, const ScheduleEntry& b) {
                if (a.start != b.start) return a.start < b.start;
                return a.vertex < b.vertex;
              });
    s.dma = transfers_;
    s.achieved_latency = best_latency_;
    return result;
  }

 private:
  long min_latency(const std::string& id) const {
    const SfgVertex& v = g_.vertex(id);
    if (v.is_operation()) return cfg_.latency_for_op(v.op);
    const Placement* p = m_.find_placement(v.symbol);
    if (!p)
      throw Error(ErrorCode::kUnmapped, "symbol '" + v.symbol + "' has no placement");
    if (p->kind == StorageKind::kRegister) return 0;
    auto lat_in = [&](const std::string& bank) {
      const MemoryBank& b = m_.bank(bank);
      return (long)(v.access == DataAccess::kRead ? b.read_latency : b.write_latency);
    };
    long lat = lat_in(p->bank);
    for (const auto& t : m_.transfers_for(v.symbol)) lat = std::min(lat, lat_in(t.to_bank));
    return lat;
  }

  void dfs(std::size_t i, long makespan) {
    if (makespan >= best_latency_) return;
    if (i == order_.size()) {
      best_latency_ = makespan;
      best_starts_ = starts_;
      return;
    }
    const std::string& id = order_[i];
    const SfgVertex& v = g_.vertex(id);

    long earliest = 0;
    for (const auto& p : preds_[id]) earliest = std::max(earliest, ends_[index_[p]]);

    for (long start = earliest; start <= cfg_.horizon; ++start) {
      auto cost = detail::vertex_cost(v, m_, cfg_, start);
      if (start + cost.latency > cfg_.horizon) continue;  // a later, faster residence may fit
      long bound = std::max(makespan, start + tail_[id]);
      if (bound >= best_latency_) break;  // starts only grow from here

      bool blocked = false;
      if (v.is_data() && cost.resource != kRegisterResource) {
        if (m_.overlaps_transfer_window(v.symbol, start, start + cost.latency)) continue;
        auto& grid = occupancy_.at(cost.resource);
        int ports = m_.bank(cost.resource).ports;
        for (long c = start; c < start + cost.latency; ++c) {
          if (grid[(std::size_t)c] >= ports) {
            blocked = true;
            break;
          }
        }
        if (blocked) continue;
        for (long c = start; c < start + cost.latency; ++c) ++grid[(std::size_t)c];
      }

      starts_[i] = start;
      ends_[i] = start + cost.latency;
      dfs(i + 1, std::max(makespan, start + cost.latency));

      if (v.is_data() && cost.resource != kRegisterResource) {
        auto& grid = occupancy_.at(cost.resource);
        for (long c = start; c < start + cost.latency; ++c) --grid[(std::size_t)c];
      }
    }
  }

  const SfgGraph& g_;
  const MemoryMap& m_;
  const SchedulerConfig& cfg_;
  std::vector<std::string> order_;
  std::map<std::string, std::vector<std::string>> preds_;
  std::map<std::string, std::size_t> index_;
  std::vector<ExecutedTransfer> transfers_;
  std::map<std::string, std::vector<int>> occupancy_;
  std::map<std::string, long> tail_;

  std::vector<long> starts_, ends_;
  long best_latency_ = 0;
  std::vector<long> best_starts_;
};

}  // namespace

OracleResult oracle_optimal(const SfgGraph& g, const MemoryMap& m,
                            const SchedulerConfig& cfg) {
  if (cfg.horizon < 1)
    throw Error(ErrorCode::kInvalidArg, "horizon must be >= 1");
  auto coverage = check_against_sfg(m, g);
  if (!coverage.ok())
    throw Error(ErrorCode::kUnmapped, "oracle requires a full mapping");
  auto order = g.topo_order();
  if (order.size() > kOracleVertexLimit)
    throw Error(ErrorCode::kTooLarge,
                "oracle is limited to " + std::to_string(kOracleVertexLimit) +
                    " non-delay vertices, got " + std::to_string(order.size()));
  return BranchAndBound(g, m, cfg).run();
}

}  // namespace memsched
