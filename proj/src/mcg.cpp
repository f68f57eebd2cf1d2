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

#include "mcg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace memsched {

namespace {

// Transitive closure of the precedence relation, as reachable-successor sets.
std::map<std::string, std::set<std::string>> precedence_closure(const SfgGraph& g) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& e : g.precedence_edges()) succ[e.src].push_back(e.dst);

  std::map<std::string, std::set<std::string>> reach;
  // Reverse topological order: successors are finished before predecessors.
  auto order = g.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& set = reach[*it];
    for (const auto& s : succ[*it]) {
      set.insert(s);
      const auto& below = reach[s];
      set.insert(below.begin(), below.end());
    }
  }
  return reach;
}

}  // namespace

int Mcg::weight_sum(const std::string& vertex) const {
  int sum = 0;
  for (const auto& e : edges)
    if (e.u == vertex || e.v == vertex) sum += e.weight;
  return sum;
}

std::vector<Mcg> build_mcg(const SfgGraph& g, const MemoryMap& m) {
  // Residents per bank at cycle 0.
  std::map<std::string, std::vector<std::string>> residents;
  for (const auto& v : g.vertices()) {
    if (!v.is_data()) continue;
    const Placement* p = m.find_placement(v.symbol);
    if (!p || p->kind != StorageKind::kMemory) continue;
    auto bank = m.residence(v.symbol, 0);
    residents[*bank].push_back(v.id);
  }

  auto reach = precedence_closure(g);
  auto precedes = [&](const std::string& a, const std::string& b) {
    auto it = reach.find(a);
    return it != reach.end() && it->second.count(b) > 0;
  };

  // Consumers: operation vertices fed directly by a data vertex.
  std::map<std::string, std::set<std::string>> consumers;
  for (const auto& e : g.edges()) {
    if (g.vertex(e.src).is_data() && g.vertex(e.dst).is_operation())
      consumers[e.src].insert(e.dst);
  }

  std::vector<Mcg> out;
  for (auto& [bank, nodes] : residents) {
    Mcg mcg;
    mcg.bank = bank;
    mcg.token_capacity = m.bank(bank).ports;
    std::sort(nodes.begin(), nodes.end());
    mcg.nodes = nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        const std::string& u = nodes[i];
        const std::string& v = nodes[j];
        if (precedes(u, v) || precedes(v, u)) continue;
        int shared = 0;
        for (const auto& c : consumers[u])
          if (consumers[v].count(c)) ++shared;
        mcg.edges.push_back({u, v, 1 + shared});
      }
    }
    out.push_back(std::move(mcg));
  }
  return out;
}

std::string dump_mcg(const std::vector<Mcg>& mcgs) {
  std::vector<std::string> lines;
  for (const auto& mcg : mcgs) {
    for (const auto& e : mcg.edges) {
      std::ostringstream line;
      line << mcg.bank << ": " << e.u << " -- " << e.v << " w=" << e.weight;
      lines.push_back(line.str());
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

void TokenPool::retire(long cycle) {
  auto it = std::remove_if(in_flight_.begin(), in_flight_.end(),
                           [&](const Entry& e) { return e.release_cycle <= cycle; });
  released_total_ += static_cast<long>(in_flight_.end() - it);
  in_flight_.erase(it, in_flight_.end());
}

int TokenPool::busy_count(long cycle) const {
  int n = 0;
  for (const auto& e : in_flight_)
    if (e.release_cycle > cycle) ++n;
  return n;
}

void TokenPool::take(const std::string& vertex, long cycle, long latency) {
  if (!accessible(cycle)) {
    throw Error(ErrorCode::kInvalidArg,
                "token pool of bank '" + bank_ + "' is exhausted at cycle " +
                    std::to_string(cycle));
  }
  if (latency < 1) {
    throw Error(ErrorCode::kInvalidArg, "token latency must be >= 1");
  }
  in_flight_.push_back({cycle + latency, vertex});
  ++taken_total_;
}

}  // namespace memsched
