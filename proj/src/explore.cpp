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

#include "explore.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace memsched {

namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

}  // namespace

ExplorationReport explore(const SfgGraph& g,
                          const std::vector<ExplorationCandidate>& candidates,
                          const std::vector<long>& horizons,
                          const SchedulerConfig& base_cfg) {
  if (candidates.empty())
    throw Error(ErrorCode::kInvalidArg, "exploration needs at least one candidate map");
  if (horizons.empty())
    throw Error(ErrorCode::kInvalidArg, "exploration needs at least one horizon");

  ExplorationReport report;
  for (const auto& cand : candidates) {
    MemoryMap m;
    std::string parse_reason;
    bool parsed = true;
    try {
      m = MemoryMap::parse(cand.map_text);
    } catch (const Error& e) {
      parsed = false;
      parse_reason = e.what();
    }

    for (long h : horizons) {
      ExplorationRow row;
      row.label = cand.label;
      row.horizon = h;
      if (!parsed) {
        row.reason = parse_reason;
        report.rows.push_back(std::move(row));
        continue;
      }
      row.banks = (int)m.banks().size();
      for (const auto& b : m.banks()) row.total_ports += b.ports;
      row.area_proxy = row.total_ports;
      try {
        SchedulerConfig cfg = base_cfg;
        cfg.horizon = h;
        Schedule s = schedule(g, m, cfg);
        row.feasible = true;
        row.latency = s.achieved_latency;
      } catch (const Error& e) {
        row.reason = e.what();
      }
      report.rows.push_back(std::move(row));
    }
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const ExplorationRow& a, const ExplorationRow& b) {
              long la = a.feasible ? a.latency : std::numeric_limits<long>::max();
              long lb = b.feasible ? b.latency : std::numeric_limits<long>::max();
              if (la != lb) return la < lb;
              if (a.area_proxy != b.area_proxy) return a.area_proxy < b.area_proxy;
              if (a.label != b.label) return a.label < b.label;
              return a.horizon < b.horizon;
            });
  return report;
}

std::string ExplorationReport::to_string() const {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"label", "horizon", "banks", "ports", "latency", "area", "status"});
  for (const auto& r : rows) {
    cells.push_back({r.label, std::to_string(r.horizon), std::to_string(r.banks),
                     std::to_string(r.total_ports),
                     r.feasible ? std::to_string(r.latency) : "-",
                     std::to_string(r.area_proxy),
                     r.feasible ? "ok" : "infeasible: " + r.reason});
  }
  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i)
      widths[i] = std::max(widths[i], row[i].size());

  std::ostringstream out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += pad(row[i], widths[i]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  return out.str();
}

}  // namespace memsched
