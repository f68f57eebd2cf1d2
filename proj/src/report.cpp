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

#include "report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace memsched {

namespace {

struct Occupant {
  long start, end;
  std::string label;
};

// First-free-lane assignment; occupants must be sorted by (start, label).
std::vector<std::vector<Occupant>> assign_lanes(const std::vector<Occupant>& occupants) {
  std::vector<std::vector<Occupant>> lanes;
  for (const auto& o : occupants) {
    bool placed = false;
    for (auto& lane : lanes) {
      if (lane.empty() || lane.back().end <= o.start) {
        lane.push_back(o);
        placed = true;
        break;
      }
    }
    if (!placed) lanes.push_back({o});
  }
  return lanes;
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

void rstrip(std::string& s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
}

}  // namespace

std::string render_gantt(const Schedule& s, const MemoryMap& m) {
  // Group occupancy by resource: banks first (all ports, idle or not), then
  // functional-unit classes that actually appear.
  std::map<std::string, std::vector<Occupant>> bank_occ;
  for (const auto& b : m.banks()) bank_occ[b.name];
  std::map<std::string, std::vector<Occupant>> fu_occ;

  long n_cols = s.achieved_latency;
  for (const auto& e : s.entries) {
    if (e.start == e.end) continue;  // register access, occupies nothing
    if (e.resource == kRegisterResource) continue;
    if (m.find_bank(e.resource))
      bank_occ[e.resource].push_back({e.start, e.end, e.vertex});
    else
      fu_occ[e.resource].push_back({e.start, e.end, e.vertex});
  }
  for (const auto& t : s.dma) {
    std::string label = "dma:" + t.directive.symbol;
    bank_occ[t.directive.from_bank].push_back({t.start, t.end, label});
    bank_occ[t.directive.to_bank].push_back({t.start, t.end, label});
    n_cols = std::max(n_cols, t.end);
  }

  struct Row {
    std::string label;
    std::vector<Occupant> cells;
  };
  std::vector<Row> rows;

  auto sort_occ = [](std::vector<Occupant>& v) {
    std::sort(v.begin(), v.end(), [](const Occupant& a, const Occupant& b) {
      if (a.start != b.start) return a.start < b.start;
      return a.label < b.label;
    });
  };

  for (auto& [bank, occ] : bank_occ) {
    sort_occ(occ);
    auto lanes = assign_lanes(occ);
    int ports = m.bank(bank).ports;
    // Every port gets a row; lane overflow beyond the port count would mean
    // an invalid schedule, but render it anyway rather than hide it.
    std::size_t n_rows = std::max<std::size_t>(ports, lanes.size());
    for (std::size_t k = 0; k < n_rows; ++k) {
      Row row;
      row.label = bank + ".p" + std::to_string(k);
      if (k < lanes.size()) row.cells = lanes[k];
      rows.push_back(std::move(row));
    }
  }
  for (auto& [op, occ] : fu_occ) {
    sort_occ(occ);
    auto lanes = assign_lanes(occ);
    for (std::size_t k = 0; k < lanes.size(); ++k) {
      rows.push_back({op + "." + std::to_string(k), lanes[k]});
    }
  }

  std::size_t cell_width = 1;
  for (const auto& row : rows)
    for (const auto& o : row.cells) cell_width = std::max(cell_width, o.label.size());
  std::size_t label_width = 0;
  for (const auto& row : rows) label_width = std::max(label_width, row.label.size());

  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line = pad(row.label + ":", label_width + 1);
    for (long c = 0; c < n_cols; ++c) {
      std::string cell = ".";
      for (const auto& o : row.cells) {
        if (o.start <= c && c < o.end) {
          cell = o.label;
          break;
        }
      }
      line += " " + pad(cell, cell_width);
    }
    rstrip(line);
    out << line << "\n";
  }
  return out.str();
}

std::string render_memory_table(const std::vector<MemoryTableRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) {
    out << r.symbol << " accesses=" << r.accesses;
    if (r.suggested_kind)
      out << " kind=" << (*r.suggested_kind == StorageKind::kMemory ? "memory" : "register");
    out << "\n";
  }
  return out.str();
}

}  // namespace memsched
