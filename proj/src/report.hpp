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

#ifndef MEMSCHED_REPORT_HPP
#define MEMSCHED_REPORT_HPP

#include <string>

#include "memory_map.hpp"
#include "scheduler.hpp"

namespace memsched {

// Text Gantt chart: one row per bank port (`<bank>.p<k>`, every port of every
// bank in the map) and one per occupied functional-unit lane (`<op>.<k>`),
// one column per cycle. A cell holds the vertex id occupying that resource at
// that cycle, `dma:<symbol>` for a transfer, or '.' when idle. Zero-latency
// register accesses occupy nothing and do not appear.
std::string render_gantt(const Schedule& s, const MemoryMap& m);

// Human-readable memory table, one line per row: `<symbol> accesses=<n>`.
std::string render_memory_table(const std::vector<MemoryTableRow>& rows);

}  // namespace memsched

#endif  // MEMSCHED_REPORT_HPP
