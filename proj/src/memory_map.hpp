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

#ifndef MEMSCHED_MEMORY_MAP_HPP
#define MEMSCHED_MEMORY_MAP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfg.hpp"

namespace memsched {

struct MemoryBank {
  std::string name;
  int ports = 1;          // simultaneous R/W accesses
  int read_latency = 1;   // cycles
  int write_latency = 1;  // cycles
  long capacity = 1;      // words
};

struct Placement {
  std::string symbol;
  StorageKind kind = StorageKind::kMemory;
  std::string bank;  // memory kind only
  long address = 0;  // word offset, memory kind only
};

// Declared inter-bank move of a symbol, executed at a fixed cycle. The move
// occupies one port on both banks for max(read_latency(from),
// write_latency(to)) consecutive cycles starting at at_cycle.
struct TransferDirective {
  std::string symbol;
  std::string from_bank;
  std::string to_bank;
  long at_cycle = 0;
};

class MemoryMap {
 public:
  // Parses the line-oriented mapping format:
  //   bank <name> ports=<int> read_latency=<int> write_latency=<int> capacity=<int>
  //   place <symbol> kind=<memory|register> [bank=<name> addr=<int>]
  //   transfer <symbol> from=<bank> to=<bank> at_cycle=<int>
  // '#' starts a comment. The returned map has been validated.
  static MemoryMap parse(const std::string& text);

  void add_bank(MemoryBank b) { banks_.push_back(std::move(b)); }
  void add_placement(Placement p) { placements_.push_back(std::move(p)); }
  void add_transfer(TransferDirective t) { transfers_.push_back(std::move(t)); }

  // Enforces every map invariant, including the address overlap rule: two
  // symbols may share (bank, address) only when transfers make their
  // residence intervals in that bank disjoint.
  void validate() const;

  const std::vector<MemoryBank>& banks() const { return banks_; }
  const std::vector<Placement>& placements() const { return placements_; }
  const std::vector<TransferDirective>& transfers() const { return transfers_; }

  const MemoryBank* find_bank(const std::string& name) const;
  const MemoryBank& bank(const std::string& name) const;  // throws if absent
  const Placement* find_placement(const std::string& symbol) const;

  bool is_static() const { return transfers_.empty(); }

  // Cycles a transfer holds a port on both banks.
  long transfer_latency(const TransferDirective& t) const;

  // Bank holding `symbol` at `cycle`, or nullopt for register placements.
  // Before a transfer completes (at_cycle + transfer_latency) the symbol
  // still resides in from_bank; from completion on, in to_bank.
  std::optional<std::string> residence(const std::string& symbol, long cycle) const;

  // True while the symbol is being moved: at_cycle <= cycle < completion.
  bool in_transfer_window(const std::string& symbol, long cycle) const;

  // True if [start, end) intersects any transfer window of the symbol.
  bool overlaps_transfer_window(const std::string& symbol, long start, long end) const;

  // Transfers of one symbol, sorted by at_cycle.
  std::vector<TransferDirective> transfers_for(const std::string& symbol) const;

 private:
  std::vector<MemoryBank> banks_;
  std::vector<Placement> placements_;
  std::vector<TransferDirective> transfers_;
};

// Result of matching a map against a graph: symbols the graph accesses but
// the map does not place (fatal), and placements that no data vertex uses
// (warning only).
struct CoverageReport {
  std::vector<std::string> unmapped;
  std::vector<std::string> unused;

  bool ok() const { return unmapped.empty(); }
  std::string to_string() const;
};

CoverageReport check_against_sfg(const MemoryMap& m, const SfgGraph& g);

}  // namespace memsched

#endif  // MEMSCHED_MEMORY_MAP_HPP
