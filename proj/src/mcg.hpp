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

#ifndef MEMSCHED_MCG_HPP
#define MEMSCHED_MCG_HPP

#include <string>
#include <vector>

#include "memory_map.hpp"
#include "sfg.hpp"

namespace memsched {

// Weighted conflict edge between two data vertices resident in the same bank.
// Vertices are stored in canonical order (u < v).
struct McgEdge {
  std::string u;
  std::string v;
  int weight = 1;
};

// Per-bank conflict graph over the data vertices resident in that bank at
// cycle 0. An edge connects two accesses that are potentially concurrent
// (neither precedes the other); its weight is 1 plus the number of operation
// vertices consuming both. Weights feed diagnostics and the scheduler's
// tie-breaking only; port capacity is what actually constrains a schedule.
struct Mcg {
  std::string bank;
  std::vector<std::string> nodes;  // sorted vertex ids
  std::vector<McgEdge> edges;      // sorted by (u, v)
  int token_capacity = 0;          // equals the bank's port count

  // Sum of weights of edges incident to `vertex` (0 if isolated or absent).
  int weight_sum(const std::string& vertex) const;
};

// One conflict graph per bank holding at least one data vertex, sorted by
// bank name.
std::vector<Mcg> build_mcg(const SfgGraph& g, const MemoryMap& m);

// Debug form, one line per edge: "<bank>: <u> -- <v> w=<weight>", sorted.
std::string dump_mcg(const std::vector<Mcg>& mcgs);

// Port occupancy of one bank during scheduling. Each in-flight access holds a
// token from its start cycle until release (start + latency); the bank is
// accessible at a cycle iff a token is idle then.
class TokenPool {
 public:
  TokenPool(std::string bank, int capacity)
      : bank_(std::move(bank)), capacity_(capacity) {}

  const std::string& bank() const { return bank_; }
  int capacity() const { return capacity_; }

  // Drops entries whose release cycle has passed (release_cycle <= cycle).
  void retire(long cycle);

  bool accessible(long cycle) const { return busy_count(cycle) < capacity_; }

  // Tokens held at `cycle`, i.e. entries releasing strictly after it.
  int busy_count(long cycle) const;

  // Occupies one token for [cycle, cycle + latency). The caller must have
  // checked accessibility; a take on a full pool is a programming error.
  void take(const std::string& vertex, long cycle, long latency);

  // Conservation counters: taken == released + in_flight at all times.
  long taken_total() const { return taken_total_; }
  long released_total() const { return released_total_; }
  std::size_t in_flight() const { return in_flight_.size(); }

 private:
  struct Entry {
    long release_cycle;
    std::string vertex;
  };
  std::string bank_;
  int capacity_ = 0;
  std::vector<Entry> in_flight_;
  long taken_total_ = 0;
  long released_total_ = 0;
};

}  // namespace memsched

#endif  // MEMSCHED_MCG_HPP
