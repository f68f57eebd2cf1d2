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

#ifndef MEMSCHED_SFG_HPP
#define MEMSCHED_SFG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace memsched {

// Vertex classification of the dataflow IR. Arithmetic and logical vertices
// are schedulable operations; data vertices are single-word memory accesses;
// delay vertices mark values produced in a previous iteration and are never
// scheduled themselves.
enum class VertexKind { kArithmetic, kLogical, kData, kDelay };

enum class DataAccess { kRead, kWrite };

// Storage class a symbol can be assigned to by the memory map.
enum class StorageKind { kMemory, kRegister };

struct SfgVertex {
  std::string id;
  VertexKind kind = VertexKind::kArithmetic;
  std::string op;                         // operation name, e.g. "add", "mul"
  std::string symbol;                     // data vertices only
  DataAccess access = DataAccess::kRead;  // data vertices only
  int depth = 0;                          // delay vertices only, >= 1

  bool is_operation() const {
    return kind == VertexKind::kArithmetic || kind == VertexKind::kLogical;
  }
  bool is_data() const { return kind == VertexKind::kData; }
  bool is_delay() const { return kind == VertexKind::kDelay; }
  bool is_read() const { return is_data() && access == DataAccess::kRead; }
  bool is_write() const { return is_data() && access == DataAccess::kWrite; }

  bool operator==(const SfgVertex& other) const;
};

struct SfgEdge {
  std::string src;
  std::string dst;

  bool operator==(const SfgEdge& other) const {
    return src == other.src && dst == other.dst;
  }
  bool operator<(const SfgEdge& other) const {
    return src != other.src ? src < other.src : dst < other.dst;
  }
};

// A (producer, consumer, depth) triple derived from paths through delay
// vertices: the consumer reads the value the producer computed `depth`
// iterations earlier, so no intra-iteration precedence exists between them.
struct IterationDependency {
  std::string producer;
  std::string consumer;
  int depth = 0;

  bool operator==(const IterationDependency& other) const {
    return producer == other.producer && consumer == other.consumer &&
           depth == other.depth;
  }
  bool operator<(const IterationDependency& other) const;
};

// One row of the memory table: a distinct symbol and how many accesses the
// graph makes to it. The storage kind stays unset until a mapping assigns one.
struct MemoryTableRow {
  std::string symbol;
  int accesses = 0;
  std::optional<StorageKind> suggested_kind;
};

class SfgGraph {
 public:
  SfgGraph() = default;
  explicit SfgGraph(std::string name) : name_(std::move(name)) {}

  // Parses the line-oriented SFG format:
  //   sfg <name>
  //   node <id> kind=<op|data|delay> [symbol=<s> access=<read|write>] [depth=<n>]
  //   edge <src> -> <dst>
  // '#' starts a comment; unknown keys are rejected. The returned graph has
  // been validated. Throws Error on syntax or invariant violations.
  static SfgGraph parse(const std::string& text);

  void add_vertex(SfgVertex v);
  void add_edge(const std::string& src, const std::string& dst);

  // Checks all graph invariants: endpoint existence, no self loops, data
  // vertex connectivity, and acyclicity of the delay-free subgraph.
  void validate() const;

  const std::string& name() const { return name_; }
  const std::vector<SfgVertex>& vertices() const { return vertices_; }
  const std::vector<SfgEdge>& edges() const { return edges_; }

  bool has_vertex(const std::string& id) const;
  const SfgVertex& vertex(const std::string& id) const;

  std::vector<std::string> predecessors(const std::string& id) const;
  std::vector<std::string> successors(const std::string& id) const;

  // Edges between two non-delay vertices; this is the precedence relation the
  // scheduler enforces. Edges into or out of delay vertices carry only
  // inter-iteration meaning and are excluded.
  std::vector<SfgEdge> precedence_edges() const;

  // Deterministic topological order of the non-delay vertices under the
  // precedence relation (ties broken by id).
  std::vector<std::string> topo_order() const;

  // Canonical text form: vertices sorted by id, edges sorted by (src, dst).
  // parse(serialize()) reconstructs an equal graph.
  std::string serialize() const;

  bool operator==(const SfgGraph& other) const;

 private:
  std::string name_;
  std::vector<SfgVertex> vertices_;
  std::vector<SfgEdge> edges_;
  std::map<std::string, std::size_t> index_;
};

// One row per distinct symbol named by any data vertex, sorted by symbol.
std::vector<MemoryTableRow> extract_memory_table(const SfgGraph& g);

// Enumerates all (producer, consumer, total depth) triples along simple paths
// through delay vertices. Depths add along a chain of delays; fan-out yields
// one triple per path. Result is sorted and duplicate-free.
std::vector<IterationDependency> iteration_dependencies(const SfgGraph& g);

}  // namespace memsched

#endif  // MEMSCHED_SFG_HPP
