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

#include "sfg.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace memsched {

namespace {

// Operation names treated as logical rather than arithmetic. The distinction
// has no scheduling effect; latency and functional-unit class are keyed by
// the operation name either way.
const std::set<std::string>& logical_ops() {
  static const std::set<std::string> ops = {
      "and", "or",  "xor", "not", "nand", "nor", "xnor",
      "eq",  "ne",  "lt",  "le",  "gt",   "ge",  "mux",
      "shl", "shr"};
  return ops;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Splits "key=value"; returns false if '=' is missing or either side empty.
bool split_kv(const std::string& tok, std::string& key, std::string& value) {
  auto pos = tok.find('=');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= tok.size()) return false;
  key = tok.substr(0, pos);
  value = tok.substr(pos + 1);
  return true;
}

int parse_positive_int(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size() || v < 1) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, what + " must be a positive integer, got '" + s + "'",
                line);
  }
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidate: return "validate";
    case ErrorCode::kUnmapped: return "unmapped";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kTooLarge: return "too-large";
    case ErrorCode::kInvalidArg: return "invalid-arg";
  }
  return "unknown";
}

bool SfgVertex::operator==(const SfgVertex& other) const {
  if (id != other.id || kind != other.kind) return false;
  switch (kind) {
    case VertexKind::kArithmetic:
    case VertexKind::kLogical:
      return op == other.op;
    case VertexKind::kData:
      return symbol == other.symbol && access == other.access;
    case VertexKind::kDelay:
      return depth == other.depth;
  }
  return true;
}

bool IterationDependency::operator<(const IterationDependency& other) const {
  if (producer != other.producer) return producer < other.producer;
  if (consumer != other.consumer) return consumer < other.consumer;
  return depth < other.depth;
}

void SfgGraph::add_vertex(SfgVertex v) {
  if (index_.count(v.id)) {
    throw Error(ErrorCode::kValidate, "duplicate vertex id '" + v.id + "'");
  }
  index_[v.id] = vertices_.size();
  vertices_.push_back(std::move(v));
}

void SfgGraph::add_edge(const std::string& src, const std::string& dst) {
  edges_.push_back(SfgEdge{src, dst});
}

bool SfgGraph::has_vertex(const std::string& id) const { return index_.count(id) > 0; }

const SfgVertex& SfgGraph::vertex(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::kInvalidArg, "no vertex '" + id + "'");
  }
  return vertices_[it->second];
}

std::vector<std::string> SfgGraph::predecessors(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& e : edges_)
    if (e.dst == id) out.push_back(e.src);
  return out;
}

std::vector<std::string> SfgGraph::successors(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& e : edges_)
    if (e.src == id) out.push_back(e.dst);
  return out;
}

std::vector<SfgEdge> SfgGraph::precedence_edges() const {
  std::vector<SfgEdge> out;
  for (const auto& e : edges_) {
    if (!vertex(e.src).is_delay() && !vertex(e.dst).is_delay()) out.push_back(e);
  }
  return out;
}

std::vector<std::string> SfgGraph::topo_order() const {
  std::map<std::string, int> indeg;
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& v : vertices_)
    if (!v.is_delay()) indeg[v.id] = 0;
  for (const auto& e : precedence_edges()) {
    ++indeg[e.dst];
    succ[e.src].push_back(e.dst);
  }
  std::set<std::string> ready;
  for (const auto& [id, d] : indeg)
    if (d == 0) ready.insert(id);
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(id);
    for (const auto& s : succ[id])
      if (--indeg[s] == 0) ready.insert(s);
  }
  if (order.size() != indeg.size()) {
    throw Error(ErrorCode::kValidate, "precedence relation is cyclic");
  }
  return order;
}

void SfgGraph::validate() const {
  for (const auto& v : vertices_) {
    switch (v.kind) {
      case VertexKind::kArithmetic:
      case VertexKind::kLogical:
        if (v.op.empty())
          throw Error(ErrorCode::kValidate, "operation vertex '" + v.id + "' has no op name");
        break;
      case VertexKind::kData:
        if (v.symbol.empty())
          throw Error(ErrorCode::kValidate, "data vertex '" + v.id + "' has no symbol");
        break;
      case VertexKind::kDelay:
        if (v.depth < 1)
          throw Error(ErrorCode::kValidate,
                      "delay vertex '" + v.id + "' must have depth >= 1");
        break;
    }
  }

  std::map<std::string, int> in_degree, out_degree;
  std::set<SfgEdge> seen;
  for (const auto& e : edges_) {
    if (!has_vertex(e.src))
      throw Error(ErrorCode::kValidate, "edge references unknown vertex '" + e.src + "'");
    if (!has_vertex(e.dst))
      throw Error(ErrorCode::kValidate, "edge references unknown vertex '" + e.dst + "'");
    if (e.src == e.dst)
      throw Error(ErrorCode::kValidate, "self loop on vertex '" + e.src + "'");
    if (!seen.insert(e).second)
      throw Error(ErrorCode::kValidate,
                  "duplicate edge " + e.src + " -> " + e.dst);
    ++out_degree[e.src];
    ++in_degree[e.dst];
  }

  for (const auto& v : vertices_) {
    if (v.is_read() && out_degree[v.id] == 0)
      throw Error(ErrorCode::kValidate,
                  "data read vertex '" + v.id + "' has no consumer");
    if (v.is_write() && in_degree[v.id] == 0)
      throw Error(ErrorCode::kValidate,
                  "data write vertex '" + v.id + "' has no producer");
  }

  // Deleting every delay vertex must leave an acyclic graph: delay vertices
  // are the only legal cycle breakers.
  std::map<std::string, int> indeg;
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& v : vertices_)
    if (!v.is_delay()) indeg[v.id] = 0;
  for (const auto& e : edges_) {
    if (vertex(e.src).is_delay() || vertex(e.dst).is_delay()) continue;
    ++indeg[e.dst];
    succ[e.src].push_back(e.dst);
  }
  std::deque<std::string> queue;
  for (const auto& [id, d] : indeg)
    if (d == 0) queue.push_back(id);
  std::size_t removed = 0;
  while (!queue.empty()) {
    std::string id = queue.front();
    queue.pop_front();
    ++removed;
    for (const auto& s : succ[id])
      if (--indeg[s] == 0) queue.push_back(s);
  }
  if (removed != indeg.size()) {
    std::string members;
    for (const auto& [id, d] : indeg) {
      if (d > 0) {
        if (!members.empty()) members += ", ";
        members += id;
      }
    }
    throw Error(ErrorCode::kValidate,
                "cycle not broken by a delay vertex (involving: " + members + ")");
  }
}

SfgGraph SfgGraph::parse(const std::string& text) {
  SfgGraph g;
  bool saw_header = false;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::vector<std::pair<int, SfgEdge>> edge_lines;

  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;

    if (!saw_header) {
      if (toks[0] != "sfg" || toks.size() != 2)
        throw Error(ErrorCode::kParse, "expected 'sfg <name>' header", line_no);
      g.name_ = toks[1];
      saw_header = true;
      continue;
    }

    if (toks[0] == "node") {
      if (toks.size() < 3)
        throw Error(ErrorCode::kParse, "expected 'node <id> kind=<kind> ...'", line_no);
      SfgVertex v;
      v.id = toks[1];
      std::string kind_str, symbol, access, depth;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string key, value;
        if (!split_kv(toks[i], key, value))
          throw Error(ErrorCode::kParse, "expected key=value, got '" + toks[i] + "'", line_no);
        if (key == "kind") kind_str = value;
        else if (key == "symbol") symbol = value;
        else if (key == "access") access = value;
        else if (key == "depth") depth = value;
        else throw Error(ErrorCode::kParse, "unknown key '" + key + "'", line_no);
      }
      if (kind_str.empty())
        throw Error(ErrorCode::kParse, "node '" + v.id + "' is missing kind=", line_no);

      if (kind_str == "data") {
        v.kind = VertexKind::kData;
        if (symbol.empty())
          throw Error(ErrorCode::kParse, "data node '" + v.id + "' requires symbol=", line_no);
        if (access == "read") v.access = DataAccess::kRead;
        else if (access == "write") v.access = DataAccess::kWrite;
        else
          throw Error(ErrorCode::kParse,
                      "data node '" + v.id + "' requires access=read|write", line_no);
        v.symbol = symbol;
        if (!depth.empty())
          throw Error(ErrorCode::kParse, "depth= is only valid on delay nodes", line_no);
      } else if (kind_str == "delay") {
        v.kind = VertexKind::kDelay;
        v.depth = depth.empty() ? 1 : parse_positive_int(depth, line_no, "depth");
        if (!symbol.empty() || !access.empty())
          throw Error(ErrorCode::kParse,
                      "symbol=/access= are only valid on data nodes", line_no);
      } else {
        v.kind = logical_ops().count(kind_str) ? VertexKind::kLogical
                                               : VertexKind::kArithmetic;
        v.op = kind_str;
        if (!symbol.empty() || !access.empty())
          throw Error(ErrorCode::kParse,
                      "symbol=/access= are only valid on data nodes", line_no);
        if (!depth.empty())
          throw Error(ErrorCode::kParse, "depth= is only valid on delay nodes", line_no);
      }
      if (g.index_.count(v.id))
        throw Error(ErrorCode::kParse, "duplicate vertex id '" + v.id + "'", line_no);
      g.add_vertex(std::move(v));
    } else if (toks[0] == "edge") {
      if (toks.size() != 4 || toks[2] != "->")
        throw Error(ErrorCode::kParse, "expected 'edge <src> -> <dst>'", line_no);
      edge_lines.push_back({line_no, SfgEdge{toks[1], toks[3]}});
    } else {
      throw Error(ErrorCode::kParse, "unknown directive '" + toks[0] + "'", line_no);
    }
  }
  if (!saw_header) throw Error(ErrorCode::kParse, "empty input: missing 'sfg <name>' header");

  for (const auto& [ln, e] : edge_lines) {
    if (!g.has_vertex(e.src))
      throw Error(ErrorCode::kParse, "edge references unknown vertex '" + e.src + "'", ln);
    if (!g.has_vertex(e.dst))
      throw Error(ErrorCode::kParse, "edge references unknown vertex '" + e.dst + "'", ln);
    if (e.src == e.dst)
      throw Error(ErrorCode::kParse, "self loop on vertex '" + e.src + "'", ln);
    g.add_edge(e.src, e.dst);
  }

  g.validate();
  return g;
}

std::string SfgGraph::serialize() const {
  std::vector<const SfgVertex*> vs;
  for (const auto& v : vertices_) vs.push_back(&v);
  std::sort(vs.begin(), vs.end(),
            [](const SfgVertex* a, const SfgVertex* b) { return a->id < b->id; });
  std::vector<SfgEdge> es = edges_;
  std::sort(es.begin(), es.end());

  std::ostringstream out;
  out << "sfg " << name_ << "\n";
  for (const auto* v : vs) {
    out << "node " << v->id;
    switch (v->kind) {
      case VertexKind::kArithmetic:
      case VertexKind::kLogical:
        out << " kind=" << v->op;
        break;
      case VertexKind::kData:
        out << " kind=data symbol=" << v->symbol << " access="
            << (v->access == DataAccess::kRead ? "read" : "write");
        break;
      case VertexKind::kDelay:
        out << " kind=delay depth=" << v->depth;
        break;
    }
    out << "\n";
  }
  for (const auto& e : es) out << "edge " << e.src << " -> " << e.dst << "\n";
  return out.str();
}

bool SfgGraph::operator==(const SfgGraph& other) const {
  if (name_ != other.name_) return false;
  if (vertices_.size() != other.vertices_.size()) return false;
  if (edges_.size() != other.edges_.size()) return false;
  auto sorted_vertices = [](const SfgGraph& g) {
    std::vector<SfgVertex> vs = g.vertices_;
    std::sort(vs.begin(), vs.end(),
              [](const SfgVertex& a, const SfgVertex& b) { return a.id < b.id; });
    return vs;
  };
  if (!(sorted_vertices(*this) == sorted_vertices(other))) return false;
  std::vector<SfgEdge> a = edges_, b = other.edges_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::vector<MemoryTableRow> extract_memory_table(const SfgGraph& g) {
  std::map<std::string, int> counts;
  for (const auto& v : g.vertices())
    if (v.is_data()) ++counts[v.symbol];
  std::vector<MemoryTableRow> rows;
  rows.reserve(counts.size());
  for (const auto& [symbol, n] : counts) rows.push_back({symbol, n, std::nullopt});
  return rows;
}

namespace {

void walk_delay_paths(const SfgGraph& g, const std::string& producer,
                      const std::string& delay_id, int depth,
                      std::set<std::string>& visited,
                      std::set<IterationDependency>& out) {
  for (const auto& next : g.successors(delay_id)) {
    const SfgVertex& nv = g.vertex(next);
    if (nv.is_delay()) {
      if (visited.insert(next).second) {
        walk_delay_paths(g, producer, next, depth + nv.depth, visited, out);
        visited.erase(next);
      }
      // A revisit means a cycle made purely of delay vertices; only simple
      // paths contribute dependencies.
    } else {
      out.insert({producer, next, depth});
    }
  }
}

}  // namespace

std::vector<IterationDependency> iteration_dependencies(const SfgGraph& g) {
  std::set<IterationDependency> out;
  for (const auto& e : g.edges()) {
    const SfgVertex& src = g.vertex(e.src);
    const SfgVertex& dst = g.vertex(e.dst);
    if (src.is_delay() || !dst.is_delay()) continue;
    std::set<std::string> visited = {e.dst};
    walk_delay_paths(g, e.src, e.dst, dst.depth, visited, out);
  }
  return {out.begin(), out.end()};
}

}  // namespace memsched
