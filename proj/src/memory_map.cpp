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

#include "memory_map.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace memsched {

namespace {

constexpr long kForever = std::numeric_limits<long>::max();

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool split_kv(const std::string& tok, std::string& key, std::string& value) {
  auto pos = tok.find('=');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= tok.size()) return false;
  key = tok.substr(0, pos);
  value = tok.substr(pos + 1);
  return true;
}

long parse_long(const std::string& s, int line, const std::string& what, long min) {
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

// Half-open residence interval of a symbol in one bank.
struct BankStay {
  std::string bank;
  long begin;
  long end;  // kForever for the final stay
};

// Residence timeline of a memory-placed symbol: initial bank until the first
// transfer completes, then each to_bank from its completion cycle on.
std::vector<BankStay> residence_timeline(const MemoryMap& m, const Placement& p) {
  std::vector<BankStay> stays;
  long begin = 0;
  std::string current = p.bank;
  for (const auto& t : m.transfers_for(p.symbol)) {
    long completion = t.at_cycle + m.transfer_latency(t);
    stays.push_back({current, begin, completion});
    begin = completion;
    current = t.to_bank;
  }
  stays.push_back({current, begin, kForever});
  return stays;
}

}  // namespace

const MemoryBank* MemoryMap::find_bank(const std::string& name) const {
  for (const auto& b : banks_)
    if (b.name == name) return &b;
  return nullptr;
}

const MemoryBank& MemoryMap::bank(const std::string& name) const {
  const MemoryBank* b = find_bank(name);
  if (!b) throw Error(ErrorCode::kInvalidArg, "no bank '" + name + "'");
  return *b;
}

const Placement* MemoryMap::find_placement(const std::string& symbol) const {
  for (const auto& p : placements_)
    if (p.symbol == symbol) return &p;
  return nullptr;
}

long MemoryMap::transfer_latency(const TransferDirective& t) const {
  return std::max(bank(t.from_bank).read_latency, bank(t.to_bank).write_latency);
}

std::vector<TransferDirective> MemoryMap::transfers_for(const std::string& symbol) const {
  std::vector<TransferDirective> out;
  for (const auto& t : transfers_)
    if (t.symbol == symbol) out.push_back(t);
  std::sort(out.begin(), out.end(),
            [](const TransferDirective& a, const TransferDirective& b) {
              return a.at_cycle < b.at_cycle;
            });
  return out;
}

std::optional<std::string> MemoryMap::residence(const std::string& symbol,
                                                long cycle) const {
  const Placement* p = find_placement(symbol);
  if (!p) throw Error(ErrorCode::kInvalidArg, "symbol '" + symbol + "' is not placed");
  if (p->kind == StorageKind::kRegister) return std::nullopt;
  std::string current = p->bank;
  for (const auto& t : transfers_for(symbol)) {
    if (cycle >= t.at_cycle + transfer_latency(t)) current = t.to_bank;
  }
  return current;
}

bool MemoryMap::in_transfer_window(const std::string& symbol, long cycle) const {
  return overlaps_transfer_window(symbol, cycle, cycle + 1);
}

bool MemoryMap::overlaps_transfer_window(const std::string& symbol, long start,
                                         long end) const {
  for (const auto& t : transfers_) {
    if (t.symbol != symbol) continue;
    long w_end = t.at_cycle + transfer_latency(t);
    if (start < w_end && end > t.at_cycle) return true;
  }
  return false;
}

void MemoryMap::validate() const {
  std::set<std::string> bank_names;
  for (const auto& b : banks_) {
    if (!bank_names.insert(b.name).second)
      throw Error(ErrorCode::kValidate, "duplicate bank '" + b.name + "'");
    if (b.ports < 1 || b.read_latency < 1 || b.write_latency < 1 || b.capacity < 1)
      throw Error(ErrorCode::kValidate,
                  "bank '" + b.name + "' has non-positive ports/latency/capacity");
  }

  std::set<std::string> placed;
  for (const auto& p : placements_) {
    if (!placed.insert(p.symbol).second)
      throw Error(ErrorCode::kValidate, "duplicate placement for symbol '" + p.symbol + "'");
    if (p.kind == StorageKind::kMemory) {
      const MemoryBank* b = find_bank(p.bank);
      if (!b)
        throw Error(ErrorCode::kValidate,
                    "placement of '" + p.symbol + "' references unknown bank '" + p.bank + "'");
      if (p.address < 0 || p.address >= b->capacity)
        throw Error(ErrorCode::kValidate,
                    "address " + std::to_string(p.address) + " of '" + p.symbol +
                        "' is out of capacity " + std::to_string(b->capacity) +
                        " of bank '" + p.bank + "'");
    }
  }

  // Transfer chains: each transfer must move the symbol out of the bank it
  // actually occupies at that cycle, and windows of one symbol cannot overlap.
  std::set<std::string> seen_transfer_symbols;
  for (const auto& t : transfers_) {
    const Placement* p = find_placement(t.symbol);
    if (!p)
      throw Error(ErrorCode::kValidate,
                  "transfer of unplaced symbol '" + t.symbol + "'");
    if (p->kind != StorageKind::kMemory)
      throw Error(ErrorCode::kValidate,
                  "transfer of register-placed symbol '" + t.symbol + "'");
    if (!find_bank(t.from_bank))
      throw Error(ErrorCode::kValidate, "transfer references unknown bank '" + t.from_bank + "'");
    if (!find_bank(t.to_bank))
      throw Error(ErrorCode::kValidate, "transfer references unknown bank '" + t.to_bank + "'");
    if (t.from_bank == t.to_bank)
      throw Error(ErrorCode::kValidate,
                  "transfer of '" + t.symbol + "' has identical source and destination");
    if (t.at_cycle < 0)
      throw Error(ErrorCode::kValidate, "transfer at_cycle must be >= 0");
    seen_transfer_symbols.insert(t.symbol);
  }
  for (const auto& symbol : seen_transfer_symbols) {
    const Placement* p = find_placement(symbol);
    std::string current = p->bank;
    long free_from = 0;
    for (const auto& t : transfers_for(symbol)) {
      if (t.at_cycle < free_from)
        throw Error(ErrorCode::kValidate,
                    "overlapping transfer windows for symbol '" + symbol + "'");
      if (t.from_bank != current)
        throw Error(ErrorCode::kValidate,
                    "transfer of '" + symbol + "' leaves bank '" + t.from_bank +
                        "' but the symbol resides in '" + current + "'");
      long completion = t.at_cycle + transfer_latency(t);
      // The word must fit in the destination too.
      if (p->address >= bank(t.to_bank).capacity)
        throw Error(ErrorCode::kValidate,
                    "address " + std::to_string(p->address) + " of '" + symbol +
                        "' is out of capacity of bank '" + t.to_bank + "'");
      current = t.to_bank;
      free_from = completion;
    }
  }

  // Two symbols sharing (bank, address) must never occupy it at the same
  // cycle; with a static map any sharing is an error.
  for (std::size_t i = 0; i < placements_.size(); ++i) {
    const Placement& a = placements_[i];
    if (a.kind != StorageKind::kMemory) continue;
    auto stays_a = residence_timeline(*this, a);
    for (std::size_t j = i + 1; j < placements_.size(); ++j) {
      const Placement& b = placements_[j];
      if (b.kind != StorageKind::kMemory || a.address != b.address) continue;
      for (const auto& sa : stays_a) {
        for (const auto& sb : residence_timeline(*this, b)) {
          if (sa.bank != sb.bank) continue;
          if (sa.begin < sb.end && sb.begin < sa.end) {
            throw Error(ErrorCode::kValidate,
                        "symbols '" + a.symbol + "' and '" + b.symbol +
                            "' overlap at address " + std::to_string(a.address) +
                            " of bank '" + sa.bank + "'");
          }
        }
      }
    }
  }
}

MemoryMap MemoryMap::parse(const std::string& text) {
  MemoryMap m;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;

    if (toks[0] == "bank") {
      if (toks.size() < 2)
        throw Error(ErrorCode::kParse, "expected 'bank <name> ...'", line_no);
      MemoryBank b;
      b.name = toks[1];
      bool saw_ports = false, saw_rl = false, saw_wl = false, saw_cap = false;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string key, value;
        if (!split_kv(toks[i], key, value))
          throw Error(ErrorCode::kParse, "expected key=value, got '" + toks[i] + "'", line_no);
        if (key == "ports") { b.ports = (int)parse_long(value, line_no, "ports", 1); saw_ports = true; }
        else if (key == "read_latency") { b.read_latency = (int)parse_long(value, line_no, "read_latency", 1); saw_rl = true; }
        else if (key == "write_latency") { b.write_latency = (int)parse_long(value, line_no, "write_latency", 1); saw_wl = true; }
        else if (key == "capacity") { b.capacity = parse_long(value, line_no, "capacity", 1); saw_cap = true; }
        else throw Error(ErrorCode::kParse, "unknown key '" + key + "'", line_no);
      }
      if (!saw_ports || !saw_rl || !saw_wl || !saw_cap)
        throw Error(ErrorCode::kParse,
                    "bank '" + b.name + "' requires ports=, read_latency=, write_latency=, capacity=",
                    line_no);
      if (m.find_bank(b.name))
        throw Error(ErrorCode::kParse, "duplicate bank '" + b.name + "'", line_no);
      m.add_bank(std::move(b));
    } else if (toks[0] == "place") {
      if (toks.size() < 3)
        throw Error(ErrorCode::kParse, "expected 'place <symbol> kind=<memory|register> ...'", line_no);
      Placement p;
      p.symbol = toks[1];
      std::string kind, bank_name, addr;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string key, value;
        if (!split_kv(toks[i], key, value))
          throw Error(ErrorCode::kParse, "expected key=value, got '" + toks[i] + "'", line_no);
        if (key == "kind") kind = value;
        else if (key == "bank") bank_name = value;
        else if (key == "addr") addr = value;
        else throw Error(ErrorCode::kParse, "unknown key '" + key + "'", line_no);
      }
      if (kind == "memory") {
        p.kind = StorageKind::kMemory;
        if (bank_name.empty() || addr.empty())
          throw Error(ErrorCode::kParse,
                      "memory placement of '" + p.symbol + "' requires bank= and addr=", line_no);
        p.bank = bank_name;
        p.address = parse_long(addr, line_no, "addr", 0);
      } else if (kind == "register") {
        p.kind = StorageKind::kRegister;
        if (!bank_name.empty() || !addr.empty())
          throw Error(ErrorCode::kParse,
                      "register placement of '" + p.symbol + "' takes no bank=/addr=", line_no);
      } else {
        throw Error(ErrorCode::kParse, "placement requires kind=memory or kind=register", line_no);
      }
      if (m.find_placement(p.symbol))
        throw Error(ErrorCode::kParse, "duplicate placement for symbol '" + p.symbol + "'", line_no);
      m.add_placement(std::move(p));
    } else if (toks[0] == "transfer") {
      if (toks.size() < 2)
        throw Error(ErrorCode::kParse, "expected 'transfer <symbol> ...'", line_no);
      TransferDirective t;
      t.symbol = toks[1];
      std::string from, to, at;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string key, value;
        if (!split_kv(toks[i], key, value))
          throw Error(ErrorCode::kParse, "expected key=value, got '" + toks[i] + "'", line_no);
        if (key == "from") from = value;
        else if (key == "to") to = value;
        else if (key == "at_cycle") at = value;
        else throw Error(ErrorCode::kParse, "unknown key '" + key + "'", line_no);
      }
      if (from.empty() || to.empty() || at.empty())
        throw Error(ErrorCode::kParse,
                    "transfer requires from=, to= and at_cycle=", line_no);
      t.from_bank = from;
      t.to_bank = to;
      t.at_cycle = parse_long(at, line_no, "at_cycle", 0);
      m.add_transfer(std::move(t));
    } else {
      throw Error(ErrorCode::kParse, "unknown directive '" + toks[0] + "'", line_no);
    }
  }

  m.validate();
  return m;
}

std::string CoverageReport::to_string() const {
  std::ostringstream out;
  for (const auto& s : unmapped) out << "fatal: symbol '" << s << "' has no placement\n";
  for (const auto& s : unused) out << "warning: placement of '" << s << "' is unused\n";
  if (unmapped.empty() && unused.empty()) out << "coverage ok\n";
  return out.str();
}

CoverageReport check_against_sfg(const MemoryMap& m, const SfgGraph& g) {
  std::set<std::string> graph_symbols;
  for (const auto& v : g.vertices())
    if (v.is_data()) graph_symbols.insert(v.symbol);

  CoverageReport report;
  for (const auto& symbol : graph_symbols)
    if (!m.find_placement(symbol)) report.unmapped.push_back(symbol);
  for (const auto& p : m.placements())
    if (!graph_symbols.count(p.symbol)) report.unused.push_back(p.symbol);
  std::sort(report.unmapped.begin(), report.unmapped.end());
  std::sort(report.unused.begin(), report.unused.end());
  return report;
}

}  // namespace memsched
