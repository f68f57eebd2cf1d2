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

// Batch front end over the memsched shared library. Everything below talks
// to the engine exclusively through the C interface in memsched.h.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "memsched.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitError = 2;     // parse/validation/infeasibility errors
constexpr int kExitVerdict = 1;   // verify found a violated constraint

// malloc'd strings coming back from the C API.
struct CStr {
  char* ptr = nullptr;
  ~CStr() { msd_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

[[noreturn]] void die(const std::string& context, const std::string& message) {
  std::cerr << "error: " << context << ": " << message << "\n";
  std::exit(kExitError);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die(path.string(), "cannot write file");
  out << contents;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct SfgHandle {
  msd_sfg* ptr = nullptr;
  ~SfgHandle() { msd_sfg_free(ptr); }
};
struct MapHandle {
  msd_map* ptr = nullptr;
  ~MapHandle() { msd_map_free(ptr); }
};
struct ConfigHandle {
  msd_config* ptr = nullptr;
  ~ConfigHandle() { msd_config_free(ptr); }
};
struct ScheduleHandle {
  msd_schedule* ptr = nullptr;
  ~ScheduleHandle() { msd_schedule_free(ptr); }
};

void load_sfg(const std::string& path, SfgHandle& g) {
  CStr err;
  if (msd_sfg_parse(read_file(path).c_str(), &g.ptr, &err.ptr) != MSD_OK)
    die(path, err.str());
}

void load_map(const std::string& path, MapHandle& m) {
  CStr err;
  if (msd_map_parse(read_file(path).c_str(), &m.ptr, &err.ptr) != MSD_OK)
    die(path, err.str());
}

void load_config(const std::string& path, ConfigHandle& c) {
  CStr err;
  if (msd_config_parse(read_file(path).c_str(), &c.ptr, &err.ptr) != MSD_OK)
    die(path, err.str());
}

int cmd_schedule(const std::string& sfg_path, const std::string& map_path,
                 const std::string& cfg_path, const std::string& out_dir,
                 bool want_gantt, bool want_mcg) {
  SfgHandle g;
  MapHandle m;
  ConfigHandle c;
  load_sfg(sfg_path, g);
  load_map(map_path, m);
  load_config(cfg_path, c);

  {
    CStr report, err;
    msd_status st = msd_check_map(g.ptr, m.ptr, &report.ptr, &err.ptr);
    if (st == MSD_ERR_UNMAPPED) die(map_path, "\n" + report.str());
    if (st != MSD_OK) die(map_path, err.str());
    // Unused placements are only worth a warning.
    std::string text = report.str();
    if (text.find("warning:") != std::string::npos) std::cerr << text;
  }

  CStr mcg;
  if (want_mcg) {
    CStr err;
    if (msd_mcg_dump(g.ptr, m.ptr, &mcg.ptr, &err.ptr) != MSD_OK) die(map_path, err.str());
    std::cerr << mcg.str();
  }

  ScheduleHandle s;
  {
    CStr err;
    if (msd_schedule_run(g.ptr, m.ptr, c.ptr, &s.ptr, &err.ptr) != MSD_OK)
      die(sfg_path, err.str());
  }

  CStr dump;
  if (msd_schedule_dump(s.ptr, &dump.ptr) != MSD_OK) die(sfg_path, "dump failed");
  std::cout << dump.str();

  CStr gantt;
  if (want_gantt) {
    CStr err;
    if (msd_schedule_gantt(s.ptr, m.ptr, &gantt.ptr, &err.ptr) != MSD_OK)
      die(sfg_path, err.str());
    std::cout << "\n" << gantt.str();
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "schedule.txt", dump.str());
    if (want_gantt) write_file(fs::path(out_dir) / "gantt.txt", gantt.str());
    if (want_mcg) write_file(fs::path(out_dir) / "mcg.txt", mcg.str());
  }
  return 0;
}

int cmd_verify(const std::string& sfg_path, const std::string& map_path,
               const std::string& cfg_path, const std::string& dump_path) {
  SfgHandle g;
  MapHandle m;
  ConfigHandle c;
  load_sfg(sfg_path, g);
  load_map(map_path, m);
  load_config(cfg_path, c);

  ScheduleHandle s;
  {
    CStr err;
    if (msd_schedule_parse_dump(read_file(dump_path).c_str(), &s.ptr, &err.ptr) != MSD_OK)
      die(dump_path, err.str());
  }

  CStr verdict, err;
  msd_status st = msd_schedule_check(g.ptr, m.ptr, c.ptr, s.ptr, &verdict.ptr, &err.ptr);
  if (st != MSD_OK && st != MSD_ERR_CHECK) die(dump_path, err.str());
  std::cout << verdict.str() << "\n";
  return st == MSD_OK ? 0 : kExitVerdict;
}

int cmd_explore(const std::string& sfg_path, const std::string& maps_arg,
                const std::string& horizons_arg, const std::string& cfg_path,
                const std::string& out_dir) {
  SfgHandle g;
  load_sfg(sfg_path, g);

  auto map_paths = split_commas(maps_arg);
  if (map_paths.empty()) die("--maps", "needs at least one map file");
  std::vector<std::string> texts, labels;
  for (const auto& p : map_paths) {
    texts.push_back(read_file(p));
    labels.push_back(fs::path(p).filename().string());
  }
  std::vector<const char*> text_ptrs, label_ptrs;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    text_ptrs.push_back(texts[i].c_str());
    label_ptrs.push_back(labels[i].c_str());
  }

  std::vector<long> horizons;
  for (const auto& h : split_commas(horizons_arg)) {
    try {
      std::size_t used = 0;
      long v = std::stol(h, &used);
      if (used != h.size() || v < 1) throw std::invalid_argument(h);
      horizons.push_back(v);
    } catch (const std::exception&) {
      die("--horizons", "'" + h + "' is not a positive integer");
    }
  }
  if (horizons.empty()) die("--horizons", "needs at least one horizon");

  ConfigHandle c;
  if (!cfg_path.empty()) load_config(cfg_path, c);

  CStr report, err;
  if (msd_explore(g.ptr, text_ptrs.data(), label_ptrs.data(), texts.size(),
                  horizons.data(), horizons.size(), c.ptr, &report.ptr,
                  &err.ptr) != MSD_OK)
    die(sfg_path, err.str());

  std::cout << report.str();
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "explore.txt", report.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memory-aware operation scheduler for dataflow kernels"};
  app.require_subcommand(1);

  std::string sfg_path, map_path, cfg_path, dump_path, out_dir, maps_arg, horizons_arg;
  bool want_gantt = false, want_mcg = false;

  auto* sched = app.add_subcommand("schedule", "schedule a kernel against a memory map");
  sched->add_option("sfg", sfg_path, "dataflow graph file")->required();
  sched->add_option("map", map_path, "memory mapping file")->required();
  sched->add_option("--config", cfg_path, "scheduler config file")->required();
  sched->add_option("--out", out_dir, "directory for schedule.txt / gantt.txt / mcg.txt");
  sched->add_flag("--gantt", want_gantt, "also print a text Gantt chart");
  sched->add_flag("--mcg", want_mcg, "print the per-bank conflict graphs to stderr");

  auto* verify = app.add_subcommand("verify", "check a schedule dump against all constraints");
  verify->add_option("sfg", sfg_path, "dataflow graph file")->required();
  verify->add_option("map", map_path, "memory mapping file")->required();
  verify->add_option("--config", cfg_path, "scheduler config file")->required();
  verify->add_option("--schedule", dump_path, "schedule dump file")->required();

  auto* explore = app.add_subcommand("explore", "compare candidate memory architectures");
  explore->add_option("sfg", sfg_path, "dataflow graph file")->required();
  explore->add_option("--maps", maps_arg, "comma-separated mapping files")->required();
  explore->add_option("--horizons", horizons_arg, "comma-separated cycle budgets")->required();
  explore->add_option("--config", cfg_path, "optional scheduler config (latencies, FU limits)");
  explore->add_option("--out", out_dir, "directory for explore.txt");

  CLI11_PARSE(app, argc, argv);

  if (sched->parsed())
    return cmd_schedule(sfg_path, map_path, cfg_path, out_dir, want_gantt, want_mcg);
  if (verify->parsed()) return cmd_verify(sfg_path, map_path, cfg_path, dump_path);
  return cmd_explore(sfg_path, maps_arg, horizons_arg, cfg_path, out_dir);
}
