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

#include "memsched.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "explore.hpp"
#include "report.hpp"
#include "scheduler.hpp"

struct msd_sfg {
  memsched::SfgGraph g;
};
struct msd_map {
  memsched::MemoryMap m;
};
struct msd_config {
  memsched::SchedulerConfig c;
};
struct msd_schedule {
  memsched::Schedule s;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& message) {
  if (err) *err = dup_string(message);
}

msd_status status_of(memsched::ErrorCode code) {
  using memsched::ErrorCode;
  switch (code) {
    case ErrorCode::kParse: return MSD_ERR_PARSE;
    case ErrorCode::kValidate: return MSD_ERR_VALIDATE;
    case ErrorCode::kUnmapped: return MSD_ERR_UNMAPPED;
    case ErrorCode::kInfeasible: return MSD_ERR_INFEASIBLE;
    case ErrorCode::kTooLarge: return MSD_ERR_TOO_LARGE;
    case ErrorCode::kInvalidArg: return MSD_ERR_ARG;
  }
  return MSD_ERR_INTERNAL;
}

// Runs `fn`, routing exceptions into status codes and the err out-parameter.
template <typename Fn>
msd_status guarded(char** err, Fn&& fn) {
  try {
    return fn();
  } catch (const memsched::Error& e) {
    set_err(err, e.what());
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    set_err(err, "out of memory");
    return MSD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return MSD_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* msd_status_name(msd_status status) {
  switch (status) {
    case MSD_OK: return "ok";
    case MSD_ERR_PARSE: return "parse";
    case MSD_ERR_VALIDATE: return "validate";
    case MSD_ERR_UNMAPPED: return "unmapped";
    case MSD_ERR_INFEASIBLE: return "infeasible";
    case MSD_ERR_TOO_LARGE: return "too-large";
    case MSD_ERR_ARG: return "invalid-arg";
    case MSD_ERR_CHECK: return "check-failed";
    case MSD_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void msd_string_free(char* s) { std::free(s); }

msd_status msd_sfg_parse(const char* text, msd_sfg** out, char** err) {
  if (!text || !out) return MSD_ERR_ARG;
  *out = nullptr;
  return guarded(err, [&] {
    auto* h = new msd_sfg{memsched::SfgGraph::parse(text)};
    *out = h;
    return MSD_OK;
  });
}

void msd_sfg_free(msd_sfg* g) { delete g; }

msd_status msd_sfg_serialize(const msd_sfg* g, char** out) {
  if (!g || !out) return MSD_ERR_ARG;
  return guarded(nullptr, [&] {
    *out = dup_string(g->g.serialize());
    return *out ? MSD_OK : MSD_ERR_INTERNAL;
  });
}

msd_status msd_sfg_memory_table(const msd_sfg* g, char** out) {
  if (!g || !out) return MSD_ERR_ARG;
  return guarded(nullptr, [&] {
    *out = dup_string(memsched::render_memory_table(memsched::extract_memory_table(g->g)));
    return *out ? MSD_OK : MSD_ERR_INTERNAL;
  });
}

msd_status msd_map_parse(const char* text, msd_map** out, char** err) {
  if (!text || !out) return MSD_ERR_ARG;
  *out = nullptr;
  return guarded(err, [&] {
    auto* h = new msd_map{memsched::MemoryMap::parse(text)};
    *out = h;
    return MSD_OK;
  });
}

void msd_map_free(msd_map* m) { delete m; }

msd_status msd_check_map(const msd_sfg* g, const msd_map* m, char** report, char** err) {
  if (!g || !m) return MSD_ERR_ARG;
  return guarded(err, [&] {
    auto coverage = memsched::check_against_sfg(m->m, g->g);
    if (report) *report = dup_string(coverage.to_string());
    return coverage.ok() ? MSD_OK : MSD_ERR_UNMAPPED;
  });
}

msd_status msd_mcg_dump(const msd_sfg* g, const msd_map* m, char** out, char** err) {
  if (!g || !m || !out) return MSD_ERR_ARG;
  return guarded(err, [&] {
    *out = dup_string(memsched::dump_mcg(memsched::build_mcg(g->g, m->m)));
    return *out ? MSD_OK : MSD_ERR_INTERNAL;
  });
}

msd_status msd_config_parse(const char* text, msd_config** out, char** err) {
  if (!text || !out) return MSD_ERR_ARG;
  *out = nullptr;
  return guarded(err, [&] {
    auto* h = new msd_config{memsched::SchedulerConfig::parse(text)};
    *out = h;
    return MSD_OK;
  });
}

void msd_config_free(msd_config* c) { delete c; }

msd_status msd_config_set_horizon(msd_config* c, long horizon) {
  if (!c || horizon < 1) return MSD_ERR_ARG;
  c->c.horizon = horizon;
  return MSD_OK;
}

msd_status msd_schedule_run(const msd_sfg* g, const msd_map* m, const msd_config* c,
                            msd_schedule** out, char** err) {
  if (!g || !m || !c || !out) return MSD_ERR_ARG;
  *out = nullptr;
  return guarded(err, [&] {
    auto* h = new msd_schedule{memsched::schedule(g->g, m->m, c->c)};
    *out = h;
    return MSD_OK;
  });
}

void msd_schedule_free(msd_schedule* s) { delete s; }

long msd_schedule_latency(const msd_schedule* s) {
  return s ? s->s.achieved_latency : -1;
}

msd_status msd_schedule_dump(const msd_schedule* s, char** out) {
  if (!s || !out) return MSD_ERR_ARG;
  return guarded(nullptr, [&] {
    *out = dup_string(s->s.dump());
    return *out ? MSD_OK : MSD_ERR_INTERNAL;
  });
}

msd_status msd_schedule_parse_dump(const char* text, msd_schedule** out, char** err) {
  if (!text || !out) return MSD_ERR_ARG;
  *out = nullptr;
  return guarded(err, [&] {
    auto* h = new msd_schedule{memsched::Schedule::parse_dump(text)};
    *out = h;
    return MSD_OK;
  });
}

msd_status msd_schedule_gantt(const msd_schedule* s, const msd_map* m, char** out,
                              char** err) {
  if (!s || !m || !out) return MSD_ERR_ARG;
  return guarded(err, [&] {
    *out = dup_string(memsched::render_gantt(s->s, m->m));
    return *out ? MSD_OK : MSD_ERR_INTERNAL;
  });
}

msd_status msd_schedule_check(const msd_sfg* g, const msd_map* m, const msd_config* c,
                              const msd_schedule* s, char** verdict, char** err) {
  if (!g || !m || !c || !s) return MSD_ERR_ARG;
  return guarded(err, [&] {
    auto v = memsched::check_schedule(g->g, m->m, c->c, s->s);
    if (verdict) *verdict = dup_string(v.to_string());
    return v.ok ? MSD_OK : MSD_ERR_CHECK;
  });
}

msd_status msd_explore(const msd_sfg* g, const char* const* map_texts,
                       const char* const* map_labels, size_t n_maps,
                       const long* horizons, size_t n_horizons,
                       const msd_config* base_cfg, char** report, char** err) {
  if (!g || !map_texts || !map_labels || n_maps == 0 || !horizons || n_horizons == 0 ||
      !report)
    return MSD_ERR_ARG;
  return guarded(err, [&] {
    std::vector<memsched::ExplorationCandidate> candidates;
    for (size_t i = 0; i < n_maps; ++i) {
      if (!map_texts[i] || !map_labels[i]) throw memsched::Error(
          memsched::ErrorCode::kInvalidArg, "null map text or label");
      candidates.push_back({map_labels[i], map_texts[i]});
    }
    std::vector<long> hs(horizons, horizons + n_horizons);
    memsched::SchedulerConfig cfg;
    if (base_cfg) cfg = base_cfg->c;
    auto rep = memsched::explore(g->g, candidates, hs, cfg);
    *report = dup_string(rep.to_string());
    return *report ? MSD_OK : MSD_ERR_INTERNAL;
  });
}

}  // extern "C"
