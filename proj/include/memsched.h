/* Copyright 2026 The memsched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* memsched -- memory-aware operation scheduling for dataflow kernels.
 *
 * C interface of the shared library. All objects are opaque handles created
 * by msd_*_parse/msd_*_run and released by the matching msd_*_free. Functions
 * return MSD_OK or an error code; when an `err` out-parameter is given and an
 * error occurs, it receives a malloc'd message the caller must release with
 * msd_string_free. All text output is deterministic: identical inputs produce
 * byte-identical strings.
 */

#ifndef MEMSCHED_H
#define MEMSCHED_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msd_status {
  MSD_OK = 0,
  MSD_ERR_PARSE = 1,      /* malformed input text */
  MSD_ERR_VALIDATE = 2,   /* invariant violation in an input */
  MSD_ERR_UNMAPPED = 3,   /* a graph symbol has no placement */
  MSD_ERR_INFEASIBLE = 4, /* no schedule exists under the horizon */
  MSD_ERR_TOO_LARGE = 5,  /* instance exceeds a documented guard */
  MSD_ERR_ARG = 6,        /* null handle or precondition violation */
  MSD_ERR_CHECK = 7,      /* schedule verification found a violation */
  MSD_ERR_INTERNAL = 8
} msd_status;

/* Stable name of a status code, e.g. "infeasible". Never NULL. */
const char* msd_status_name(msd_status status);

typedef struct msd_sfg msd_sfg;           /* dataflow graph */
typedef struct msd_map msd_map;           /* memory architecture + placements */
typedef struct msd_config msd_config;     /* horizon, latencies, FU limits */
typedef struct msd_schedule msd_schedule; /* cycle-accurate schedule */

void msd_string_free(char* s);

/* --- dataflow graph ------------------------------------------------------ */

msd_status msd_sfg_parse(const char* text, msd_sfg** out, char** err);
void msd_sfg_free(msd_sfg* g);

/* Canonical re-parseable text form. */
msd_status msd_sfg_serialize(const msd_sfg* g, char** out);

/* Memory table: one `<symbol> accesses=<n>` line per distinct symbol. */
msd_status msd_sfg_memory_table(const msd_sfg* g, char** out);

/* --- memory map ---------------------------------------------------------- */

msd_status msd_map_parse(const char* text, msd_map** out, char** err);
void msd_map_free(msd_map* m);

/* Coverage of the graph's symbols by the map. Returns MSD_OK when every
 * symbol is placed (unused placements are warnings in the report text),
 * MSD_ERR_UNMAPPED otherwise. `report` is optional. */
msd_status msd_check_map(const msd_sfg* g, const msd_map* m, char** report, char** err);

/* Per-bank conflict graph dump: `<bank>: <u> -- <v> w=<w>` lines, sorted. */
msd_status msd_mcg_dump(const msd_sfg* g, const msd_map* m, char** out, char** err);

/* --- scheduler config ---------------------------------------------------- */

msd_status msd_config_parse(const char* text, msd_config** out, char** err);
void msd_config_free(msd_config* c);

/* Overrides the cycle budget (must be >= 1). */
msd_status msd_config_set_horizon(msd_config* c, long horizon);

/* --- scheduling ---------------------------------------------------------- */

msd_status msd_schedule_run(const msd_sfg* g, const msd_map* m, const msd_config* c,
                            msd_schedule** out, char** err);
void msd_schedule_free(msd_schedule* s);

long msd_schedule_latency(const msd_schedule* s);

/* `sched <vertex> start=<c> end=<c> res=<name>` lines, sorted. */
msd_status msd_schedule_dump(const msd_schedule* s, char** out);

/* Parses the dump format back into a schedule for verification. */
msd_status msd_schedule_parse_dump(const char* text, msd_schedule** out, char** err);

/* Text Gantt chart: a row per bank port and per busy functional unit. */
msd_status msd_schedule_gantt(const msd_schedule* s, const msd_map* m, char** out,
                              char** err);

/* Re-derives every constraint the schedule must satisfy. Returns MSD_OK on
 * a clean pass with `verdict` = "OK", MSD_ERR_CHECK with the FAIL line
 * otherwise. */
msd_status msd_schedule_check(const msd_sfg* g, const msd_map* m, const msd_config* c,
                              const msd_schedule* s, char** verdict, char** err);

/* --- exploration --------------------------------------------------------- */

/* Schedules the graph once per (map, horizon) pair and renders the ranked
 * latency/area table. `map_texts` and `map_labels` are parallel arrays.
 * Candidates that fail stay in the table as infeasible rows. The base
 * config is optional (NULL = unit latencies, no FU limits). */
msd_status msd_explore(const msd_sfg* g, const char* const* map_texts,
                       const char* const* map_labels, size_t n_maps,
                       const long* horizons, size_t n_horizons,
                       const msd_config* base_cfg, char** report, char** err);

#ifdef __cplusplus
}
#endif

#endif /* MEMSCHED_H */
