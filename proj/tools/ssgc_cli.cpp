/*
 * Copyright 2026 The ssgc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Command-line front end. Talks to the simulator only through the C API.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssgc/ssgc.h"

namespace {

int report_error(ssgc_status s, const std::string& what) {
  std::cerr << "error: " << what << ": " << ssgc_status_string(s) << ": "
            << ssgc_last_error() << "\n";
  return 2;
}

struct Handle {
  ssgc_scenario* scenario = nullptr;
  ssgc_trace* trace = nullptr;
  ~Handle() {
    ssgc_trace_free(trace);
    ssgc_scenario_free(scenario);
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

bool parse_seed_range(const std::string& text, std::uint64_t& a,
                      std::uint64_t& b) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      a = b = std::stoull(text);
    } else {
      a = std::stoull(text.substr(0, dots));
      b = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return a <= b;
}

// Prints one line per property; returns the number of failures, or -1 on
// an API error.
int check_all(const ssgc_trace* trace, const std::vector<std::string>& props,
              const std::string& prefix) {
  int failures = 0;
  for (const auto& prop : props) {
    ssgc_verdict* v = nullptr;
    const ssgc_status s = ssgc_check(trace, prop.c_str(), &v);
    if (s != SSGC_OK) {
      report_error(s, "check " + prop);
      return -1;
    }
    std::uint64_t step = 0;
    const bool has_step = ssgc_verdict_step(v, &step);
    const bool ok = ssgc_verdict_passed(v);
    if (!ok) ++failures;
    std::cout << prefix << (ok ? "PASS " : "FAIL ") << prop;
    if (has_step) std::cout << " step=" << step;
    const std::string diag = ssgc_verdict_diagnostics(v);
    if (!diag.empty()) std::cout << " : " << diag;
    std::cout << "\n";
    ssgc_verdict_free(v);
  }
  return failures;
}

std::vector<std::string> resolve_props(const ssgc_trace* trace,
                                       const std::string& spec) {
  if (spec != "ALL") return split(spec, ',');
  char* joined = nullptr;
  if (ssgc_trace_properties(trace, &joined) != SSGC_OK) return {};
  std::vector<std::string> out = split(joined, ',');
  ssgc_string_free(joined);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded simulator and trace checker for self-stabilizing group communication"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, trace_path, property = "ALL", seeds;
  std::uint64_t seed = 0, steps = 0;

  auto* run = app.add_subcommand("run", "Run one scenario and write its trace");
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--seed", seed, "Scheduler seed (overrides the file)");
  run->add_option("--steps", steps, "Step budget (overrides the file)");
  run->add_option("--out", out_path, "Trace output file (JSONL)")->required();

  auto* fuzz = app.add_subcommand("fuzz", "Run a seed range and check every trace");
  fuzz->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  fuzz->add_option("--seeds", seeds, "Seed range A..B (inclusive)")->required();
  fuzz->add_option("--check", property,
                   "ALL, or a comma-separated list of properties");
  fuzz->add_option("--steps", steps, "Step budget (overrides the file)");
  std::string fail_dir;
  fuzz->add_option("--keep-failures", fail_dir,
                   "Directory for traces of failing seeds");

  auto* chk = app.add_subcommand("check", "Check a property of a saved trace");
  chk->add_option("--trace", trace_path, "Trace file (JSONL)")->required();
  chk->add_option("--property", property, "Property name, or ALL");

  app.add_subcommand("properties", "List property names");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("properties")) {
    for (size_t i = 0; i < ssgc_property_count(); ++i)
      std::cout << ssgc_property_name(i) << "\n";
    return 0;
  }

  Handle h;
  if (run->parsed() || fuzz->parsed()) {
    const ssgc_status s = ssgc_scenario_load(scenario_path.c_str(), &h.scenario);
    if (s != SSGC_OK) return report_error(s, "load " + scenario_path);
    if (steps) {
      const ssgc_status st = ssgc_scenario_set_steps(h.scenario, steps);
      if (st != SSGC_OK) return report_error(st, "--steps");
    }
  }

  if (run->parsed()) {
    if (run->count("--seed")) ssgc_scenario_set_seed(h.scenario, seed);
    ssgc_status s = ssgc_run(h.scenario, &h.trace);
    if (s != SSGC_OK) return report_error(s, "run");
    s = ssgc_trace_save(h.trace, out_path.c_str());
    if (s != SSGC_OK) return report_error(s, "save " + out_path);
    std::cout << ssgc_trace_event_count(h.trace) << " events written to "
              << out_path << "\n";
    return 0;
  }

  if (fuzz->parsed()) {
    std::uint64_t a = 0, b = 0;
    if (!parse_seed_range(seeds, a, b)) {
      std::cerr << "error: --seeds must look like A..B with A <= B\n";
      return 2;
    }
    std::uint64_t failed_seeds = 0;
    for (std::uint64_t sd = a; sd <= b; ++sd) {
      ssgc_scenario_set_seed(h.scenario, sd);
      ssgc_trace* trace = nullptr;
      const ssgc_status s = ssgc_run(h.scenario, &trace);
      if (s != SSGC_OK) return report_error(s, "run seed " + std::to_string(sd));
      const int f = check_all(trace, resolve_props(trace, property),
                              "seed " + std::to_string(sd) + " ");
      if (f < 0) {
        ssgc_trace_free(trace);
        return 2;
      }
      if (f > 0) {
        ++failed_seeds;
        if (!fail_dir.empty()) {
          const std::string path = fail_dir + "/seed-" + std::to_string(sd) + ".jsonl";
          if (ssgc_trace_save(trace, path.c_str()) != SSGC_OK)
            std::cerr << "warning: " << ssgc_last_error() << "\n";
        }
      }
      ssgc_trace_free(trace);
      if (sd == b) break;
    }
    std::cout << (b - a + 1 - failed_seeds) << "/" << (b - a + 1)
              << " seeds passed\n";
    return failed_seeds == 0 ? 0 : 1;
  }

  const ssgc_status s = ssgc_trace_load(trace_path.c_str(), &h.trace);
  if (s != SSGC_OK) return report_error(s, "load " + trace_path);
  const int f = check_all(h.trace, resolve_props(h.trace, property), "");
  if (f < 0) return 2;
  return f == 0 ? 0 : 1;
}
