#pragma once

// Experiment harness: maps a JSON config to one named experiment, writes CSV
// and JSON outputs plus a manifest line, and reports a process exit code.
// Identical config and seed produce byte-identical CSV outputs.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

namespace qclab::harness {

// Experiment names accepted by run_experiment.
inline constexpr const char* kExperiments[] = {
    "dioph-scan", "free-check", "cayley",   "u1-scan", "complexity-scan",
    "flag",       "geodesic",   "holder",   "cutloc"};

struct HarnessResult {
  int exit_code = 0;        // 0 ok, 2 config error, 3 data/convergence error
  std::string status = "ok";
  std::string message;
  std::string config_hash;
  std::map<std::string, std::string> output_hashes;  // filename -> content hash
};

// Validates the config, fills defaults, runs the experiment, writes outputs
// into out_dir (created if needed), and appends one line to manifest.jsonl.
HarnessResult run_experiment(nlohmann::json config, const std::filesystem::path& out_dir);

// FNV-1a over the bytes; the manifest and CSV trailers use the hex form.
std::uint64_t fnv1a(std::string_view data);
std::string hash_hex(std::uint64_t h);

// Shortest-roundtrip decimal formatting used for every CSV float so reruns
// are byte-stable.
std::string fmt_double(double x);

}  // namespace qclab::harness
