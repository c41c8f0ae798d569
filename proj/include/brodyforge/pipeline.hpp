#pragma once

#include "brodyforge/config.hpp"
#include "brodyforge/reports.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace brodyforge {

enum class Command { validate, lemma1, interpolate, curve, rescale, full };
enum class Format { csv, json };

Command parse_command(const std::string& name);
Format parse_format(const std::string& name);

// Every numeric gate the pipelines enforce, overridable by name via --tol.
struct Tolerances {
    double residual_rel = 1e-6;   // interpolation residual gate
    double qj_roundtrip = 1e-14;  // exp(Log alpha_j) round-trip gate
    double blowup_rel = 1e-9;     // tangent length vs lower bound
    double tail_bound_max = 0.5;  // truncation-tail admissibility
    double rescale_dev = 1e-10;   // exact-case sup-grid deviation
    double jrho_tol = 1e-12;      // exact-case |j rho_j - |B||
    double logderiv_tol = 1e-8;   // finite-difference quotient accuracy / reality
    double chain_rel = 1e-9;      // affine chain-rule identity
};

Tolerances apply_overrides(Tolerances base, const std::map<std::string, double>& overrides);

struct RunRequest {
    Command command = Command::validate;
    json config;
    std::filesystem::path out_dir;
    Format format = Format::csv;
    std::map<std::string, double> tol_overrides;
};

struct RunResult {
    std::vector<std::string> files_written; // relative to out_dir, in write order
    json summary;                           // per-command machine-readable recap
};

// Runs one command end to end and writes its artifacts. Throws Error; the
// caller maps ErrorKind to an exit status.
RunResult run_command(const RunRequest& req);

} // namespace brodyforge
