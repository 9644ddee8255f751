#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cfrelay/cflink.hpp"

namespace cfrelay {

/// Monte Carlo sweep configuration. Defaults reproduce the reference
/// experiment: fields {5, 13, 41}, two users, 0..40 dB in 2.5 dB steps,
/// 10^4 blocks per point.
struct SweepConfig {
    std::vector<std::uint32_t> fields{5, 13, 41};
    std::size_t users = 2;
    double snr_start_db = 0.0;
    double snr_stop_db = 40.0;
    double snr_step_db = 2.5;
    std::uint64_t blocks = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// One CSV row: empirical counts and rates for a (field, SNR) point plus the
/// analytic columns.
struct ErrorReport {
    std::uint32_t field_order = 0;
    std::size_t users = 0;
    double snr_db = 0.0;
    std::uint64_t blocks = 0;
    std::uint64_t relay_uses = 0;
    std::uint64_t relay_errors = 0;
    double relay_rate = 0.0;
    std::uint64_t dest_errors = 0;
    double dest_rate = 0.0;
    std::uint64_t rank_failures = 0;
    double rank_rate = 0.0;
    double analytic_p1 = 0.0;
    double analytic_pr_paper = 0.0;  // published-schema name for the erfc estimate
    double analytic_pr_exact = 0.0;
    double union_bound = 0.0;
};

/// Inclusive SNR grid from start to stop in steps of step (step > 0).
std::vector<double> snr_grid(double start_db, double stop_db, double step_db);

/// Independent per-block stream, a pure function of (seed, p, snr point,
/// block index). Identical regardless of how blocks are scheduled, which is
/// what makes parallel and serial sweeps agree bit for bit.
Rng block_rng(std::uint64_t seed, std::uint32_t p, std::uint64_t snr_index,
              std::uint64_t block_index);

/// Throws std::invalid_argument with a diagnostic naming the rule when the
/// configuration is unusable (inadmissible field order, empty grid, ...).
void validate_config(const SweepConfig& cfg);

/// Runs `blocks` independent blocks at one (field, SNR) point and tallies
/// relay, destination, and rank-failure counts.
ErrorReport run_point(const ResidueSystem& sys, std::size_t users, double snr_db,
                      std::uint64_t blocks, std::uint64_t seed, std::uint64_t snr_index,
                      unsigned threads = 1);

using ProgressFn = std::function<void(const ErrorReport&, std::size_t done, std::size_t total)>;

/// Full sweep, field-major then ascending SNR. Deterministic for a fixed
/// (config, seed) independent of the thread count.
std::vector<ErrorReport> run_sweep(const SweepConfig& cfg, const ProgressFn& progress = {});

/// CSV rendering: header row then one row per report, numbers with 12
/// significant digits.
std::string format_csv(const std::vector<ErrorReport>& reports);
void write_csv(const std::vector<ErrorReport>& reports, const std::filesystem::path& path);

/// Per-field plot series (snr_db, relay_rate, dest_rate, union_bound,
/// analytic_p1), one block per field separated by blank lines.
std::string format_plotdata(const std::vector<ErrorReport>& reports);
void emit_plotdata(const std::vector<ErrorReport>& reports, const std::filesystem::path& path);

}  // namespace cfrelay
