#include "cfrelay/montecarlo.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "cfrelay/analysis.hpp"

namespace cfrelay {

namespace {

// splitmix64 finalizer; chained below to turn (seed, p, point, block) into
// one well-mixed engine seed.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Tally {
    std::uint64_t relay_errors = 0;
    std::uint64_t dest_errors = 0;
    std::uint64_t rank_failures = 0;
};

void append_number(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    out.append(buf, res.ptr);
}

void append_number(std::string& out, std::uint64_t v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    os << text;
    if (!os.flush()) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

}  // namespace

std::vector<double> snr_grid(double start_db, double stop_db, double step_db) {
    if (step_db <= 0.0) {
        throw std::invalid_argument("snr_grid: step must be positive");
    }
    const auto count =
        static_cast<std::size_t>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start_db + step_db * static_cast<double>(i);
    return grid;
}

Rng block_rng(std::uint64_t seed, std::uint32_t p, std::uint64_t snr_index,
              std::uint64_t block_index) {
    return Rng(mix64(seed + mix64(p + mix64(snr_index + mix64(block_index)))));
}

void validate_config(const SweepConfig& cfg) {
    if (cfg.fields.empty()) {
        throw std::invalid_argument("sweep config: no field orders given");
    }
    for (const auto p : cfg.fields) {
        if (!is_prime(p) || p % 4 != 1) {
            throw std::invalid_argument("sweep config: field order " + std::to_string(p) +
                                        " is not admissible; orders must be rational primes p "
                                        "with p % 4 == 1");
        }
    }
    if (cfg.users == 0) throw std::invalid_argument("sweep config: need at least one user");
    if (cfg.blocks == 0) throw std::invalid_argument("sweep config: need at least one block");
    if (cfg.snr_step_db <= 0.0) {
        throw std::invalid_argument("sweep config: SNR step must be positive");
    }
    if (cfg.snr_stop_db < cfg.snr_start_db) {
        throw std::invalid_argument("sweep config: SNR stop is below start");
    }
    if (cfg.threads == 0) throw std::invalid_argument("sweep config: need at least one thread");
}

ErrorReport run_point(const ResidueSystem& sys, std::size_t users, double snr_db,
                      std::uint64_t blocks, std::uint64_t seed, std::uint64_t snr_index,
                      unsigned threads) {
    const double sigma = sigma_for_snr(snr_db, sys);
    const std::uint32_t p = sys.order();

    const auto run_range = [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
        for (std::uint64_t b = lo; b < hi; ++b) {
            Rng rng = block_rng(seed, p, snr_index, b);
            const BlockTrace trace = run_block(rng, sys, users, sigma);
            tally.relay_errors += relay_error_count(trace);
            if (!trace.decoded) ++tally.rank_failures;
            if (block_error(trace)) ++tally.dest_errors;
        }
    };

    Tally total;
    if (threads <= 1 || blocks < 2 * threads) {
        run_range(0, blocks, total);
    } else {
        // Blocks are indexed globally, so the chunking cannot change results.
        std::vector<Tally> parts(threads);
        std::vector<std::thread> workers;
        workers.reserve(threads);
        const std::uint64_t chunk = (blocks + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = std::min<std::uint64_t>(blocks, t * chunk);
            const std::uint64_t hi = std::min<std::uint64_t>(blocks, lo + chunk);
            workers.emplace_back(run_range, lo, hi, std::ref(parts[t]));
        }
        for (auto& w : workers) w.join();
        for (const auto& part : parts) {
            total.relay_errors += part.relay_errors;
            total.dest_errors += part.dest_errors;
            total.rank_failures += part.rank_failures;
        }
    }

    ErrorReport report;
    report.field_order = p;
    report.users = users;
    report.snr_db = snr_db;
    report.blocks = blocks;
    report.relay_uses = blocks * users;
    report.relay_errors = total.relay_errors;
    report.relay_rate = static_cast<double>(total.relay_errors) / static_cast<double>(report.relay_uses);
    report.dest_errors = total.dest_errors;
    report.dest_rate = static_cast<double>(total.dest_errors) / static_cast<double>(blocks);
    report.rank_failures = total.rank_failures;
    report.rank_rate = static_cast<double>(total.rank_failures) / static_cast<double>(blocks);

    const BoundReport bound = union_bound(p, users, sigma);
    report.analytic_p1 = bound.p1;
    report.analytic_pr_paper = bound.pr_estimate;
    report.analytic_pr_exact = bound.pr_exact;
    report.union_bound = bound.bound;
    return report;
}

std::vector<ErrorReport> run_sweep(const SweepConfig& cfg, const ProgressFn& progress) {
    validate_config(cfg);
    const auto grid = snr_grid(cfg.snr_start_db, cfg.snr_stop_db, cfg.snr_step_db);
    std::vector<ErrorReport> reports;
    reports.reserve(cfg.fields.size() * grid.size());
    const std::size_t total = cfg.fields.size() * grid.size();
    for (const auto p : cfg.fields) {
        const ResidueSystem sys = build_system(p);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            reports.push_back(
                run_point(sys, cfg.users, grid[i], cfg.blocks, cfg.seed, i, cfg.threads));
            if (progress) progress(reports.back(), reports.size(), total);
        }
    }
    return reports;
}

std::string format_csv(const std::vector<ErrorReport>& reports) {
    std::string out =
        "p,L,snr_db,blocks,relay_uses,relay_errors,relay_rate,dest_errors,dest_rate,"
        "rank_failures,rank_rate,analytic_p1,analytic_pr_paper,analytic_pr_exact,union_bound\n";
    for (const auto& r : reports) {
        append_number(out, static_cast<std::uint64_t>(r.field_order));
        out += ',';
        append_number(out, static_cast<std::uint64_t>(r.users));
        out += ',';
        append_number(out, r.snr_db);
        out += ',';
        append_number(out, r.blocks);
        out += ',';
        append_number(out, r.relay_uses);
        out += ',';
        append_number(out, r.relay_errors);
        out += ',';
        append_number(out, r.relay_rate);
        out += ',';
        append_number(out, r.dest_errors);
        out += ',';
        append_number(out, r.dest_rate);
        out += ',';
        append_number(out, r.rank_failures);
        out += ',';
        append_number(out, r.rank_rate);
        out += ',';
        append_number(out, r.analytic_p1);
        out += ',';
        append_number(out, r.analytic_pr_paper);
        out += ',';
        append_number(out, r.analytic_pr_exact);
        out += ',';
        append_number(out, r.union_bound);
        out += '\n';
    }
    return out;
}

void write_csv(const std::vector<ErrorReport>& reports, const std::filesystem::path& path) {
    write_text(format_csv(reports), path);
}

std::string format_plotdata(const std::vector<ErrorReport>& reports) {
    std::string out;
    std::uint32_t current = 0;
    bool first = true;
    for (const auto& r : reports) {
        if (first || r.field_order != current) {
            if (!first) out += '\n';
            current = r.field_order;
            first = false;
            out += "# p=";
            append_number(out, static_cast<std::uint64_t>(r.field_order));
            out += " L=";
            append_number(out, static_cast<std::uint64_t>(r.users));
            out += "\n# snr_db relay_rate dest_rate union_bound analytic_p1\n";
        }
        append_number(out, r.snr_db);
        out += ' ';
        append_number(out, r.relay_rate);
        out += ' ';
        append_number(out, r.dest_rate);
        out += ' ';
        append_number(out, r.union_bound);
        out += ' ';
        append_number(out, r.analytic_p1);
        out += '\n';
    }
    return out;
}

void emit_plotdata(const std::vector<ErrorReport>& reports, const std::filesystem::path& path) {
    write_text(format_plotdata(reports), path);
}

}  // namespace cfrelay
