#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfrelay/analysis.hpp"
#include "cfrelay/montecarlo.hpp"

using namespace cfrelay;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) out.push_back(cell);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string line;
    std::istringstream is(text);
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

SweepConfig small_config() {
    SweepConfig cfg;
    cfg.fields = {5, 13};
    cfg.snr_start_db = 0.0;
    cfg.snr_stop_db = 5.0;
    cfg.snr_step_db = 2.5;
    cfg.blocks = 100;
    cfg.seed = 77;
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("SNR grid construction") {
    const auto def = snr_grid(0.0, 40.0, 2.5);
    REQUIRE(def.size() == 17);
    CHECK(def.front() == 0.0);
    CHECK(def.back() == doctest::Approx(40.0).epsilon(1e-15));
    CHECK(def[1] == doctest::Approx(2.5).epsilon(1e-15));

    const auto coarse = snr_grid(0.0, 10.0, 3.0);
    REQUIRE(coarse.size() == 4);
    CHECK(coarse.back() == doctest::Approx(9.0).epsilon(1e-15));

    const auto single = snr_grid(5.0, 5.0, 1.0);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 5.0);

    CHECK_THROWS_AS(snr_grid(0.0, 10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(snr_grid(0.0, 10.0, -1.0), std::invalid_argument);
}

TEST_CASE("per-block streams are reproducible and distinct") {
    Rng a = block_rng(1, 5, 0, 0);
    Rng b = block_rng(1, 5, 0, 0);
    CHECK(a() == b());
    CHECK(a() == b());

    Rng c = block_rng(1, 5, 0, 1);
    Rng d = block_rng(1, 5, 1, 0);
    Rng e = block_rng(2, 5, 0, 0);
    Rng f = block_rng(1, 13, 0, 0);
    Rng base = block_rng(1, 5, 0, 0);
    const std::uint64_t first = base();
    CHECK(c() != first);
    CHECK(d() != first);
    CHECK(e() != first);
    CHECK(f() != first);
}

TEST_CASE("configuration validation") {
    CHECK_NOTHROW(validate_config(SweepConfig{}));

    SweepConfig cfg = small_config();
    cfg.fields = {6};
    CHECK_THROWS_WITH_AS(validate_config(cfg),
                         "sweep config: field order 6 is not admissible; orders must be rational "
                         "primes p with p % 4 == 1",
                         std::invalid_argument);
    cfg.fields = {7};
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = small_config();
    cfg.fields.clear();
    CHECK_THROWS_WITH_AS(validate_config(cfg), "sweep config: no field orders given",
                         std::invalid_argument);

    cfg = small_config();
    cfg.users = 0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = small_config();
    cfg.blocks = 0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = small_config();
    cfg.snr_step_db = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = small_config();
    cfg.snr_stop_db = -1.0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = small_config();
    cfg.threads = 0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("single-point run fills every column consistently") {
    const ResidueSystem sys = build_system(5);
    const ErrorReport r = run_point(sys, 2, 60.0, 2000, 9, 0);
    CHECK(r.field_order == 5);
    CHECK(r.users == 2);
    CHECK(r.snr_db == 60.0);
    CHECK(r.blocks == 2000);
    CHECK(r.relay_uses == 4000);
    CHECK(r.relay_errors == 0);  // noise is far below the decision distance
    CHECK(r.relay_rate == 0.0);
    CHECK(r.dest_errors == r.rank_failures);
    CHECK(r.dest_rate == doctest::Approx(static_cast<double>(r.dest_errors) / 2000.0)
                             .epsilon(1e-15));
    CHECK(r.rank_rate == doctest::Approx(static_cast<double>(r.rank_failures) / 2000.0)
                             .epsilon(1e-15));
    // Loose five-sigma band around the singularity probability.
    CHECK(r.rank_rate > 0.185);
    CHECK(r.rank_rate < 0.280);

    const double sigma = sigma_for_snr(60.0, sys);
    const BoundReport bound = union_bound(5, 2, sigma);
    CHECK(r.analytic_p1 == bound.p1);
    CHECK(r.analytic_pr_paper == bound.pr_estimate);
    CHECK(r.analytic_pr_exact == bound.pr_exact);
    CHECK(r.union_bound == bound.bound);
}

TEST_CASE("destination errors never exceed rank failures plus relay-error blocks") {
    const ResidueSystem sys = build_system(5);
    const ErrorReport r = run_point(sys, 2, 5.0, 3000, 21, 0);
    CHECK(r.relay_errors > 0);
    CHECK(r.dest_errors <= r.rank_failures + r.relay_errors);
    CHECK(r.dest_errors >= r.rank_failures);
}

TEST_CASE("single-point runs are identical across thread counts") {
    const ResidueSystem sys = build_system(13);
    const ErrorReport serial = run_point(sys, 2, 7.5, 200, 5, 3, 1);
    const ErrorReport parallel = run_point(sys, 2, 7.5, 200, 5, 3, 4);
    CHECK(serial.relay_errors == parallel.relay_errors);
    CHECK(serial.dest_errors == parallel.dest_errors);
    CHECK(serial.rank_failures == parallel.rank_failures);

    const ErrorReport again = run_point(sys, 2, 7.5, 200, 5, 3, 1);
    CHECK(again.relay_errors == serial.relay_errors);
    CHECK(again.dest_errors == serial.dest_errors);
    CHECK(again.rank_failures == serial.rank_failures);

    // A different seed must actually change the outcome.
    const ErrorReport other = run_point(sys, 2, 7.5, 200, 6, 3, 1);
    const bool differs = other.relay_errors != serial.relay_errors ||
                         other.dest_errors != serial.dest_errors ||
                         other.rank_failures != serial.rank_failures;
    CHECK(differs);
}

TEST_CASE("sweep ordering and progress reporting") {
    const SweepConfig cfg = small_config();
    std::size_t calls = 0;
    const auto reports = run_sweep(cfg, [&](const ErrorReport& r, std::size_t done,
                                            std::size_t total) {
        ++calls;
        CHECK(done == calls);
        CHECK(total == 6);
        CHECK(r.blocks == 100);
    });
    REQUIRE(reports.size() == 6);
    CHECK(calls == 6);
    const std::vector<std::uint32_t> fields{5, 5, 5, 13, 13, 13};
    const std::vector<double> snrs{0.0, 2.5, 5.0, 0.0, 2.5, 5.0};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(reports[i].field_order == fields[i]);
        CHECK(reports[i].snr_db == doctest::Approx(snrs[i]).epsilon(1e-15));
    }
}

TEST_CASE("sweeps render identically regardless of parallelism") {
    SweepConfig cfg = small_config();
    cfg.blocks = 200;
    cfg.threads = 1;
    const std::string serial = format_csv(run_sweep(cfg));
    cfg.threads = 4;
    const std::string parallel = format_csv(run_sweep(cfg));
    CHECK(serial == parallel);
}

TEST_CASE("CSV schema and numeric round trip") {
    const auto reports = run_sweep(small_config());
    const std::string csv = format_csv(reports);
    const auto rows = lines_of(csv);
    REQUIRE(rows.size() == reports.size() + 1);
    CHECK(rows[0] ==
          "p,L,snr_db,blocks,relay_uses,relay_errors,relay_rate,dest_errors,dest_rate,"
          "rank_failures,rank_rate,analytic_p1,analytic_pr_paper,analytic_pr_exact,union_bound");

    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto cells = split(rows[i + 1], ',');
        REQUIRE(cells.size() == 15);
        const ErrorReport& r = reports[i];
        CHECK(std::stoull(cells[0]) == r.field_order);
        CHECK(std::stoull(cells[1]) == r.users);
        CHECK(std::stoull(cells[3]) == r.blocks);
        CHECK(std::stoull(cells[4]) == r.relay_uses);
        CHECK(std::stoull(cells[5]) == r.relay_errors);
        CHECK(std::stoull(cells[7]) == r.dest_errors);
        CHECK(std::stoull(cells[9]) == r.rank_failures);
        // Twelve significant digits: relative error is at most a few 1e-12.
        CHECK(std::stod(cells[2]) == doctest::Approx(r.snr_db).epsilon(5e-12));
        CHECK(std::stod(cells[6]) == doctest::Approx(r.relay_rate).epsilon(5e-12));
        CHECK(std::stod(cells[8]) == doctest::Approx(r.dest_rate).epsilon(5e-12));
        CHECK(std::stod(cells[10]) == doctest::Approx(r.rank_rate).epsilon(5e-12));
        CHECK(std::stod(cells[11]) == doctest::Approx(r.analytic_p1).epsilon(5e-12));
        CHECK(std::stod(cells[12]) == doctest::Approx(r.analytic_pr_paper).epsilon(5e-12));
        CHECK(std::stod(cells[13]) == doctest::Approx(r.analytic_pr_exact).epsilon(5e-12));
        CHECK(std::stod(cells[14]) == doctest::Approx(r.union_bound).epsilon(5e-12));
    }
}

TEST_CASE("CSV of an empty report list is just the header") {
    const auto rows = lines_of(format_csv({}));
    REQUIRE(rows.size() == 1);
}

TEST_CASE("plot series layout") {
    const auto reports = run_sweep(small_config());
    const auto rows = lines_of(format_plotdata(reports));
    // Two field blocks of five lines each, one separating blank line.
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == "# p=5 L=2");
    CHECK(rows[1] == "# snr_db relay_rate dest_rate union_bound analytic_p1");
    CHECK(rows[5] == "");
    CHECK(rows[6] == "# p=13 L=2");
    for (const std::size_t i : {2u, 3u, 4u, 8u, 9u, 10u}) {
        const auto cells = split(rows[i], ' ');
        REQUIRE(cells.size() == 5);
        CHECK_NOTHROW(static_cast<void>(std::stod(cells[0])));
    }
}

TEST_CASE("files round-trip through the writers") {
    const auto reports = run_sweep(small_config());
    const auto dir = std::filesystem::temp_directory_path();
    const auto csv_path = dir / "cfrelay_test_results.csv";
    const auto plot_path = dir / "cfrelay_test_series.dat";

    write_csv(reports, csv_path);
    CHECK(slurp(csv_path) == format_csv(reports));
    emit_plotdata(reports, plot_path);
    CHECK(slurp(plot_path) == format_plotdata(reports));

    std::filesystem::remove(csv_path);
    std::filesystem::remove(plot_path);

    CHECK_THROWS_AS(write_csv(reports, dir / "no_such_dir" / "out.csv"), std::runtime_error);
}

TEST_SUITE_END();
