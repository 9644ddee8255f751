#pragma once

#include <cstddef>
#include <cstdint>

namespace cfrelay {

/// Error function, evaluated without relying on platform libm behavior:
/// a positive-term power series below |x| = 2 and a Lentz continued fraction
/// above. Absolute error below 1e-13 everywhere (tests pin 1e-12 on [0, 6]
/// against a quadrature oracle).
double erf(double x);
double erfc(double x);

/// Probability that an L x L matrix with iid uniform F_p entries is singular:
/// 1 - prod_{t=1..L} (1 - p^-t).
double rank_failure_prob(std::uint32_t p, std::size_t users);

/// Closed-form estimate of the relay error probability used in the
/// destination error bound: erfc(1 / (2 * sqrt(2) * sigma)), a single-axis
/// crossing computed with the full noise variance. Conservative for the
/// operating region sigma <= 1/2. Returns 0 at sigma == 0.
double relay_error_estimate(double sigma);

/// Exact probability that complex noise of total variance sigma^2 leaves the
/// unit square around the transmitted lattice point: 1 - erf(1/(2*sigma))^2.
/// This is the quantity the Monte Carlo relay error converges to.
double relay_error_exact(double sigma);

/// The assembled destination error bound and its ingredients.
struct BoundReport {
    std::uint32_t field_order = 0;
    std::size_t users = 0;
    double sigma = 0.0;
    double p1 = 0.0;        // rank-failure probability
    double pr_estimate = 0.0;
    double pr_exact = 0.0;
    double bound = 0.0;     // min(1, p1 + users * pr_estimate)
};

BoundReport union_bound(std::uint32_t p, std::size_t users, double sigma);

}  // namespace cfrelay
