#include "cfrelay/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfrelay {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kSeriesCutoff = 2.0;

// erf(x) = 2x e^{-x^2}/sqrt(pi) * sum_{n>=0} (2x^2)^n / (1*3*...*(2n+1)).
// All terms are positive, so there is no cancellation; for x <= 2 the tail
// drops below 1e-18 within ~60 terms.
double erf_series(double x) {
    const double x2 = 2.0 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 200; ++n) {
        term *= x2 / static_cast<double>(2 * n + 3);
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return 2.0 * x * std::exp(-x * x) * kInvSqrtPi * sum;
}

// sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...)))),
// evaluated by the modified Lentz scheme. Used for x >= 2 where it converges
// in a few dozen iterations to machine precision.
double erfc_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int n = 1; n < 200; ++n) {
        const double a = 0.5 * static_cast<double>(n);
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-x * x) * kInvSqrtPi / f;
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return -erf(-x);
    if (x < kSeriesCutoff) return x == 0.0 ? 0.0 : erf_series(x);
    if (std::isinf(x)) return 1.0;
    return 1.0 - erfc_fraction(x);
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x < kSeriesCutoff) return 1.0 - erf_series(x);
    if (std::isinf(x)) return 0.0;
    return erfc_fraction(x);
}

double rank_failure_prob(std::uint32_t p, std::size_t users) {
    if (p < 2 || users == 0) {
        throw std::invalid_argument("rank_failure_prob: need p >= 2 and users >= 1");
    }
    double power = 1.0;
    double full_rank = 1.0;
    for (std::size_t t = 1; t <= users; ++t) {
        power *= static_cast<double>(p);
        full_rank *= 1.0 - 1.0 / power;
    }
    return 1.0 - full_rank;
}

double relay_error_estimate(double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("relay_error_estimate: negative noise scale");
    if (sigma == 0.0) return 0.0;
    return erfc(1.0 / (2.0 * std::sqrt(2.0) * sigma));
}

double relay_error_exact(double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("relay_error_exact: negative noise scale");
    if (sigma == 0.0) return 0.0;
    const double e = erf(1.0 / (2.0 * sigma));
    return 1.0 - e * e;
}

BoundReport union_bound(std::uint32_t p, std::size_t users, double sigma) {
    BoundReport report;
    report.field_order = p;
    report.users = users;
    report.sigma = sigma;
    report.p1 = rank_failure_prob(p, users);
    report.pr_estimate = relay_error_estimate(sigma);
    report.pr_exact = relay_error_exact(sigma);
    report.bound = std::min(1.0, report.p1 + static_cast<double>(users) * report.pr_estimate);
    return report;
}

}  // namespace cfrelay
