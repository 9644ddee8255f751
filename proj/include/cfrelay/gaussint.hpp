#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>

namespace cfrelay {

/// One noisy channel sample (or any point of the complex signal plane).
using ComplexSample = std::complex<double>;

/// Element of the ring of Gaussian integers Z[i]. Components are exact
/// 64-bit integers; every operation below stays in integer arithmetic.
struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    constexpr bool operator==(const GaussianInt&) const = default;

    friend constexpr GaussianInt operator+(GaussianInt a, GaussianInt b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend constexpr GaussianInt operator-(GaussianInt a, GaussianInt b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend constexpr GaussianInt operator-(GaussianInt a) { return {-a.re, -a.im}; }
    friend constexpr GaussianInt operator*(GaussianInt a, GaussianInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
};

constexpr GaussianInt conj(GaussianInt g) { return {g.re, -g.im}; }

/// Squared magnitude |g|^2 = re^2 + im^2, exact.
constexpr std::int64_t norm(GaussianInt g) { return g.re * g.re + g.im * g.im; }

constexpr ComplexSample to_complex(GaussianInt g) {
    return {static_cast<double>(g.re), static_cast<double>(g.im)};
}

/// Round half-up: floor(x + 1/2). Ties go toward +infinity (-0.5 -> 0).
std::int64_t round_half_up(double x);

/// Exact round-half-up of the rational num/den, den > 0. Never touches
/// floating point, so residue representatives are stable at region borders.
std::int64_t round_ratio_half_up(std::int64_t num, std::int64_t den);

/// Nearest Gaussian integer, each component rounded half-up independently.
/// Rejects non-finite samples.
GaussianInt round_complex(ComplexSample z);

/// Residue reduction g mod pi: g - [g * conj(pi) / |pi|^2] * pi.
/// The interior division is exact rational, rounded component-wise half-up.
/// The result is congruent to g modulo pi. Rejects pi == 0.
GaussianInt mod_pi(GaussianInt g, GaussianInt pi);

/// Deterministic trial-division primality test for 64-bit integers.
bool is_prime(std::int64_t n);

/// Decomposition p = a^2 + b^2 of a rational prime p with p % 4 == 1,
/// returned as a + bi in the canonical form a > b > 0. Rejects other p.
GaussianInt two_squares(std::int64_t p);

/// True iff g is a prime element of Z[i]: either |g|^2 is a rational prime,
/// or g is a unit multiple of a rational prime q with q % 4 == 3.
bool is_gaussian_prime(GaussianInt g);

std::ostream& operator<<(std::ostream& os, GaussianInt g);

}  // namespace cfrelay
