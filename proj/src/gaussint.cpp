#include "cfrelay/gaussint.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cfrelay {

std::int64_t round_half_up(double x) {
    return static_cast<std::int64_t>(std::floor(x + 0.5));
}

std::int64_t round_ratio_half_up(std::int64_t num, std::int64_t den) {
    // floor(num/den + 1/2) = floor((2*num + den) / (2*den)), den > 0.
    std::int64_t n = 2 * num + den;
    std::int64_t d = 2 * den;
    std::int64_t q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

GaussianInt round_complex(ComplexSample z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("round_complex: non-finite sample");
    }
    return {round_half_up(z.real()), round_half_up(z.imag())};
}

GaussianInt mod_pi(GaussianInt g, GaussianInt pi) {
    const std::int64_t den = norm(pi);
    if (den == 0) {
        throw std::invalid_argument("mod_pi: zero modulus");
    }
    const GaussianInt num = g * conj(pi);
    const GaussianInt q{round_ratio_half_up(num.re, den), round_ratio_half_up(num.im, den)};
    return g - q * pi;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::int64_t i = 5; i * i <= n; i += 6) {
        if (n % i == 0 || n % (i + 2) == 0) return false;
    }
    return true;
}

GaussianInt two_squares(std::int64_t p) {
    if (!is_prime(p) || p % 4 != 1) {
        throw std::invalid_argument("two_squares: argument must be a prime with p % 4 == 1");
    }
    for (std::int64_t a = 1; a * a <= p; ++a) {
        const std::int64_t b2 = p - a * a;
        const auto b = static_cast<std::int64_t>(std::sqrt(static_cast<double>(b2)));
        for (std::int64_t c = b > 0 ? b - 1 : 0; c <= b + 1; ++c) {
            if (c >= 1 && c * c == b2) {
                return a >= c ? GaussianInt{a, c} : GaussianInt{c, a};
            }
        }
    }
    throw std::logic_error("two_squares: no decomposition found for a 1 mod 4 prime");
}

bool is_gaussian_prime(GaussianInt g) {
    if (is_prime(norm(g))) return true;
    // Remaining candidates are unit multiples of a rational prime q = 3 mod 4.
    std::int64_t q = 0;
    if (g.im == 0) {
        q = g.re < 0 ? -g.re : g.re;
    } else if (g.re == 0) {
        q = g.im < 0 ? -g.im : g.im;
    } else {
        return false;
    }
    return q % 4 == 3 && is_prime(q);
}

std::ostream& operator<<(std::ostream& os, GaussianInt g) {
    os << g.re;
    if (g.im >= 0) os << '+';
    return os << g.im << 'i';
}

}  // namespace cfrelay
