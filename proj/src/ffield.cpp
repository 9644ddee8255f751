#include "cfrelay/ffield.hpp"

#include <stdexcept>
#include <string>

namespace cfrelay {

namespace {

void require_same_order(FieldScalar a, FieldScalar b) {
    if (a.order != b.order) {
        throw std::invalid_argument("field order mismatch: " + std::to_string(a.order) +
                                    " vs " + std::to_string(b.order));
    }
}

std::uint32_t floormod(std::int64_t x, std::uint32_t p) {
    std::int64_t r = x % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    // Extended Euclid on (a, p); p prime and a != 0 mod p.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) {
        throw std::invalid_argument("mod_inverse: argument not invertible");
    }
    return floormod(t, p);
}

// Nearest-rounding quotient in Z[i]; the remainder a - q*b then satisfies
// |a - q*b|^2 <= |b|^2 / 2, which is what makes the Euclidean loop terminate.
GaussianInt div_nearest(GaussianInt a, GaussianInt b) {
    const std::int64_t den = norm(b);
    const GaussianInt num = a * conj(b);
    return {round_ratio_half_up(num.re, den), round_ratio_half_up(num.im, den)};
}

}  // namespace

FieldScalar ff_add(FieldScalar a, FieldScalar b) {
    require_same_order(a, b);
    std::uint32_t s = a.value + b.value;
    if (s >= a.order) s -= a.order;
    return {s, a.order};
}

FieldScalar ff_sub(FieldScalar a, FieldScalar b) {
    require_same_order(a, b);
    std::uint32_t s = a.value + a.order - b.value;
    if (s >= a.order) s -= a.order;
    return {s, a.order};
}

FieldScalar ff_neg(FieldScalar a) {
    return {a.value == 0 ? 0 : a.order - a.value, a.order};
}

FieldScalar ff_mul(FieldScalar a, FieldScalar b) {
    require_same_order(a, b);
    const std::uint64_t prod = static_cast<std::uint64_t>(a.value) * b.value;
    return {static_cast<std::uint32_t>(prod % a.order), a.order};
}

FieldScalar ff_inv(FieldScalar a) {
    if (a.value == 0) {
        throw std::invalid_argument("ff_inv: zero has no inverse");
    }
    return {mod_inverse(a.value, a.order), a.order};
}

std::pair<GaussianInt, GaussianInt> bezout_pair(GaussianInt pi) {
    const std::int64_t p = norm(pi);
    if (!is_prime(p) || p % 4 != 1) {
        throw std::invalid_argument(
            "bezout_pair: |pi|^2 must be a rational prime with p % 4 == 1");
    }
    // Extended Euclid on (pi, conj(pi)), tracking r = s*pi + t*conj(pi).
    GaussianInt r0 = pi, r1 = conj(pi);
    GaussianInt s0{1, 0}, s1{0, 0};
    GaussianInt t0{0, 0}, t1{1, 0};
    while (!(r1 == GaussianInt{})) {
        const GaussianInt q = div_nearest(r0, r1);
        const GaussianInt r2 = r0 - q * r1;
        const GaussianInt s2 = s0 - q * s1;
        const GaussianInt t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (norm(r0) != 1) {
        throw std::logic_error("bezout_pair: gcd(pi, conj(pi)) is not a unit");
    }
    // Divide out the unit gcd; for |e|^2 = 1 the inverse is conj(e).
    const GaussianInt inv_unit = conj(r0);
    const GaussianInt u = s0 * inv_unit;
    const GaussianInt v = t0 * inv_unit;
    if (!(u * pi + v * conj(pi) == GaussianInt{1, 0})) {
        throw std::logic_error("bezout_pair: identity check failed");
    }
    return {u, v};
}

IsoParams make_iso_params(GaussianInt pi) {
    const auto [u, v] = bezout_pair(pi);
    return {static_cast<std::uint32_t>(norm(pi)), pi, u, v};
}

IsoParams make_iso_params(std::uint32_t p) {
    return make_iso_params(two_squares(p));
}

GaussianInt phi(FieldScalar a, const IsoParams& params) {
    if (a.order != params.order) {
        throw std::invalid_argument("phi: scalar order does not match the isomorphism");
    }
    if (a.value >= a.order) {
        throw std::invalid_argument("phi: scalar value outside [0, p)");
    }
    return mod_pi({static_cast<std::int64_t>(a.value), 0}, params.pi);
}

FieldScalar phi_inv(GaussianInt xi, const IsoParams& params) {
    const auto p = static_cast<std::int64_t>(params.order);
    const GaussianInt w = xi * (params.v * conj(params.pi)) + conj(xi) * (params.u * params.pi);
    if (w.im % p != 0) {
        throw std::logic_error("phi_inv: combination has non-divisible imaginary part");
    }
    return {floormod(w.re, params.order), params.order};
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t order)
    : rows_(rows), cols_(cols), order_(order), v_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint32_t order) {
    FieldMatrix m(n, n, order);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, FieldScalar s) {
    if (s.order != order_) {
        throw std::invalid_argument("FieldMatrix::set: scalar from a different field");
    }
    (*this)(r, c) = s.value;
}

std::size_t mat_rank(const FieldMatrix& m) {
    FieldMatrix a = m;
    const std::uint32_t p = a.order();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(rank, c));
        const std::uint64_t inv = mod_inverse(a(rank, col), p);
        for (std::size_t c = col; c < a.cols(); ++c) {
            a(rank, c) = static_cast<std::uint32_t>(a(rank, c) * inv % p);
        }
        for (std::size_t r = rank + 1; r < a.rows(); ++r) {
            const std::uint64_t f = a(r, col);
            if (f == 0) continue;
            for (std::size_t c = col; c < a.cols(); ++c) {
                const std::uint64_t sub = f * a(rank, c) % p;
                a(r, c) = static_cast<std::uint32_t>((a(r, c) + p - sub) % p);
            }
        }
        ++rank;
    }
    return rank;
}

std::optional<FieldMatrix> mat_inv(const FieldMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("mat_inv: matrix must be square");
    }
    const std::size_t n = m.rows();
    const std::uint32_t p = m.order();
    FieldMatrix a = m;
    FieldMatrix inv = FieldMatrix::identity(n, p);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) return std::nullopt;  // rank failure
        for (std::size_t c = 0; c < n; ++c) {
            std::swap(a(pivot, c), a(col, c));
            std::swap(inv(pivot, c), inv(col, c));
        }
        const std::uint64_t s = mod_inverse(a(col, col), p);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) = static_cast<std::uint32_t>(a(col, c) * s % p);
            inv(col, c) = static_cast<std::uint32_t>(inv(col, c) * s % p);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const std::uint64_t f = a(r, col);
            if (f == 0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                const std::uint64_t suba = f * a(col, c) % p;
                const std::uint64_t subi = f * inv(col, c) % p;
                a(r, c) = static_cast<std::uint32_t>((a(r, c) + p - suba) % p);
                inv(r, c) = static_cast<std::uint32_t>((inv(r, c) + p - subi) % p);
            }
        }
    }
    return inv;
}

std::vector<FieldScalar> mat_vec_mul(const FieldMatrix& m, std::span<const FieldScalar> x) {
    if (x.size() != m.cols()) {
        throw std::invalid_argument("mat_vec_mul: dimension mismatch");
    }
    std::vector<FieldScalar> y(m.rows(), FieldScalar{0, m.order()});
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (x[c].order != m.order()) {
                throw std::invalid_argument("mat_vec_mul: scalar from a different field");
            }
            acc += static_cast<std::uint64_t>(m(r, c)) * x[c].value;
        }
        y[r].value = static_cast<std::uint32_t>(acc % m.order());
    }
    return y;
}

}  // namespace cfrelay
