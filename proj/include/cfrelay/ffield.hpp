#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cfrelay/gaussint.hpp"

namespace cfrelay {

/// Scalar of the prime field F_p, canonical representative in [0, p).
/// Carries its field order so cross-field arithmetic is rejected.
struct FieldScalar {
    std::uint32_t value = 0;
    std::uint32_t order = 0;

    constexpr bool operator==(const FieldScalar&) const = default;
};

FieldScalar ff_add(FieldScalar a, FieldScalar b);
FieldScalar ff_sub(FieldScalar a, FieldScalar b);
FieldScalar ff_neg(FieldScalar a);
FieldScalar ff_mul(FieldScalar a, FieldScalar b);

/// Multiplicative inverse by extended Euclid. Rejects zero.
FieldScalar ff_inv(FieldScalar a);

/// Bezout pair (u, v) with u*pi + v*conj(pi) == 1, by the extended Euclidean
/// algorithm over Z[i] with nearest-rounding division. Requires |pi|^2 to be
/// a rational prime congruent to 1 mod 4, so that pi and conj(pi) are coprime.
/// Pairs are not unique; the returned pair always satisfies the identity.
std::pair<GaussianInt, GaussianInt> bezout_pair(GaussianInt pi);

/// Parameters of the isomorphism F_p <-> G_pi: the modulus pi with
/// |pi|^2 = p and a Bezout pair u*pi + v*conj(pi) = 1.
struct IsoParams {
    std::uint32_t order = 0;
    GaussianInt pi;
    GaussianInt u;
    GaussianInt v;
};

IsoParams make_iso_params(std::uint32_t p);
IsoParams make_iso_params(GaussianInt pi);

/// Field element to residue representative: a - [a * conj(pi) / p] * pi.
GaussianInt phi(FieldScalar a, const IsoParams& params);

/// Residue representative back to the field:
///   a = xi * (v * conj(pi)) + conj(xi) * (u * pi)  mod p.
/// The combination is a Gaussian integer whose imaginary part is divisible
/// by p; that property is checked and a violation throws, rather than
/// silently reducing a wrong value.
FieldScalar phi_inv(GaussianInt xi, const IsoParams& params);

/// Dense row-major matrix over F_p. Entries are stored as raw canonical
/// values; the field order is a property of the matrix.
class FieldMatrix {
  public:
    FieldMatrix() = default;
    FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t order);

    static FieldMatrix identity(std::size_t n, std::uint32_t order);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t order() const { return order_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }
    std::uint32_t& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }

    FieldScalar at(std::size_t r, std::size_t c) const { return {(*this)(r, c), order_}; }
    void set(std::size_t r, std::size_t c, FieldScalar s);

    bool operator==(const FieldMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::uint32_t order_ = 0;
    std::vector<std::uint32_t> v_;
};

/// Rank over F_p by elimination with modular pivoting.
std::size_t mat_rank(const FieldMatrix& m);

/// Inverse over F_p, or an empty optional when the matrix is singular.
/// Singularity is an expected outcome for callers, not a fault.
std::optional<FieldMatrix> mat_inv(const FieldMatrix& m);

std::vector<FieldScalar> mat_vec_mul(const FieldMatrix& m, std::span<const FieldScalar> x);

}  // namespace cfrelay
