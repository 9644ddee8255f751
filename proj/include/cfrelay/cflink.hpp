#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "cfrelay/constellation.hpp"

namespace cfrelay {

using Rng = std::mt19937_64;

/// One channel use: L integer gains, the complex noise sample, and the
/// received value, synthesized as received = sum(h_l * x_l) + noise with the
/// integer combination formed exactly before the noise is added.
struct ChannelUse {
    std::vector<GaussianInt> gains;
    ComplexSample noise;
    ComplexSample received;
};

/// One decoding block: L messages, the L channel uses their combinations came
/// from, the ground-truth and estimated combinations, the coefficient matrix
/// (row t holds the coefficients of use t), and the destination outcome.
/// decoded is empty exactly when the coefficient matrix was singular.
struct BlockTrace {
    std::vector<FieldScalar> messages;
    std::vector<ChannelUse> uses;
    std::vector<FieldScalar> true_combinations;
    std::vector<FieldScalar> relay_estimates;
    FieldMatrix matrix;
    std::optional<std::vector<FieldScalar>> decoded;
};

std::vector<FieldScalar> sample_messages(Rng& rng, const ResidueSystem& sys, std::size_t users);

/// Independent uniform draws from the p residue representatives, zero included.
std::vector<GaussianInt> sample_gains(Rng& rng, const ResidueSystem& sys, std::size_t users);

/// Deterministic channel synthesis for a given noise sample.
ChannelUse make_use(std::span<const GaussianInt> x, std::span<const GaussianInt> h,
                    ComplexSample noise);

/// Channel synthesis with circularly-symmetric complex Gaussian noise of
/// total variance sigma^2 (each real component has variance sigma^2 / 2).
ChannelUse transmit(std::span<const GaussianInt> x, std::span<const GaussianInt> h, double sigma,
                    Rng& rng);

/// Field coefficients induced by the gains: a_l = phi_inv(h_l mod pi).
std::vector<FieldScalar> coefficients(std::span<const GaussianInt> h, const ResidueSystem& sys);

/// Ground-truth combination sum(a_l * w_l) over F_p.
FieldScalar true_combination(std::span<const FieldScalar> coeffs,
                             std::span<const FieldScalar> msgs);

/// Relay decoder: component-wise rounding (the exact lattice ML decision for
/// Z[i]), residue reduction, then the field image of the representative.
FieldScalar relay_decode(ComplexSample y, const ResidueSystem& sys);

/// Destination decoder: w = A^-1 * v over F_p, or empty on rank failure.
std::optional<std::vector<FieldScalar>> destination_decode(const FieldMatrix& a,
                                                           std::span<const FieldScalar> v);

/// One full block: draws messages once, then for each of the L combinations
/// draws fresh gains and noise, runs the relay decoder, and finally the
/// destination decoder. Pure given the stream, so blocks with independent
/// streams may run concurrently.
BlockTrace run_block(Rng& rng, const ResidueSystem& sys, std::size_t users, double sigma);

/// Number of combinations the relay got wrong in this block.
std::size_t relay_error_count(const BlockTrace& trace);

/// True when the block failed: rank failure or any wrongly decoded message.
bool block_error(const BlockTrace& trace);

}  // namespace cfrelay
