#pragma once

#include <cstdint>
#include <vector>

#include "cfrelay/ffield.hpp"

namespace cfrelay {

/// Signal constellation S = G_pi indexed by field elements, plus the
/// isomorphism parameters that built it. Immutable after build_system();
/// freely shareable across threads.
struct ResidueSystem {
    IsoParams params;
    std::vector<GaussianInt> codebook;  // codebook[a] = phi(a), p entries
    std::int64_t energy_num = 0;        // sum of |codebook[a]|^2

    std::uint32_t order() const { return params.order; }

    /// Average symbol energy under uniform messages, energy_num / p.
    double average_energy() const {
        return static_cast<double>(energy_num) / static_cast<double>(params.order);
    }
};

/// Builds the constellation for an admissible field order (prime, p % 4 == 1).
ResidueSystem build_system(std::uint32_t p);

/// Source encoder: message to constellation point, a codebook lookup.
GaussianInt encode(FieldScalar w, const ResidueSystem& sys);

/// Noise scale for a target SNR given the constellation's average energy;
/// sigma^2 is the total variance of the complex noise.
double sigma_for_snr(double snr_db, const ResidueSystem& sys);

}  // namespace cfrelay
