#include "cfrelay/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cfrelay {

ResidueSystem build_system(std::uint32_t p) {
    if (!is_prime(p) || p % 4 != 1) {
        throw std::invalid_argument("build_system: field order " + std::to_string(p) +
                                    " is not admissible; constellation orders must be rational "
                                    "primes p with p % 4 == 1");
    }
    ResidueSystem sys;
    sys.params = make_iso_params(p);
    sys.codebook.reserve(p);
    for (std::uint32_t a = 0; a < p; ++a) {
        const GaussianInt xi = phi({a, p}, sys.params);
        sys.codebook.push_back(xi);
        sys.energy_num += norm(xi);
    }
    if (!(sys.codebook[0] == GaussianInt{})) {
        throw std::logic_error("build_system: representative of zero is not zero");
    }
    auto sorted = sys.codebook;
    std::sort(sorted.begin(), sorted.end(), [](GaussianInt a, GaussianInt b) {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
    });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::logic_error("build_system: codebook entries are not distinct");
    }
    return sys;
}

GaussianInt encode(FieldScalar w, const ResidueSystem& sys) {
    if (w.order != sys.order() || w.value >= sys.order()) {
        throw std::invalid_argument("encode: message outside the system's field");
    }
    return sys.codebook[w.value];
}

double sigma_for_snr(double snr_db, const ResidueSystem& sys) {
    return std::sqrt(sys.average_energy() / std::pow(10.0, snr_db / 10.0));
}

}  // namespace cfrelay
