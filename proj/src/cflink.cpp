#include "cfrelay/cflink.hpp"

#include <cmath>
#include <stdexcept>

namespace cfrelay {

std::vector<FieldScalar> sample_messages(Rng& rng, const ResidueSystem& sys, std::size_t users) {
    std::uniform_int_distribution<std::uint32_t> dist(0, sys.order() - 1);
    std::vector<FieldScalar> w(users);
    for (auto& m : w) m = {dist(rng), sys.order()};
    return w;
}

std::vector<GaussianInt> sample_gains(Rng& rng, const ResidueSystem& sys, std::size_t users) {
    std::uniform_int_distribution<std::uint32_t> dist(0, sys.order() - 1);
    std::vector<GaussianInt> h(users);
    for (auto& g : h) g = sys.codebook[dist(rng)];
    return h;
}

ChannelUse make_use(std::span<const GaussianInt> x, std::span<const GaussianInt> h,
                    ComplexSample noise) {
    if (x.size() != h.size()) {
        throw std::invalid_argument("make_use: signal and gain counts differ");
    }
    GaussianInt sum;
    for (std::size_t l = 0; l < x.size(); ++l) sum = sum + h[l] * x[l];
    return {{h.begin(), h.end()}, noise, to_complex(sum) + noise};
}

ChannelUse transmit(std::span<const GaussianInt> x, std::span<const GaussianInt> h, double sigma,
                    Rng& rng) {
    if (sigma < 0.0) {
        throw std::invalid_argument("transmit: negative noise scale");
    }
    std::normal_distribution<double> gauss;
    const double component_scale = sigma / std::sqrt(2.0);
    const ComplexSample z{component_scale * gauss(rng), component_scale * gauss(rng)};
    return make_use(x, h, z);
}

std::vector<FieldScalar> coefficients(std::span<const GaussianInt> h, const ResidueSystem& sys) {
    std::vector<FieldScalar> a;
    a.reserve(h.size());
    for (const auto& gain : h) a.push_back(phi_inv(mod_pi(gain, sys.params.pi), sys.params));
    return a;
}

FieldScalar true_combination(std::span<const FieldScalar> coeffs,
                             std::span<const FieldScalar> msgs) {
    if (coeffs.size() != msgs.size() || coeffs.empty()) {
        throw std::invalid_argument("true_combination: coefficient and message counts differ");
    }
    FieldScalar v{0, coeffs[0].order};
    for (std::size_t l = 0; l < coeffs.size(); ++l) {
        v = ff_add(v, ff_mul(coeffs[l], msgs[l]));
    }
    return v;
}

FieldScalar relay_decode(ComplexSample y, const ResidueSystem& sys) {
    return phi_inv(mod_pi(round_complex(y), sys.params.pi), sys.params);
}

std::optional<std::vector<FieldScalar>> destination_decode(const FieldMatrix& a,
                                                           std::span<const FieldScalar> v) {
    const auto inv = mat_inv(a);
    if (!inv) return std::nullopt;
    return mat_vec_mul(*inv, v);
}

BlockTrace run_block(Rng& rng, const ResidueSystem& sys, std::size_t users, double sigma) {
    BlockTrace trace;
    trace.messages = sample_messages(rng, sys, users);
    trace.matrix = FieldMatrix(users, users, sys.order());
    trace.uses.reserve(users);
    trace.true_combinations.reserve(users);
    trace.relay_estimates.reserve(users);

    std::vector<GaussianInt> x(users);
    for (std::size_t l = 0; l < users; ++l) x[l] = encode(trace.messages[l], sys);

    // Fresh gains for each combination keep the coefficient rows independent.
    for (std::size_t t = 0; t < users; ++t) {
        const auto h = sample_gains(rng, sys, users);
        auto use = transmit(x, h, sigma, rng);
        const auto a = coefficients(h, sys);
        for (std::size_t l = 0; l < users; ++l) trace.matrix.set(t, l, a[l]);
        trace.true_combinations.push_back(true_combination(a, trace.messages));
        trace.relay_estimates.push_back(relay_decode(use.received, sys));
        trace.uses.push_back(std::move(use));
    }
    trace.decoded = destination_decode(trace.matrix, trace.relay_estimates);
    return trace;
}

std::size_t relay_error_count(const BlockTrace& trace) {
    std::size_t errors = 0;
    for (std::size_t t = 0; t < trace.relay_estimates.size(); ++t) {
        if (!(trace.relay_estimates[t] == trace.true_combinations[t])) ++errors;
    }
    return errors;
}

bool block_error(const BlockTrace& trace) {
    return !trace.decoded || !(*trace.decoded == trace.messages);
}

}  // namespace cfrelay
