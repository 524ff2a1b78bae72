#include "desmoke/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "desmoke/fft.hpp"

namespace desmoke {

namespace {

// Signed frequency of bin k on a length-n axis, in cycles per sample.
double signed_frequency(std::size_t k, std::size_t n) {
    const double kk = k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return kk / static_cast<double>(n);
}

}  // namespace

void SmokeSpec::validate() const {
    if (!(strength >= 0.0 && strength <= 1.0)) throw ParameterError("smoke strength must lie in [0, 1]");
    if (!(smoothness > 0.0)) throw ParameterError("smoke smoothness must be positive");
    if (!(chroma_jitter >= 0.0 && chroma_jitter <= 0.1)) {
        throw ParameterError("smoke chroma jitter must lie in [0, 0.1]");
    }
}

ImageTensor generate_smoke_field(std::size_t height, std::size_t width, const SmokeSpec& spec) {
    spec.validate();
    ImageTensor noise(height, width, 0.0);
    UniformSource rng(spec.seed);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const double v = rng.next() - 0.5;
            for (std::size_t c = 0; c < kChannels; ++c) noise(y, x, c) = v;
        }
    }
    std::array<double, 3> weights{};
    for (double& w : weights) w = rng.next();

    // Gaussian low-pass; the transfer function of a spatial Gaussian with
    // standard deviation s is exp(-2 pi^2 s^2 f^2).
    const Fft3 fft(height, width);
    ComplexField spectrum = fft.forward(noise);
    const double s2 = spec.smoothness * spec.smoothness;
    const double k = 2.0 * std::numbers::pi * std::numbers::pi * s2;
    for (std::size_t ky = 0; ky < height; ++ky) {
        const double fy = signed_frequency(ky, height);
        for (std::size_t kx = 0; kx < width; ++kx) {
            const double fx = signed_frequency(kx, width);
            const double gain = std::exp(-k * (fx * fx + fy * fy));
            for (std::size_t kc = 0; kc < kChannels; ++kc) spectrum.data[(ky * width + kx) * kChannels + kc] *= gain;
        }
    }
    const ImageTensor smooth = fft.inverse_real(std::move(spectrum));

    double lo = smooth[0], hi = smooth[0];
    for (std::size_t p = 0; p < height * width; ++p) {
        lo = std::min(lo, smooth[p * kChannels]);
        hi = std::max(hi, smooth[p * kChannels]);
    }
    const double range = hi - lo;

    ImageTensor field(height, width, 0.0);
    if (spec.strength == 0.0 || range <= 0.0) return field;
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const double level = std::clamp((smooth(y, x, 0) - lo) / range, 0.0, 1.0);
            for (std::size_t c = 0; c < kChannels; ++c) {
                field(y, x, c) = spec.strength * level * (1.0 - spec.chroma_jitter * weights[c]);
            }
        }
    }
    return field;
}

ImageTensor apply_smoke(const ImageTensor& clean, const ImageTensor& field) {
    require_same_shape(clean, field, "apply_smoke");
    return clamp01(clean + field);
}

ImageTensor textured_scene(std::size_t height, std::size_t width, std::uint64_t seed, std::size_t cell) {
    if (cell == 0) throw ParameterError("textured_scene: cell size must be positive");
    ImageTensor scene(height, width, 0.0);
    UniformSource rng(seed);

    const std::array<double, 3> tint{0.55 + 0.2 * rng.next(), 0.2 + 0.1 * rng.next(), 0.15 + 0.1 * rng.next()};
    const std::size_t cells_y = (height + cell - 1) / cell;
    const std::size_t cells_x = (width + cell - 1) / cell;
    std::vector<double> level(cells_y * cells_x);
    for (double& v : level) v = 0.15 + 0.85 * rng.next();

    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const double base = level[(y / cell) * cells_x + x / cell];
            const double grain = 0.9 + 0.2 * rng.next();
            for (std::size_t c = 0; c < kChannels; ++c) {
                scene(y, x, c) = std::clamp(tint[c] * base * grain, 0.0, 1.0);
            }
        }
    }
    return scene;
}

}  // namespace desmoke
