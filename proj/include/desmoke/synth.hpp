#pragma once

#include <cstdint>
#include <random>

#include "desmoke/tensor.hpp"

namespace desmoke {

/// Parameters of a synthetic smoke layer.
struct SmokeSpec {
    std::uint64_t seed = 1;
    double strength = 0.3;       // peak intensity, in [0, 1]
    double smoothness = 12.0;    // Gaussian correlation length in pixels, > 0
    double chroma_jitter = 0.05; // max relative deviation from neutral, in [0, 0.1]

    void validate() const;
};

/// Deterministic uniform doubles in [0, 1) from a 64-bit Mersenne Twister.
/// The conversion uses the top 53 bits of each draw, so the sequence is the
/// same on every platform for a given seed.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Smooth, nearly grey smoke in [0, strength].
///
/// Seeded white noise is low-passed by a Gaussian of standard deviation
/// `smoothness` (applied as a Fourier-domain attenuation), rescaled to
/// [0, 1], and each channel c is scaled by strength * (1 - chroma_jitter * w_c)
/// with per-channel draws w_c in [0, 1). Channels therefore differ by at most
/// chroma_jitter * strength at any pixel.
ImageTensor generate_smoke_field(std::size_t height, std::size_t width, const SmokeSpec& spec);

/// clamp01(clean + field).
ImageTensor apply_smoke(const ImageTensor& clean, const ImageTensor& field);

/// Dark, reddish, strongly textured test scene with values in [0, 1]:
/// a blocky random-cell pattern with fine per-pixel grain on top.
ImageTensor textured_scene(std::size_t height, std::size_t width, std::uint64_t seed, std::size_t cell = 4);

}  // namespace desmoke
