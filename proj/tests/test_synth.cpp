#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "desmoke/synth.hpp"
#include "desmoke/variational.hpp"

using namespace desmoke;

TEST_CASE("zero strength gives an empty field") {
    SmokeSpec spec;
    spec.strength = 0.0;
    const ImageTensor f = generate_smoke_field(16, 12, spec);
    for (double v : f.values()) CHECK(v == 0.0);
}

TEST_CASE("same seed, same field; different seed, different field") {
    SmokeSpec spec;
    spec.seed = 42;
    const ImageTensor a = generate_smoke_field(20, 24, spec);
    const ImageTensor b = generate_smoke_field(20, 24, spec);
    CHECK(a == b);
    spec.seed = 43;
    CHECK_FALSE(generate_smoke_field(20, 24, spec) == a);
}

TEST_CASE("field range and chroma spread") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        SmokeSpec spec;
        spec.seed = seed;
        spec.strength = 0.4;
        spec.chroma_jitter = 0.08;
        const ImageTensor f = generate_smoke_field(32, 40, spec);
        double hi = 0.0;
        for (double v : f.values()) {
            CHECK(v >= 0.0);
            CHECK(v <= 0.4);
            hi = std::max(hi, v);
        }
        CHECK(hi > 0.4 * (1.0 - 0.08) - 1e-12);
        for (std::size_t p = 0; p < 32 * 40; ++p) {
            const double r = f[p * 3], g = f[p * 3 + 1], b = f[p * 3 + 2];
            CHECK(std::max({r, g, b}) - std::min({r, g, b}) <= 0.08 * 0.4 + 1e-15);
        }
    }
}

TEST_CASE("longer correlation length gives a smoother field") {
    SmokeSpec smooth, rough;
    smooth.smoothness = 16.0;
    rough.smoothness = 2.0;
    const double tv_smooth = tv_norm(generate_smoke_field(64, 64, smooth), {});
    const double tv_rough = tv_norm(generate_smoke_field(64, 64, rough), {});
    CHECK(tv_smooth < tv_rough);
}

TEST_CASE("apply_smoke adds and clamps") {
    const ImageTensor clean(2, 2, 0.5);
    const ImageTensor field(2, 2, 0.3);
    const ImageTensor smoked = apply_smoke(clean, field);
    for (double v : smoked.values()) CHECK(v == doctest::Approx(0.8));
    const ImageTensor bright(2, 2, 0.9);
    const ImageTensor saturated = apply_smoke(bright, field);
    for (double v : saturated.values()) CHECK(v == 1.0);
    CHECK_THROWS_AS(apply_smoke(clean, ImageTensor(2, 3)), ShapeMismatch);
}

TEST_CASE("invalid smoke parameters") {
    SmokeSpec spec;
    spec.strength = 1.5;
    CHECK_THROWS_AS(generate_smoke_field(8, 8, spec), ParameterError);
    spec = SmokeSpec{};
    spec.smoothness = 0.0;
    CHECK_THROWS_AS(generate_smoke_field(8, 8, spec), ParameterError);
    spec = SmokeSpec{};
    spec.chroma_jitter = 0.2;
    CHECK_THROWS_AS(generate_smoke_field(8, 8, spec), ParameterError);
}

TEST_CASE("textured scene is deterministic and in range") {
    const ImageTensor a = textured_scene(24, 20, 5);
    CHECK(a == textured_scene(24, 20, 5));
    CHECK_FALSE(a == textured_scene(24, 20, 6));
    for (double v : a.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK_THROWS_AS(textured_scene(8, 8, 1, 0), ParameterError);
}
