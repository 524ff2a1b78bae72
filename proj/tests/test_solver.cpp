#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "desmoke/solver.hpp"
#include "oracles.hpp"

using namespace desmoke;

namespace {

SolverParams tight() {
    SolverParams p;
    p.tol = 1e-10;
    p.max_iter = 5000;
    return p;
}

}  // namespace

TEST_CASE("constant input is a fixed point") {
    const ImageTensor I(6, 5, 0.37);
    const SolveResult r = solve_smoke(I, SolverParams{});
    CHECK(r.diag.converged);
    CHECK(r.diag.iterations <= 2);
    for (std::size_t i = 0; i < I.size(); ++i) CHECK(std::abs(r.F[i] - 0.37) < 1e-15);
    for (double v : r.diag.primal_residual_trace) CHECK(v == 0.0);
    for (double v : r.diag.dual_residual_trace) CHECK(v == 0.0);
}

TEST_CASE("converged energy matches subgradient descent") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 2; ++t) {
        const ImageTensor I = oracle::random_tensor(6, 6, rng);
        const SolveResult r = solve_smoke(I, SolverParams{});
        REQUIRE(r.diag.converged);
        const double e = energy(r.F, I, SolverParams{});
        const auto ref = oracle::subgradient_minimize(I, 1.0, {}, 200000);
        CHECK(e <= ref.energy * (1.0 + 1e-9));
        CHECK((ref.energy - e) / e < 1e-3);
    }
}

TEST_CASE("tightly converged solution is a local minimum") {
    std::mt19937_64 rng(103);
    const ImageTensor I = oracle::random_tensor(5, 4, rng);
    SolverParams p = tight();
    p.lambda = 2.0;
    p.betas = {0.7, 1.3, 0.4};
    const SolveResult r = solve_smoke(I, p);
    REQUIRE(r.diag.converged);
    const double e0 = energy(r.F, I, p);
    CHECK(std::abs(e0 - oracle::loop_energy(r.F, I, p.lambda, {0.7, 1.3, 0.4})) < 1e-12 * e0);
    std::normal_distribution<double> d(0.0, 1e-4);
    for (int trial = 0; trial < 200; ++trial) {
        ImageTensor G = r.F;
        for (std::size_t i = 0; i < G.size(); ++i) G[i] += d(rng);
        CHECK(energy(G, I, p) >= e0 - 1e-9);
    }
}

TEST_CASE("multiplier follows y+ = y + rho (DF - u)") {
    std::mt19937_64 rng(107);
    const ImageTensor I = oracle::random_tensor(4, 6, rng);
    SolverParams p;
    p.rho = 3.0;
    p.betas = {1.0, 0.5, 2.0};
    const SpectralKernel kernel(4, 6, p);
    int seen = 0;
    solve_smoke(I, p, kernel, [&](const IterationState& s) {
        GradientStack expect = s.y_prev;
        expect.axpy(p.rho, apply_D(s.F, p.betas) - s.u);
        const GradientStack diff = expect - s.y;
        CHECK(norm(diff) <= 1e-12 * std::max(1.0, norm(s.y)));
        ++seen;
    });
    CHECK(seen > 0);
}

TEST_CASE("trace lengths and stopping rule") {
    std::mt19937_64 rng(109);
    const ImageTensor I = oracle::random_tensor(8, 8, rng);
    SolverParams p;
    p.max_iter = 7;
    const SolveResult capped = solve_smoke(I, p);
    CHECK(capped.diag.iterations == 7);
    CHECK_FALSE(capped.diag.converged);
    CHECK(capped.diag.energy_trace.size() == 7);
    CHECK(capped.diag.primal_residual_trace.size() == 7);
    CHECK(capped.diag.dual_residual_trace.size() == 7);

    const SolveResult full = solve_smoke(I, SolverParams{});
    REQUIRE(full.diag.converged);
    const auto& pr = full.diag.primal_residual_trace;
    CHECK(pr.back() < pr.front());
    // |u| <= |DF| + |DF - u| bounds the scale used by the stopping rule.
    const double scale = std::max(norm(apply_D(full.F, p.betas)) + pr.back(), p.epsilon);
    CHECK(pr.back() <= 1e-4 * scale);
}

TEST_CASE("solve is deterministic") {
    std::mt19937_64 rng(113);
    const ImageTensor I = oracle::random_tensor(9, 7, rng);
    const SolveResult a = solve_smoke(I, SolverParams{});
    const SolveResult b = solve_smoke(I, SolverParams{});
    CHECK(a.F == b.F);
    CHECK(a.diag.energy_trace == b.diag.energy_trace);
}

TEST_CASE("a constant shift of I shifts F by the same amount") {
    std::mt19937_64 rng(127);
    const ImageTensor I = oracle::random_tensor(6, 6, rng, 0.0, 0.8);
    ImageTensor shifted = I;
    for (double& v : shifted.values()) v += 0.15;
    const SolverParams p = tight();
    const SolveResult a = solve_smoke(I, p);
    const SolveResult b = solve_smoke(shifted, p);
    REQUIRE(a.diag.converged);
    REQUIRE(b.diag.converged);
    for (std::size_t i = 0; i < I.size(); ++i) CHECK(std::abs(b.F[i] - a.F[i] - 0.15) < 1e-7);
}

TEST_CASE("kernel built for other parameters is rejected") {
    const ImageTensor I(4, 4, 0.5);
    SolverParams p;
    SolverParams q = p;
    q.rho = 2.0;
    const SpectralKernel kernel(4, 4, q);
    CHECK_THROWS_AS(solve_smoke(I, p, kernel), ShapeMismatch);
    const SpectralKernel wrong_size(4, 5, p);
    CHECK_THROWS_AS(solve_smoke(I, p, wrong_size), ShapeMismatch);
}

TEST_CASE("invalid parameters are rejected") {
    const ImageTensor I(4, 4, 0.5);
    SolverParams p;
    p.rho = 0.0;
    CHECK_THROWS_AS(solve_smoke(I, p), ParameterError);
    p = SolverParams{};
    p.max_iter = 0;
    CHECK_THROWS_AS(solve_smoke(I, p), ParameterError);
}
