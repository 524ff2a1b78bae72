// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   acceptance            run all criteria
//   acceptance 2 5        run only criteria 2 and 5

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "desmoke/batch.hpp"
#include "desmoke/imageio.hpp"
#include "desmoke/metrics.hpp"
#include "desmoke/pipeline.hpp"
#include "desmoke/synth.hpp"
#include "oracles.hpp"

using namespace desmoke;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

oracle::Weights weights(const Betas& b) { return {b.x, b.y, b.c}; }

// Synthetic set shared by the end-to-end, reconstruction and convergence checks.
struct SyntheticCase {
    ImageTensor clean;
    ImageTensor smoked;
    DecompositionResult result;
};

constexpr int kSyntheticCount = 5;
constexpr std::size_t kSyntheticSize = 128;
double synthetic_build_seconds = 0.0;

const std::vector<SyntheticCase>& synthetic_set() {
    static const std::vector<SyntheticCase> cases = [] {
        const auto t0 = Clock::now();
        std::vector<SyntheticCase> out;
        for (int i = 0; i < kSyntheticCount; ++i) {
            SyntheticCase c;
            c.clean = textured_scene(kSyntheticSize, kSyntheticSize, 100 + i);
            SmokeSpec spec;
            spec.seed = 1 + i;
            spec.strength = 0.3;
            spec.smoothness = 12.0;
            c.smoked = apply_smoke(c.clean, generate_smoke_field(kSyntheticSize, kSyntheticSize, spec));
            c.result = decompose(c.smoked, SolverParams{});
            out.push_back(std::move(c));
        }
        synthetic_build_seconds = seconds_since(t0);
        return out;
    }();
    return cases;
}

double reconstruction_error(const ImageTensor& I, const DecompositionResult& r) {
    double worst = 0.0;
    for (std::size_t i = 0; i < I.size(); ++i) {
        worst = std::max(worst, std::abs(r.J_unclamped[i] + r.alpha[i % 3] * r.F[i] - I[i]));
    }
    return worst;
}

Verdict adjoint_identity() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> beta(0.1, 3.0);
    double worst = 0.0;
    int pairs = 0;
    for (auto [h, w] : {std::pair<std::size_t, std::size_t>{3, 2}, {4, 4}, {7, 5}}) {
        for (int k = 0; k < 100; ++k) {
            const Betas b{beta(rng), beta(rng), beta(rng)};
            const ImageTensor a = oracle::random_tensor(h, w, rng, -1, 1);
            const GradientStack g = oracle::random_stack(h, w, rng);
            const GradientStack Da = apply_D(a, b);
            const double lhs = dot(Da, g);
            const double rhs = dot(a, apply_Dt(g, b));
            const double scale = std::max(norm(Da) * norm(g), 1e-300);
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
            ++pairs;
        }
    }
    const double s = seconds_since(t0);
    return {worst <= 1e-10 && s < 1.0,
            fmt("%d pairs, max relative gap %.2e (limit 1e-10), %.3f s (limit 1 s)", pairs, worst, s)};
}

Verdict spectral_exactness() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> pos(0.2, 4.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        SolverParams p;
        p.lambda = pos(rng);
        p.rho = pos(rng);
        p.betas = {pos(rng), pos(rng), pos(rng)};
        const ImageTensor I = oracle::random_tensor(4, 4, rng);
        const GradientStack u = oracle::random_stack(4, 4, rng);
        const GradientStack y = oracle::random_stack(4, 4, rng);
        const SpectralKernel kernel(4, 4, p);
        const ImageTensor F = f_update(I, u, y, kernel, p);
        const ImageTensor ref = oracle::dense_f_solve(I, u, y, p.lambda, p.rho, weights(p.betas));
        worst = std::max(worst, norm(F - ref) / norm(ref));
    }
    const double s = seconds_since(t0);
    return {worst <= 1e-8 && s < 1.0,
            fmt("20 instances at 4x4x3, max relative error %.2e (limit 1e-8), %.3f s (limit 1 s)", worst, s)};
}

Verdict prox_correctness() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1003);
    const double rhos[4] = {0.5, 1.0, 5.0, 20.0};

    // Brute-force objective comparison; 2x9 stacks hold 54 voxels, and the
    // penalty cycles through the grid voxel by voxel.
    const GradientStack v = oracle::random_stack(2, 9, rng, -1.5, 1.5);
    std::array<GradientStack, 4> shrunk;
    for (int r = 0; r < 4; ++r) shrunk[r] = shrink(v, rhos[r], 1e-8);
    double worst_gap = -1e300;
    for (std::size_t i = 0; i < v.dx.size(); ++i) {
        const double rho = rhos[i % 4];
        const GradientStack& u = shrunk[i % 4];
        const std::array<double, 3> vi{v.dx[i], v.dy[i], v.dc[i]};
        const double got = oracle::prox_objective({u.dx[i], u.dy[i], u.dc[i]}, vi, rho);
        const double brute = oracle::brute_force_prox_value(vi, rho, rng);
        worst_gap = std::max(worst_gap, got - brute);
    }

    // Dead zone and direction on a deterministic grid of magnitudes and directions.
    bool grid_ok = true;
    long grid_points = 0;
    for (double rho : rhos) {
        for (int m = 0; m <= 40; ++m) {
            const double mag = (static_cast<double>(m) / 20.0) * (2.0 / rho);
            for (int th = 0; th < 12; ++th)
                for (int ph = 0; ph < 6; ++ph) {
                    const double theta = th * std::numbers::pi / 6.0, phi = ph * std::numbers::pi / 5.0;
                    const std::array<double, 3> dir{std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta),
                                                    std::cos(phi)};
                    GradientStack g(2, 2, 0.0);
                    g.dx[0] = mag * dir[0];
                    g.dy[0] = mag * dir[1];
                    g.dc[0] = mag * dir[2];
                    const GradientStack s = shrink(g, rho, 1e-8);
                    ++grid_points;
                    // Strictly inside the dead zone the output is exactly zero;
                    // on its boundary rounding may leave a residue of order 1e-16.
                    if (mag < (1.0 / rho) * (1.0 - 1e-12)) {
                        grid_ok &= s.dx[0] == 0.0 && s.dy[0] == 0.0 && s.dc[0] == 0.0;
                        continue;
                    }
                    const double expect = std::max(mag - 1.0 / rho, 0.0);
                    const std::array<double, 3> out{s.dx[0], s.dy[0], s.dc[0]};
                    for (int k = 0; k < 3; ++k) grid_ok &= std::abs(out[k] - expect * dir[k]) <= 1e-12;
                    grid_ok &= out[0] * g.dx[0] + out[1] * g.dy[0] + out[2] * g.dc[0] >= 0.0;
                }
        }
    }
    const double s = seconds_since(t0);
    return {worst_gap <= 1e-6 && grid_ok && s < 5.0,
            fmt("54 voxels over rho in {0.5, 1, 5, 20}, shrink minus brute-force objective <= %.2e "
                "(limit 1e-6); dead zone/direction grid %s over %ld points; %.2f s (limit 5 s)",
                worst_gap, grid_ok ? "ok" : "VIOLATED", grid_points, s)};
}

Verdict solver_optimality() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1004);
    const SolverParams p;  // lambda = 1, beta = 1, rho = 5
    double worst = 0.0;
    bool all_converged = true;
    for (int k = 0; k < 10; ++k) {
        const ImageTensor I = oracle::random_tensor(16, 16, rng);
        const SolveResult r = solve_smoke(I, p);
        all_converged &= r.diag.converged;
        const double e = energy(r.F, I, p);
        const auto ref = oracle::subgradient_minimize(I, p.lambda, weights(p.betas), 500000);
        worst = std::max(worst, std::abs(e - ref.energy) / ref.energy);
    }
    const double s = seconds_since(t0);
    return {worst <= 1e-3 && all_converged && s < 120.0,
            fmt("10 images at 16x16x3, max relative energy gap %.2e (limit 1e-3), all converged: %s, %.1f s "
                "(limit 120 s)",
                worst, all_converged ? "yes" : "no", s)};
}

Verdict model_identity() {
    std::mt19937_64 rng(1005);
    double worst = 0.0;
    int runs = 0;
    for (int k = 0; k < 10; ++k) {
        const ImageTensor I = oracle::random_tensor(12 + k, 16, rng);
        worst = std::max(worst, reconstruction_error(I, decompose(I, SolverParams{})));
        ++runs;
    }
    for (const auto& c : synthetic_set()) {
        worst = std::max(worst, reconstruction_error(c.smoked, c.result));
        ++runs;
    }
    return {worst <= 1e-12, fmt("%d pipeline runs, max |J + alpha F - I| = %.2e (limit 1e-12)", runs, worst)};
}

Verdict synthetic_end_to_end() {
    const auto& cases = synthetic_set();
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const double gain = psnr(c.result.J, c.clean) - psnr(c.smoked, c.clean);
        const double re = re_metric(c.smoked, c.result.J);
        ok &= gain > 0.0 && re > 0.0;
        detail += fmt(" [dPSNR %+.2f dB, RE %.3f]", gain, re);
    }
    // Count the synthesis and solves even when an earlier check triggered them.
    const double s = seconds_since(t0) + synthetic_build_seconds;
    ok &= s < 120.0;
    return {ok, fmt("%d images at 128x128, strength 0.3, smoothness 12:", kSyntheticCount) + detail +
                    fmt(", %.1f s (limit 120 s)", s)};
}

Verdict out_of_scope_declared() {
    return {true, "FADE and JNBM scores rely on external trained models and are out of scope; no check targets them"};
}

Verdict batch_determinism() {
    const auto t0 = Clock::now();
    const fs::path root = fs::temp_directory_path() / "desmoke_acceptance_batch";
    fs::remove_all(root);
    fs::create_directories(root / "in");
    for (int i = 0; i < 10; ++i) {
        const std::size_t h = 40 + 4 * (i % 3), w = 48 - 4 * (i % 2);
        SmokeSpec spec;
        spec.seed = 200 + i;
        const ImageTensor I = apply_smoke(textured_scene(h, w, 300 + i), generate_smoke_field(h, w, spec));
        save_image(I, root / "in" / fmt(i % 2 ? "img%02d.ppm" : "img%02d.png", i));
    }
    const SolverParams p;
    const BatchSummary one = run_batch(root / "in", root / "jobs1", p, 1);
    const BatchSummary four = run_batch(root / "in", root / "jobs4", p, 4);
    auto slurp = [](const fs::path& f) {
        std::ifstream in(f, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    int identical = 0;
    for (const auto& e : one.entries) {
        const std::string a = slurp(root / "jobs1" / e.file);
        if (!a.empty() && a == slurp(root / "jobs4" / e.file)) ++identical;
    }
    const bool ok = one.succeeded == 10 && four.succeeded == 10 && identical == 10;
    return {ok, fmt("10 images, %d/10 outputs byte-identical between jobs=1 and jobs=4, %.1f s", identical,
                    seconds_since(t0))};
}

Verdict convergence_behaviour() {
    bool ok = true;
    std::string detail;
    for (const auto& c : synthetic_set()) {
        const SolveDiagnostics& d = c.result.diag;
        const double ratio = d.primal_residual_trace.back() / d.primal_residual_trace.front();
        ok &= ratio < 1e-3 && d.iterations <= 100 && d.converged;
        detail += fmt(" [ratio %.2e, %d it, converged=%s]", ratio, d.iterations, d.converged ? "true" : "false");
    }
    return {ok, "final/initial primal residual (limit 1e-3), tol 1e-4, max 100 iterations:" + detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::pair<const char*, std::function<Verdict()>>> criteria{
        {1, {"operator adjoint identity", adjoint_identity}},
        {2, {"spectral solve exactness", spectral_exactness}},
        {3, {"shrinkage correctness", prox_correctness}},
        {4, {"solver optimality", solver_optimality}},
        {5, {"model identity", model_identity}},
        {6, {"synthetic end-to-end", synthetic_end_to_end}},
        {7, {"non-reproducible claims declared", out_of_scope_declared}},
        {8, {"batch determinism", batch_determinism}},
        {9, {"convergence behaviour", convergence_behaviour}},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (!criteria.count(id)) {
            std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
            return 2;
        }
        selected.push_back(id);
    }
    if (selected.empty())
        for (const auto& [id, _] : criteria) selected.push_back(id);

    int failures = 0;
    for (int id : selected) {
        const auto& [name, check] = criteria.at(id);
        Verdict v{false, ""};
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %d  %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
