#include "desmoke/pipeline.hpp"

namespace desmoke {

std::array<double, 3> compute_alpha(const ImageTensor& F) { return channel_means(F); }

ImageTensor subtract_weighted(const ImageTensor& I, const ImageTensor& F, const std::array<double, 3>& alpha) {
    require_same_shape(I, F, "subtract_weighted");
    ImageTensor J = I;
    for (std::size_t i = 0; i < J.size(); ++i) J[i] -= alpha[i % kChannels] * F[i];
    return J;
}

DecompositionResult decompose(const ImageTensor& I, const SolverParams& params) {
    params.validate();
    const SpectralKernel kernel(I.height(), I.width(), params);
    return decompose(I, params, kernel);
}

DecompositionResult decompose(const ImageTensor& I, const SolverParams& params, const SpectralKernel& kernel) {
    SolveResult solved = solve_smoke(I, params, kernel);
    DecompositionResult out;
    out.alpha = compute_alpha(solved.F);
    out.J_unclamped = subtract_weighted(I, solved.F, out.alpha);
    out.J = clamp01(out.J_unclamped);
    out.F = std::move(solved.F);
    out.diag = std::move(solved.diag);
    return out;
}

}  // namespace desmoke
