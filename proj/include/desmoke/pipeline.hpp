#pragma once

#include <array>

#include "desmoke/solver.hpp"

namespace desmoke {

struct DecompositionResult {
    ImageTensor F;              // smoke layer
    ImageTensor J;              // enhanced image, clamped to [0, 1]
    ImageTensor J_unclamped;    // I - alpha * F before clamping
    std::array<double, 3> alpha{};
    SolveDiagnostics diag;
};

/// Per-channel mean of the smoke layer.
std::array<double, 3> compute_alpha(const ImageTensor& F);

/// I^c - alpha^c F^c, without clamping.
ImageTensor subtract_weighted(const ImageTensor& I, const ImageTensor& F, const std::array<double, 3>& alpha);

/// Splits I into smoke F and enhanced J = clamp01(I - alpha F).
DecompositionResult decompose(const ImageTensor& I, const SolverParams& params);
DecompositionResult decompose(const ImageTensor& I, const SolverParams& params, const SpectralKernel& kernel);

}  // namespace desmoke
