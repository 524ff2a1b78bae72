#pragma once

#include <functional>
#include <vector>

#include "desmoke/spectral.hpp"
#include "desmoke/variational.hpp"

namespace desmoke {

struct SolveDiagnostics {
    int iterations = 0;
    std::vector<double> energy_trace;           // energy(F^k) after each iteration
    std::vector<double> primal_residual_trace;  // |D F^k - u^k|
    std::vector<double> dual_residual_trace;    // rho |D^T (u^k - u^{k-1})|
    bool converged = false;
};

struct SolveResult {
    ImageTensor F;
    SolveDiagnostics diag;
};

/// Per-iteration view handed to an optional observer; used by tests to check
/// the multiplier update without duplicating the loop.
struct IterationState {
    int iteration;
    const ImageTensor& F;
    const GradientStack& u;
    const GradientStack& y_prev;
    const GradientStack& y;
};

/// Minimises (lambda/2)|F - I|^2 + TV(F) by alternating directions on the
/// split D F = u with multiplier y.
///
/// Starts from F = I, u = D I, y = 0. Each sweep does the Fourier-domain
/// F-update, the group shrinkage of v = D F + y / rho, then the multiplier
/// step y += rho (D F - u). Stops once
///   |D F - u| <= tol * max(|D F|, |u|, eps)  and
///   rho |D^T (u - u_prev)| <= tol * max(|D^T y|, eps)
/// or after max_iter sweeps. Running out of iterations is reported through
/// diag.converged, not thrown.
SolveResult solve_smoke(const ImageTensor& I, const SolverParams& params);

using IterationObserver = std::function<void(const IterationState&)>;

/// Same, reusing a kernel built for I's shape and `params`.
SolveResult solve_smoke(const ImageTensor& I, const SolverParams& params, const SpectralKernel& kernel,
                        const IterationObserver& observer = {});

}  // namespace desmoke
