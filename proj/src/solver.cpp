#include "desmoke/solver.hpp"

#include <algorithm>

namespace desmoke {

SolveResult solve_smoke(const ImageTensor& I, const SolverParams& params) {
    params.validate();
    const SpectralKernel kernel(I.height(), I.width(), params);
    return solve_smoke(I, params, kernel);
}

SolveResult solve_smoke(const ImageTensor& I, const SolverParams& params, const SpectralKernel& kernel,
                        const IterationObserver& observer) {
    params.validate();
    if (!kernel.matches(I.height(), I.width(), params)) {
        throw ShapeMismatch("solve_smoke: spectral kernel does not match image shape or parameters");
    }

    const Betas& betas = params.betas;
    const double rho = params.rho;
    const double eps = params.epsilon;

    SolveResult result;
    SolveDiagnostics& diag = result.diag;
    diag.energy_trace.reserve(params.max_iter);
    diag.primal_residual_trace.reserve(params.max_iter);
    diag.dual_residual_trace.reserve(params.max_iter);

    ImageTensor F = I;
    GradientStack u = apply_D(I, betas);
    GradientStack y(I.height(), I.width(), 0.0);

    for (int k = 1; k <= params.max_iter; ++k) {
        F = f_update(I, u, y, kernel, params);
        const GradientStack DF = apply_D(F, betas);

        GradientStack v = DF;
        v.axpy(1.0 / rho, y);
        GradientStack u_next = shrink(v, rho, eps);

        GradientStack r = DF - u_next;
        const GradientStack y_prev = observer ? y : GradientStack{};
        y.axpy(rho, r);

        const double primal = norm(r);
        const double dual = rho * norm(apply_Dt(u_next - u, betas));
        u = std::move(u_next);

        diag.iterations = k;
        diag.energy_trace.push_back(energy(F, I, params));
        diag.primal_residual_trace.push_back(primal);
        diag.dual_residual_trace.push_back(dual);

        if (observer) observer(IterationState{k, F, u, y_prev, y});

        const double primal_scale = std::max({norm(DF), norm(u), eps});
        const double dual_scale = std::max(norm(apply_Dt(y, betas)), eps);
        if (primal <= params.tol * primal_scale && dual <= params.tol * dual_scale) {
            diag.converged = true;
            break;
        }
    }

    result.F = std::move(F);
    return result;
}

}  // namespace desmoke
