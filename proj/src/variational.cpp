#include "desmoke/variational.hpp"

#include <algorithm>
#include <cmath>

namespace desmoke {

void SolverParams::validate() const {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    if (!(rho > 0.0)) throw ParameterError("rho must be positive");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    if (max_iter < 1) throw ParameterError("max_iter must be at least 1");
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    betas.validate();
}

double group_norm(const GradientStack& g) {
    require_same_shape(g.dx, g.dy, "group_norm");
    require_same_shape(g.dx, g.dc, "group_norm");
    double total = 0.0;
    for (std::size_t i = 0; i < g.dx.size(); ++i) {
        total += std::sqrt(g.dx[i] * g.dx[i] + g.dy[i] * g.dy[i] + g.dc[i] * g.dc[i]);
    }
    return total;
}

double tv_norm(const ImageTensor& t, const Betas& betas) { return group_norm(apply_D(t, betas)); }

double energy(const ImageTensor& F, const ImageTensor& I, const SolverParams& params) {
    require_same_shape(F, I, "energy");
    double fidelity = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double d = F[i] - I[i];
        fidelity += d * d;
    }
    return 0.5 * params.lambda * fidelity + tv_norm(F, params.betas);
}

GradientStack shrink(const GradientStack& v, double rho, double epsilon) {
    if (!(rho > 0.0)) throw ParameterError("shrink: rho must be positive");
    if (!(epsilon > 0.0)) throw ParameterError("shrink: epsilon must be positive");
    GradientStack u = v;
    const double threshold = 1.0 / rho;
    for (std::size_t i = 0; i < v.dx.size(); ++i) {
        const double m = std::max(std::sqrt(v.dx[i] * v.dx[i] + v.dy[i] * v.dy[i] + v.dc[i] * v.dc[i]), epsilon);
        const double excess = m - threshold;
        if (excess <= 0.0) {
            u.dx[i] = 0.0;
            u.dy[i] = 0.0;
            u.dc[i] = 0.0;
            continue;
        }
        const double scale = excess / m;
        u.dx[i] *= scale;
        u.dy[i] *= scale;
        u.dc[i] *= scale;
    }
    return u;
}

}  // namespace desmoke
