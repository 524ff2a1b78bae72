#pragma once

#include "desmoke/diffops.hpp"
#include "desmoke/tensor.hpp"

namespace desmoke {

struct SolverParams {
    double lambda = 1.0;   // fidelity weight
    Betas betas{};         // difference weights
    double rho = 5.0;      // augmented Lagrangian penalty
    double epsilon = 1e-8; // floor on the shrinkage magnitude
    int max_iter = 100;
    double tol = 1e-4;     // relative residual tolerance

    /// Throws ParameterError on any out-of-range field.
    void validate() const;
};

/// Isotropic TV: sum over voxels of |(bx Dx t, by Dy t, bc Dc t)|.
double tv_norm(const ImageTensor& t, const Betas& betas);

/// Sum over voxels of the Euclidean length of the three stacked components.
double group_norm(const GradientStack& g);

/// (lambda/2) |F - I|^2 + tv_norm(F).
double energy(const ImageTensor& F, const ImageTensor& I, const SolverParams& params);

/// Group soft-thresholding, the proximal map of group_norm / rho.
///
/// Per voxel with m = max(|v|, epsilon), returns v * max(m - 1/rho, 0) / m.
/// Voxels with |v| <= 1/rho map to exactly zero.
GradientStack shrink(const GradientStack& v, double rho, double epsilon);

}  // namespace desmoke
