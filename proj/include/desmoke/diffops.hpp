#pragma once

#include "desmoke/tensor.hpp"

namespace desmoke {

enum class Axis { X, Y, C };

/// Weights of the horizontal, vertical and inter-channel differences.
struct Betas {
    double x = 1.0;
    double y = 1.0;
    double c = 1.0;

    /// Throws ParameterError if any weight is negative or all are zero.
    void validate() const;

    friend bool operator==(const Betas&, const Betas&) = default;
};

// All operators below use periodic boundaries on every axis, including the
// three-sample channel axis, so that D is circulant and diagonalised by the
// 3D DFT.

/// out(p) = t(p + e_axis) - t(p), wrapping around.
ImageTensor forward_diff(const ImageTensor& t, Axis axis);

/// Adjoint of forward_diff: out(p) = t(p - e_axis) - t(p).
ImageTensor adjoint_diff(const ImageTensor& t, Axis axis);

/// D t = (bx Dx t, by Dy t, bc Dc t).
GradientStack apply_D(const ImageTensor& t, const Betas& betas);

/// D^T g = bx Dx^T g.dx + by Dy^T g.dy + bc Dc^T g.dc.
ImageTensor apply_Dt(const GradientStack& g, const Betas& betas);

}  // namespace desmoke
