#include "desmoke/diffops.hpp"

#include <cmath>

namespace desmoke {

namespace {

// Applies out(p) = t(p + sign * e_axis) - t(p) with periodic wrap.
// sign = +1 gives the forward difference, -1 the negated backward one.
ImageTensor shifted_difference(const ImageTensor& t, Axis axis, int sign) {
    const std::size_t h = t.height();
    const std::size_t w = t.width();
    ImageTensor out(h, w);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            for (std::size_t c = 0; c < kChannels; ++c) {
                std::size_t ny = y, nx = x, nc = c;
                switch (axis) {
                    case Axis::X: nx = sign > 0 ? (x + 1) % w : (x + w - 1) % w; break;
                    case Axis::Y: ny = sign > 0 ? (y + 1) % h : (y + h - 1) % h; break;
                    case Axis::C: nc = sign > 0 ? (c + 1) % kChannels : (c + kChannels - 1) % kChannels; break;
                }
                out(y, x, c) = t(ny, nx, nc) - t(y, x, c);
            }
        }
    }
    return out;
}

}  // namespace

void Betas::validate() const {
    if (!(x >= 0.0) || !(y >= 0.0) || !(c >= 0.0)) {
        throw ParameterError("beta weights must be nonnegative");
    }
    if (x == 0.0 && y == 0.0 && c == 0.0) {
        throw ParameterError("at least one beta weight must be positive");
    }
}

ImageTensor forward_diff(const ImageTensor& t, Axis axis) { return shifted_difference(t, axis, +1); }

ImageTensor adjoint_diff(const ImageTensor& t, Axis axis) { return shifted_difference(t, axis, -1); }

GradientStack apply_D(const ImageTensor& t, const Betas& betas) {
    GradientStack g(forward_diff(t, Axis::X), forward_diff(t, Axis::Y), forward_diff(t, Axis::C));
    g.dx *= betas.x;
    g.dy *= betas.y;
    g.dc *= betas.c;
    return g;
}

ImageTensor apply_Dt(const GradientStack& g, const Betas& betas) {
    ImageTensor out = adjoint_diff(g.dx, Axis::X);
    out *= betas.x;
    out.axpy(betas.y, adjoint_diff(g.dy, Axis::Y));
    out.axpy(betas.c, adjoint_diff(g.dc, Axis::C));
    return out;
}

}  // namespace desmoke
