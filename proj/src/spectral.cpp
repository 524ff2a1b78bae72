#include "desmoke/spectral.hpp"

#include <cmath>
#include <numbers>

namespace desmoke {

namespace {

// |F[D_axis]|^2 at frequency k for a periodic forward difference of length n.
double difference_symbol(std::size_t k, std::size_t n) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    return 4.0 * s * s;
}

}  // namespace

SpectralKernel::SpectralKernel(std::size_t height, std::size_t width, const SolverParams& params)
    : key_(KernelKey::of(height, width, params)), fft_(height, width) {
    params.validate();
    const Betas& b = params.betas;
    std::vector<double> sym_x(width), sym_y(height), sym_c(kChannels);
    for (std::size_t k = 0; k < width; ++k) sym_x[k] = b.x * b.x * difference_symbol(k, width);
    for (std::size_t k = 0; k < height; ++k) sym_y[k] = b.y * b.y * difference_symbol(k, height);
    for (std::size_t k = 0; k < kChannels; ++k) sym_c[k] = b.c * b.c * difference_symbol(k, kChannels);

    denom_.resize(height * width * kChannels);
    for (std::size_t ky = 0; ky < height; ++ky) {
        for (std::size_t kx = 0; kx < width; ++kx) {
            for (std::size_t kc = 0; kc < kChannels; ++kc) {
                denom_[(ky * width + kx) * kChannels + kc] =
                    params.lambda + params.rho * (sym_x[kx] + sym_y[ky] + sym_c[kc]);
            }
        }
    }
}

SpectralKernel build_kernel(std::size_t height, std::size_t width, const SolverParams& params) {
    return SpectralKernel(height, width, params);
}

ImageTensor f_update(const ImageTensor& I, const GradientStack& u, const GradientStack& y,
                     const SpectralKernel& kernel, const SolverParams& params) {
    if (I.height() != kernel.height() || I.width() != kernel.width()) {
        throw ShapeMismatch("f_update: image shape does not match spectral kernel");
    }
    if (!kernel.matches(I.height(), I.width(), params)) {
        throw ParameterError("f_update: spectral kernel was built for different parameters");
    }
    require_same_shape(I, u.dx, "f_update");
    require_same_shape(I, y.dx, "f_update");

    ImageTensor rhs = apply_Dt(u, params.betas);
    rhs *= params.rho;
    rhs.axpy(-1.0, apply_Dt(y, params.betas));
    rhs.axpy(params.lambda, I);

    ComplexField spectrum = kernel.transform().forward(rhs);
    const std::vector<double>& denom = kernel.denom();
    for (std::size_t i = 0; i < spectrum.data.size(); ++i) spectrum.data[i] /= denom[i];
    return kernel.transform().inverse_real(std::move(spectrum));
}

}  // namespace desmoke
