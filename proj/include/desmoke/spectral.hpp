#pragma once

#include <memory>
#include <vector>

#include "desmoke/fft.hpp"
#include "desmoke/variational.hpp"

namespace desmoke {

/// Parameters a SpectralKernel depends on. Two kernels are interchangeable
/// exactly when their keys compare equal.
struct KernelKey {
    std::size_t height = 0;
    std::size_t width = 0;
    double lambda = 0.0;
    double rho = 0.0;
    Betas betas{};

    static KernelKey of(std::size_t height, std::size_t width, const SolverParams& params) {
        return {height, width, params.lambda, params.rho, params.betas};
    }

    friend bool operator==(const KernelKey&, const KernelKey&) = default;
};

/// Per-frequency denominator of the F-subproblem,
///   lambda + rho * (4 bx^2 sin^2(pi kx / W) + 4 by^2 sin^2(pi ky / H) + 4 bc^2 sin^2(pi kc / 3)),
/// together with the transform plans for its grid. Immutable after
/// construction and safe to share between threads.
class SpectralKernel {
public:
    SpectralKernel(std::size_t height, std::size_t width, const SolverParams& params);

    const KernelKey& key() const noexcept { return key_; }
    std::size_t height() const noexcept { return key_.height; }
    std::size_t width() const noexcept { return key_.width; }

    /// Denominator in ImageTensor layout: index (ky * W + kx) * 3 + kc.
    const std::vector<double>& denom() const noexcept { return denom_; }
    double denom(std::size_t ky, std::size_t kx, std::size_t kc) const noexcept {
        return denom_[(ky * key_.width + kx) * kChannels + kc];
    }

    const Fft3& transform() const noexcept { return fft_; }

    bool matches(std::size_t height, std::size_t width, const SolverParams& params) const noexcept {
        return key_ == KernelKey::of(height, width, params);
    }

private:
    KernelKey key_;
    Fft3 fft_;
    std::vector<double> denom_;
};

SpectralKernel build_kernel(std::size_t height, std::size_t width, const SolverParams& params);

/// Exact minimiser over F of
///   (lambda/2)|F - I|^2 + y.(DF - u) + (rho/2)|DF - u|^2,
/// i.e. F = IFFT[ FFT(lambda I + rho D^T u - D^T y) / denom ].
/// Throws ShapeMismatch or ParameterError if the kernel was built for a
/// different grid or different parameters.
ImageTensor f_update(const ImageTensor& I, const GradientStack& u, const GradientStack& y,
                     const SpectralKernel& kernel, const SolverParams& params);

}  // namespace desmoke
