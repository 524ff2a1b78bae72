#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "desmoke/tensor.hpp"

namespace desmoke {

using Complex = std::complex<double>;

/// One-dimensional complex DFT of arbitrary length.
///
/// Lengths whose prime factors are all <= 31 use a recursive mixed-radix
/// Cooley-Tukey decomposition (dedicated butterflies for 2, 3, 4, 5 and a
/// generic one for the rest). Anything with a larger prime factor goes through
/// Bluestein's chirp-z algorithm on a power-of-two convolution.
///
/// A plan only holds twiddle tables and is immutable once built, so a single
/// plan may be used from several threads at once.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(FftPlan&&) noexcept;
    FftPlan& operator=(FftPlan&&) noexcept;

    std::size_t size() const noexcept { return n_; }

    /// X[k] = sum_j x[j] exp(-2 pi i j k / n), in place.
    void forward(std::span<Complex> data) const;
    /// Unnormalised inverse: x[j] = sum_k X[k] exp(+2 pi i j k / n).
    void inverse(std::span<Complex> data) const;

private:
    void transform(std::span<Complex> data, bool inverse) const;
    void mixed_radix(Complex* out, const Complex* in, std::size_t fstride, std::size_t stage, bool inverse) const;
    void butterfly(Complex* out, std::size_t fstride, std::size_t m, std::size_t p, bool inverse) const;
    void bluestein(std::span<Complex> data) const;

    std::size_t n_ = 0;
    std::vector<std::size_t> factors_;
    std::vector<Complex> twiddles_;  // exp(-2 pi i k / n)

    // Bluestein state, empty for smooth lengths.
    std::unique_ptr<FftPlan> conv_plan_;
    std::vector<Complex> chirp_;
    std::vector<Complex> chirp_spectrum_;
};

/// Spectrum of an H x W x 3 tensor, same layout as ImageTensor.
struct ComplexField {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<Complex> data;
};

/// 3D DFT over (rows, columns, channels). The forward transform is
/// unnormalised and the inverse carries the 1 / (H * W * 3) factor.
class Fft3 {
public:
    Fft3(std::size_t height, std::size_t width);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }

    ComplexField forward(const ImageTensor& t) const;
    void forward_inplace(ComplexField& field) const;
    void inverse_inplace(ComplexField& field) const;
    /// Inverse transform, keeping only the real part.
    ImageTensor inverse_real(ComplexField field) const;

private:
    void along_axes(ComplexField& field, bool inverse) const;

    std::size_t height_;
    std::size_t width_;
    std::shared_ptr<const FftPlan> rows_;     // length H, along y
    std::shared_ptr<const FftPlan> cols_;     // length W, along x
    std::shared_ptr<const FftPlan> channels_; // length 3
};

ComplexField fft3(const ImageTensor& t);
ImageTensor ifft3(const ComplexField& c);

}  // namespace desmoke
