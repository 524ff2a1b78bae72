#include "desmoke/fft.hpp"

#include <cmath>
#include <numbers>

namespace desmoke {

namespace {

constexpr std::size_t kLargestDirectRadix = 31;

std::vector<std::size_t> factorize(std::size_t n) {
    std::vector<std::size_t> factors;
    while (n % 4 == 0) {
        factors.push_back(4);
        n /= 4;
    }
    for (std::size_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            factors.push_back(p);
            n /= p;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

Complex unit_root(std::size_t k, std::size_t n) {
    // exp(-2 pi i k / n)
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

inline Complex times_minus_i(Complex z) { return {z.imag(), -z.real()}; }

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw DimensionError("FFT length must be positive");
    factors_ = factorize(n);
    const bool smooth = factors_.empty() || factors_.back() <= kLargestDirectRadix;
    if (smooth) {
        twiddles_.resize(n);
        for (std::size_t k = 0; k < n; ++k) twiddles_[k] = unit_root(k, n);
        return;
    }

    factors_.clear();
    const std::size_t m = next_pow2(2 * n - 1);
    conv_plan_ = std::make_unique<FftPlan>(m);
    chirp_.resize(n);
    const std::size_t period = 2 * n;
    for (std::size_t j = 0; j < n; ++j) {
        // j^2 mod 2n keeps the angle small and accurate for large j.
        const std::size_t sq = (j * j) % period;
        const double angle = -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n);
        chirp_[j] = {std::cos(angle), std::sin(angle)};
    }
    chirp_spectrum_.assign(m, Complex{});
    chirp_spectrum_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n; ++j) {
        chirp_spectrum_[j] = std::conj(chirp_[j]);
        chirp_spectrum_[m - j] = std::conj(chirp_[j]);
    }
    conv_plan_->forward(chirp_spectrum_);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }
void FftPlan::inverse(std::span<Complex> data) const { transform(data, true); }

void FftPlan::transform(std::span<Complex> data, bool inverse) const {
    if (data.size() != n_) throw ShapeMismatch("FFT input length does not match plan");
    if (n_ == 1) return;
    if (conv_plan_) {
        if (inverse) {
            for (Complex& z : data) z = std::conj(z);
            bluestein(data);
            for (Complex& z : data) z = std::conj(z);
        } else {
            bluestein(data);
        }
        return;
    }
    const std::vector<Complex> input(data.begin(), data.end());
    mixed_radix(data.data(), input.data(), 1, 0, inverse);
}

void FftPlan::mixed_radix(Complex* out, const Complex* in, std::size_t fstride, std::size_t stage,
                          bool inverse) const {
    const std::size_t p = factors_[stage];
    const std::size_t m = n_ / (fstride * p);
    if (m == 1) {
        for (std::size_t j = 0; j < p; ++j) out[j] = in[j * fstride];
    } else {
        for (std::size_t q = 0; q < p; ++q) {
            mixed_radix(out + q * m, in + q * fstride, fstride * p, stage + 1, inverse);
        }
    }
    butterfly(out, fstride, m, p, inverse);
}

void FftPlan::butterfly(Complex* out, std::size_t fstride, std::size_t m, std::size_t p, bool inverse) const {
    auto tw = [&](std::size_t k) { return inverse ? std::conj(twiddles_[k]) : twiddles_[k]; };
    // Rotating by -i in the forward direction becomes +i for the inverse.
    auto rot = [&](Complex z) { return inverse ? -times_minus_i(z) : times_minus_i(z); };

    Complex t[5];
    std::vector<Complex> scratch;
    if (p > 5) scratch.resize(p);

    for (std::size_t u = 0; u < m; ++u) {
        switch (p) {
            case 2: {
                const Complex a = out[u];
                const Complex b = out[u + m] * tw(u * fstride);
                out[u] = a + b;
                out[u + m] = a - b;
                break;
            }
            case 3: {
                constexpr double s3 = 0.86602540378443864676;  // sin(pi/3)
                t[0] = out[u];
                t[1] = out[u + m] * tw(u * fstride);
                t[2] = out[u + 2 * m] * tw(2 * u * fstride);
                const Complex sum = t[1] + t[2];
                const Complex mid = t[0] - 0.5 * sum;
                const Complex rotated = rot(s3 * (t[1] - t[2]));
                out[u] = t[0] + sum;
                out[u + m] = mid + rotated;
                out[u + 2 * m] = mid - rotated;
                break;
            }
            case 4: {
                t[0] = out[u];
                t[1] = out[u + m] * tw(u * fstride);
                t[2] = out[u + 2 * m] * tw(2 * u * fstride);
                t[3] = out[u + 3 * m] * tw(3 * u * fstride);
                const Complex a = t[0] + t[2];
                const Complex b = t[0] - t[2];
                const Complex c = t[1] + t[3];
                const Complex d = rot(t[1] - t[3]);
                out[u] = a + c;
                out[u + m] = b + d;
                out[u + 2 * m] = a - c;
                out[u + 3 * m] = b - d;
                break;
            }
            case 5: {
                constexpr double c1 = 0.30901699437494742410;   // cos(2pi/5)
                constexpr double c2 = -0.80901699437494742410;  // cos(4pi/5)
                constexpr double s1 = 0.95105651629515357212;   // sin(2pi/5)
                constexpr double s2 = 0.58778525229247312917;   // sin(4pi/5)
                t[0] = out[u];
                for (std::size_t q = 1; q < 5; ++q) t[q] = out[u + q * m] * tw(q * u * fstride);
                const Complex a1 = t[1] + t[4];
                const Complex a2 = t[2] + t[3];
                const Complex b1 = t[1] - t[4];
                const Complex b2 = t[2] - t[3];
                const Complex r1 = t[0] + c1 * a1 + c2 * a2;
                const Complex r2 = t[0] + c2 * a1 + c1 * a2;
                const Complex i1 = rot(s1 * b1 + s2 * b2);
                const Complex i2 = rot(s2 * b1 - s1 * b2);
                out[u] = t[0] + a1 + a2;
                out[u + m] = r1 + i1;
                out[u + 2 * m] = r2 + i2;
                out[u + 3 * m] = r2 - i2;
                out[u + 4 * m] = r1 - i1;
                break;
            }
            default: {
                const std::size_t root_step = n_ / p;
                scratch[0] = out[u];
                for (std::size_t q = 1; q < p; ++q) scratch[q] = out[u + q * m] * tw(q * u * fstride);
                for (std::size_t j = 0; j < p; ++j) {
                    Complex acc = scratch[0];
                    for (std::size_t q = 1; q < p; ++q) acc += scratch[q] * tw(((q * j) % p) * root_step);
                    out[u + j * m] = acc;
                }
                break;
            }
        }
    }
}

void FftPlan::bluestein(std::span<Complex> data) const {
    const std::size_t m = conv_plan_->size();
    std::vector<Complex> work(m, Complex{});
    for (std::size_t j = 0; j < n_; ++j) work[j] = data[j] * chirp_[j];
    conv_plan_->forward(work);
    for (std::size_t k = 0; k < m; ++k) work[k] *= chirp_spectrum_[k];
    conv_plan_->inverse(work);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n_; ++k) data[k] = chirp_[k] * work[k] * scale;
}

Fft3::Fft3(std::size_t height, std::size_t width)
    : height_(height), width_(width) {
    if (height < 2 || width < 2) throw DimensionError("FFT grid must be at least 2x2");
    rows_ = std::make_shared<const FftPlan>(height);
    cols_ = width == height ? rows_ : std::make_shared<const FftPlan>(width);
    channels_ = std::make_shared<const FftPlan>(kChannels);
}

ComplexField Fft3::forward(const ImageTensor& t) const {
    if (t.height() != height_ || t.width() != width_) throw ShapeMismatch("Fft3: tensor shape does not match plan");
    ComplexField field{height_, width_, std::vector<Complex>(t.values().begin(), t.values().end())};
    along_axes(field, false);
    return field;
}

void Fft3::forward_inplace(ComplexField& field) const { along_axes(field, false); }

void Fft3::inverse_inplace(ComplexField& field) const {
    along_axes(field, true);
    const double scale = 1.0 / static_cast<double>(height_ * width_ * kChannels);
    for (Complex& z : field.data) z *= scale;
}

ImageTensor Fft3::inverse_real(ComplexField field) const {
    inverse_inplace(field);
    std::vector<double> real(field.data.size());
    for (std::size_t i = 0; i < real.size(); ++i) real[i] = field.data[i].real();
    return ImageTensor(height_, width_, std::move(real));
}

void Fft3::along_axes(ComplexField& field, bool inverse) const {
    if (field.height != height_ || field.width != width_ || field.data.size() != height_ * width_ * kChannels) {
        throw ShapeMismatch("Fft3: field shape does not match plan");
    }
    auto run = [inverse](const FftPlan& plan, std::span<Complex> line) {
        inverse ? plan.inverse(line) : plan.forward(line);
    };
    Complex* data = field.data.data();

    for (std::size_t p = 0; p < height_ * width_; ++p) run(*channels_, {data + p * kChannels, kChannels});

    std::vector<Complex> line(width_);
    for (std::size_t y = 0; y < height_; ++y) {
        for (std::size_t c = 0; c < kChannels; ++c) {
            for (std::size_t x = 0; x < width_; ++x) line[x] = data[(y * width_ + x) * kChannels + c];
            run(*cols_, line);
            for (std::size_t x = 0; x < width_; ++x) data[(y * width_ + x) * kChannels + c] = line[x];
        }
    }

    line.resize(height_);
    for (std::size_t x = 0; x < width_; ++x) {
        for (std::size_t c = 0; c < kChannels; ++c) {
            for (std::size_t y = 0; y < height_; ++y) line[y] = data[(y * width_ + x) * kChannels + c];
            run(*rows_, line);
            for (std::size_t y = 0; y < height_; ++y) data[(y * width_ + x) * kChannels + c] = line[y];
        }
    }
}

ComplexField fft3(const ImageTensor& t) { return Fft3(t.height(), t.width()).forward(t); }

ImageTensor ifft3(const ComplexField& c) { return Fft3(c.height, c.width).inverse_real(c); }

}  // namespace desmoke
