#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "desmoke/errors.hpp"

namespace desmoke {

inline constexpr std::size_t kChannels = 3;

/// Dense H x W x 3 grid of doubles.
///
/// Storage is row-major with the channel index varying fastest:
/// element (row y, column x, channel c) lives at (y * W + x) * 3 + c.
/// Every module (difference operators, transforms, image I/O) relies on this
/// layout, so it is not configurable.
class ImageTensor {
public:
    ImageTensor() = default;

    /// Throws DimensionError unless height >= 2 and width >= 2.
    ImageTensor(std::size_t height, std::size_t width, double fill = 0.0);

    /// Adopts `data`, which must hold height * width * 3 values.
    ImageTensor(std::size_t height, std::size_t width, std::vector<double> data);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t channels() const noexcept { return kChannels; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::size_t index(std::size_t y, std::size_t x, std::size_t c) const noexcept {
        return (y * width_ + x) * kChannels + c;
    }

    double& operator()(std::size_t y, std::size_t x, std::size_t c) noexcept { return data_[index(y, x, c)]; }
    double operator()(std::size_t y, std::size_t x, std::size_t c) const noexcept {
        return data_[index(y, x, c)];
    }

    double& operator[](std::size_t i) noexcept { return data_[i]; }
    double operator[](std::size_t i) const noexcept { return data_[i]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    bool same_shape(const ImageTensor& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_;
    }

    ImageTensor& operator+=(const ImageTensor& rhs);
    ImageTensor& operator-=(const ImageTensor& rhs);
    ImageTensor& operator*=(double s) noexcept;

    /// this += s * x
    ImageTensor& axpy(double s, const ImageTensor& x);

    friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<double> data_;
};

ImageTensor operator+(ImageTensor a, const ImageTensor& b);
ImageTensor operator-(ImageTensor a, const ImageTensor& b);
ImageTensor operator*(double s, ImageTensor a);

/// Three difference fields sharing the shape of the tensor they came from.
struct GradientStack {
    ImageTensor dx;
    ImageTensor dy;
    ImageTensor dc;

    GradientStack() = default;
    GradientStack(std::size_t height, std::size_t width, double fill = 0.0)
        : dx(height, width, fill), dy(height, width, fill), dc(height, width, fill) {}
    GradientStack(ImageTensor x, ImageTensor y, ImageTensor c);

    std::size_t height() const noexcept { return dx.height(); }
    std::size_t width() const noexcept { return dx.width(); }

    GradientStack& operator+=(const GradientStack& rhs);
    GradientStack& operator-=(const GradientStack& rhs);
    GradientStack& operator*=(double s) noexcept;
    GradientStack& axpy(double s, const GradientStack& x);

    friend bool operator==(const GradientStack&, const GradientStack&) = default;
};

GradientStack operator+(GradientStack a, const GradientStack& b);
GradientStack operator-(GradientStack a, const GradientStack& b);
GradientStack operator*(double s, GradientStack a);

/// Constant tensor; throws DimensionError for height or width < 2.
ImageTensor new_tensor(std::size_t height, std::size_t width, double fill);

void require_same_shape(const ImageTensor& a, const ImageTensor& b, const char* what);

double dot(const ImageTensor& a, const ImageTensor& b);
double dot(const GradientStack& a, const GradientStack& b);

/// Euclidean norm over every entry.
double norm(const ImageTensor& t);
double norm(const GradientStack& g);

double max_abs(const ImageTensor& t) noexcept;
double max_abs(const GradientStack& g) noexcept;

ImageTensor clamp01(ImageTensor t) noexcept;

/// Arithmetic mean of each channel.
std::array<double, 3> channel_means(const ImageTensor& t);

}  // namespace desmoke
