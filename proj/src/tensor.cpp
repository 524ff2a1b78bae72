#include "desmoke/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace desmoke {

namespace {

void check_dims(std::size_t height, std::size_t width) {
    if (height < 2 || width < 2) {
        throw DimensionError("image dimensions must be at least 2x2, got " + std::to_string(height) + "x" +
                             std::to_string(width));
    }
}

}  // namespace

ImageTensor::ImageTensor(std::size_t height, std::size_t width, double fill)
    : height_(height), width_(width) {
    check_dims(height, width);
    data_.assign(height * width * kChannels, fill);
}

ImageTensor::ImageTensor(std::size_t height, std::size_t width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
    check_dims(height, width);
    if (data_.size() != height * width * kChannels) {
        throw ShapeMismatch("tensor data holds " + std::to_string(data_.size()) + " values, expected " +
                            std::to_string(height * width * kChannels));
    }
}

ImageTensor& ImageTensor::operator+=(const ImageTensor& rhs) {
    require_same_shape(*this, rhs, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ImageTensor& ImageTensor::operator-=(const ImageTensor& rhs) {
    require_same_shape(*this, rhs, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ImageTensor& ImageTensor::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

ImageTensor& ImageTensor::axpy(double s, const ImageTensor& x) {
    require_same_shape(*this, x, "axpy");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * x.data_[i];
    return *this;
}

ImageTensor operator+(ImageTensor a, const ImageTensor& b) { return a += b; }
ImageTensor operator-(ImageTensor a, const ImageTensor& b) { return a -= b; }
ImageTensor operator*(double s, ImageTensor a) { return a *= s; }

GradientStack::GradientStack(ImageTensor x, ImageTensor y, ImageTensor c)
    : dx(std::move(x)), dy(std::move(y)), dc(std::move(c)) {
    require_same_shape(dx, dy, "gradient stack");
    require_same_shape(dx, dc, "gradient stack");
}

GradientStack& GradientStack::operator+=(const GradientStack& rhs) {
    dx += rhs.dx;
    dy += rhs.dy;
    dc += rhs.dc;
    return *this;
}

GradientStack& GradientStack::operator-=(const GradientStack& rhs) {
    dx -= rhs.dx;
    dy -= rhs.dy;
    dc -= rhs.dc;
    return *this;
}

GradientStack& GradientStack::operator*=(double s) noexcept {
    dx *= s;
    dy *= s;
    dc *= s;
    return *this;
}

GradientStack& GradientStack::axpy(double s, const GradientStack& x) {
    dx.axpy(s, x.dx);
    dy.axpy(s, x.dy);
    dc.axpy(s, x.dc);
    return *this;
}

GradientStack operator+(GradientStack a, const GradientStack& b) { return a += b; }
GradientStack operator-(GradientStack a, const GradientStack& b) { return a -= b; }
GradientStack operator*(double s, GradientStack a) { return a *= s; }

ImageTensor new_tensor(std::size_t height, std::size_t width, double fill) {
    return ImageTensor(height, width, fill);
}

void require_same_shape(const ImageTensor& a, const ImageTensor& b, const char* what) {
    if (!a.same_shape(b)) {
        throw ShapeMismatch(std::string(what) + ": shape mismatch (" + std::to_string(a.height()) + "x" +
                            std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
                            std::to_string(b.width()) + ")");
    }
}

double dot(const ImageTensor& a, const ImageTensor& b) {
    require_same_shape(a, b, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double dot(const GradientStack& a, const GradientStack& b) {
    return dot(a.dx, b.dx) + dot(a.dy, b.dy) + dot(a.dc, b.dc);
}

double norm(const ImageTensor& t) { return std::sqrt(dot(t, t)); }
double norm(const GradientStack& g) { return std::sqrt(dot(g, g)); }

double max_abs(const ImageTensor& t) noexcept {
    double m = 0.0;
    for (double v : t.values()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const GradientStack& g) noexcept {
    return std::max({max_abs(g.dx), max_abs(g.dy), max_abs(g.dc)});
}

ImageTensor clamp01(ImageTensor t) noexcept {
    for (double& v : t.values()) v = std::clamp(v, 0.0, 1.0);
    return t;
}

std::array<double, 3> channel_means(const ImageTensor& t) {
    std::array<double, 3> sums{0.0, 0.0, 0.0};
    const std::size_t pixels = t.height() * t.width();
    for (std::size_t p = 0; p < pixels; ++p) {
        for (std::size_t c = 0; c < kChannels; ++c) sums[c] += t[p * kChannels + c];
    }
    for (double& s : sums) s /= static_cast<double>(pixels);
    return sums;
}

}  // namespace desmoke
