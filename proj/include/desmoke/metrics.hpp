#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "desmoke/tensor.hpp"

namespace desmoke {

inline constexpr double kDefaultEdgeContrast = 0.05;

/// Per-pixel boolean map, row-major.
struct EdgeMask {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> bits;

    bool at(std::size_t y, std::size_t x) const { return bits[y * width + x] != 0; }
    std::size_t count() const;
};

/// Luminance (R + G + B) / 3 per pixel, row-major.
std::vector<double> luminance(const ImageTensor& t);

/// A pixel is a visible edge when the Michelson contrast |a - b| / (a + b)
/// of its luminance against at least one in-bounds 4-neighbour exceeds
/// `contrast_threshold`. Pairs with a + b == 0 have zero contrast.
/// Throws ParameterError unless the threshold lies in (0, 1).
EdgeMask visible_edges(const ImageTensor& t, double contrast_threshold = kDefaultEdgeContrast);

/// Restored-edges ratio (n_J - n_I) / max(n_I, 1) over visible-edge counts.
/// Positive when J shows edges that I does not.
double re_metric(const ImageTensor& I, const ImageTensor& J, double contrast_threshold = kDefaultEdgeContrast);

/// 10 log10(1 / MSE) with unit peak. Identical inputs give +infinity.
double psnr(const ImageTensor& a, const ImageTensor& b);

double mean_squared_error(const ImageTensor& a, const ImageTensor& b);

/// Standard deviation of the luminance.
double rms_contrast(const ImageTensor& t);

struct MetricReport {
    double re = 0.0;
    std::optional<double> psnr;  // present when a ground truth was supplied
    double rms_contrast_in = 0.0;
    double rms_contrast_out = 0.0;
};

MetricReport evaluate(const ImageTensor& original, const ImageTensor& enhanced,
                      const ImageTensor* truth = nullptr, double contrast_threshold = kDefaultEdgeContrast);

/// Single-line JSON document. An infinite PSNR is written as "identical".
std::string to_json(const MetricReport& report);
/// Aligned `key  value` lines for terminals.
std::string to_table(const MetricReport& report);

}  // namespace desmoke
