#include "desmoke/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace desmoke {

namespace {

bool contrast_exceeds(double a, double b, double threshold) {
    const double sum = a + b;
    if (sum <= 0.0) return false;
    return std::abs(a - b) / sum > threshold;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::size_t EdgeMask::count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<double> luminance(const ImageTensor& t) {
    const std::size_t pixels = t.height() * t.width();
    std::vector<double> lum(pixels);
    for (std::size_t p = 0; p < pixels; ++p) {
        lum[p] = (t[p * kChannels] + t[p * kChannels + 1] + t[p * kChannels + 2]) / 3.0;
    }
    return lum;
}

EdgeMask visible_edges(const ImageTensor& t, double contrast_threshold) {
    if (!(contrast_threshold > 0.0 && contrast_threshold < 1.0)) {
        throw ParameterError("edge contrast threshold must lie in (0, 1)");
    }
    const std::size_t h = t.height();
    const std::size_t w = t.width();
    const std::vector<double> lum = luminance(t);
    EdgeMask mask{h, w, std::vector<std::uint8_t>(h * w, 0)};

    // Mark both pixels of every horizontal and vertical neighbour pair whose
    // contrast is above threshold; contrast is symmetric in the pair.
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double here = lum[y * w + x];
            if (x + 1 < w && contrast_exceeds(here, lum[y * w + x + 1], contrast_threshold)) {
                mask.bits[y * w + x] = 1;
                mask.bits[y * w + x + 1] = 1;
            }
            if (y + 1 < h && contrast_exceeds(here, lum[(y + 1) * w + x], contrast_threshold)) {
                mask.bits[y * w + x] = 1;
                mask.bits[(y + 1) * w + x] = 1;
            }
        }
    }
    return mask;
}

double re_metric(const ImageTensor& I, const ImageTensor& J, double contrast_threshold) {
    require_same_shape(I, J, "re_metric");
    const auto n_i = static_cast<double>(visible_edges(I, contrast_threshold).count());
    const auto n_j = static_cast<double>(visible_edges(J, contrast_threshold).count());
    return (n_j - n_i) / std::max(n_i, 1.0);
}

double mean_squared_error(const ImageTensor& a, const ImageTensor& b) {
    require_same_shape(a, b, "mean_squared_error");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double psnr(const ImageTensor& a, const ImageTensor& b) {
    const double mse = mean_squared_error(a, b);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

double rms_contrast(const ImageTensor& t) {
    const std::vector<double> lum = luminance(t);
    const double mean = std::accumulate(lum.begin(), lum.end(), 0.0) / static_cast<double>(lum.size());
    double acc = 0.0;
    for (double v : lum) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(lum.size()));
}

MetricReport evaluate(const ImageTensor& original, const ImageTensor& enhanced, const ImageTensor* truth,
                      double contrast_threshold) {
    MetricReport report;
    report.re = re_metric(original, enhanced, contrast_threshold);
    if (truth != nullptr) report.psnr = psnr(enhanced, *truth);
    report.rms_contrast_in = rms_contrast(original);
    report.rms_contrast_out = rms_contrast(enhanced);
    return report;
}

std::string to_json(const MetricReport& report) {
    nlohmann::ordered_json doc;
    doc["re"] = report.re;
    if (report.psnr) {
        if (std::isinf(*report.psnr)) {
            doc["psnr"] = "identical";
        } else {
            doc["psnr"] = *report.psnr;
        }
    } else {
        doc["psnr"] = nullptr;
    }
    doc["rms_contrast_in"] = report.rms_contrast_in;
    doc["rms_contrast_out"] = report.rms_contrast_out;
    return doc.dump();
}

std::string to_table(const MetricReport& report) {
    std::string out;
    auto row = [&out](const char* key, const std::string& value) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-18s %s\n", key, value.c_str());
        out += buf;
    };
    row("re", format_number(report.re));
    if (report.psnr) {
        row("psnr_db", std::isinf(*report.psnr) ? "identical" : format_number(*report.psnr));
    } else {
        row("psnr_db", "n/a");
    }
    row("rms_contrast_in", format_number(report.rms_contrast_in));
    row("rms_contrast_out", format_number(report.rms_contrast_out));
    return out;
}

}  // namespace desmoke
