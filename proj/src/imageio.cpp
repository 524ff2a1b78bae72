#include "desmoke/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <png.h>

namespace desmoke {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return s;
}

void require_exists(const fs::path& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw IoError(IoError::Kind::NotFound, "no such file: " + path.string());
    }
}

// --- PPM / PGM (binary) ---------------------------------------------------

class HeaderReader {
public:
    explicit HeaderReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    // Next whitespace-delimited token, skipping '#' comments.
    std::string token() {
        skip_space_and_comments();
        std::string tok;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) tok.push_back(static_cast<char>(bytes_[pos_++]));
        return tok;
    }

    std::size_t number(const fs::path& path) {
        const std::string tok = token();
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char ch) { return std::isdigit(ch); }) ||
            tok.size() > 9) {
            throw IoError(IoError::Kind::DecodeFailure, "malformed PNM header in " + path.string());
        }
        return std::stoul(tok);
    }

    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_offset(const fs::path& path) {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw IoError(IoError::Kind::DecodeFailure, "malformed PNM header in " + path.string());
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

ImageTensor load_pnm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoError::Kind::NotFound, "cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    HeaderReader header(bytes);
    const std::string magic = header.token();
    if (magic != "P6" && magic != "P5") {
        throw IoError(IoError::Kind::DecodeFailure, "not a binary PPM/PGM file: " + path.string());
    }
    const std::size_t width = header.number(path);
    const std::size_t height = header.number(path);
    const std::size_t maxval = header.number(path);
    if (maxval == 0) throw IoError(IoError::Kind::DecodeFailure, "invalid maxval in " + path.string());
    if (maxval > 255) {
        throw IoError(IoError::Kind::UnsupportedBitDepth, "only 8-bit PNM is supported: " + path.string());
    }
    const std::size_t offset = header.raster_offset(path);
    const std::size_t samples = magic == "P6" ? 3 : 1;
    if (width == 0 || height == 0 || bytes.size() - offset < width * height * samples) {
        throw IoError(IoError::Kind::DecodeFailure, "truncated PNM raster in " + path.string());
    }
    if (height < 2 || width < 2) {
        throw DimensionError("image " + path.string() + " is smaller than 2x2");
    }

    ImageTensor t(height, width);
    const auto max_level = static_cast<double>(maxval);
    for (std::size_t p = 0; p < width * height; ++p) {
        for (std::size_t c = 0; c < kChannels; ++c) {
            const std::uint8_t byte = bytes[offset + p * samples + (samples == 3 ? c : 0)];
            t[p * kChannels + c] = std::min(static_cast<double>(byte) / max_level, 1.0);
        }
    }
    return t;
}

void save_ppm(const ImageTensor& t, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoError::Kind::WriteFailure, "cannot write " + path.string());
    out << "P6\n" << t.width() << ' ' << t.height() << "\n255\n";
    const std::vector<std::uint8_t> bytes = to_bytes(t);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(IoError::Kind::WriteFailure, "write failed for " + path.string());
}

// --- PNG --------------------------------------------------------------------

struct PngImage {
    png_image image{};
    PngImage() {
        image.version = PNG_IMAGE_VERSION;
    }
    ~PngImage() { png_image_free(&image); }
    PngImage(const PngImage&) = delete;
    PngImage& operator=(const PngImage&) = delete;
};

ImageTensor load_png(const fs::path& path) {
    PngImage png;
    if (!png_image_begin_read_from_file(&png.image, path.string().c_str())) {
        throw IoError(IoError::Kind::DecodeFailure,
                      "cannot decode PNG " + path.string() + ": " + png.image.message);
    }
    if (png.image.format & PNG_FORMAT_FLAG_LINEAR) {
        throw IoError(IoError::Kind::UnsupportedBitDepth, "16-bit PNG is not supported: " + path.string());
    }
    const bool has_alpha = (png.image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    if (has_alpha) {
        std::clog << "warning: dropping alpha channel of " << path.string() << '\n';
    }
    png.image.format = has_alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
    const std::size_t samples = has_alpha ? 4 : 3;
    const std::size_t width = png.image.width;
    const std::size_t height = png.image.height;
    if (height < 2 || width < 2) {
        throw DimensionError("image " + path.string() + " is smaller than 2x2");
    }
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png.image));
    if (!png_image_finish_read(&png.image, nullptr, buffer.data(), 0, nullptr)) {
        throw IoError(IoError::Kind::DecodeFailure,
                      "cannot decode PNG " + path.string() + ": " + png.image.message);
    }

    ImageTensor t(height, width);
    for (std::size_t p = 0; p < width * height; ++p) {
        for (std::size_t c = 0; c < kChannels; ++c) {
            t[p * kChannels + c] = static_cast<double>(buffer[p * samples + c]) / 255.0;
        }
    }
    return t;
}

void save_png(const ImageTensor& t, const fs::path& path) {
    PngImage png;
    png.image.width = static_cast<png_uint_32>(t.width());
    png.image.height = static_cast<png_uint_32>(t.height());
    png.image.format = PNG_FORMAT_RGB;
    const std::vector<std::uint8_t> bytes = to_bytes(t);
    if (!png_image_write_to_file(&png.image, path.string().c_str(), 0, bytes.data(), 0, nullptr)) {
        throw IoError(IoError::Kind::WriteFailure, "cannot write PNG " + path.string() + ": " + png.image.message);
    }
}

}  // namespace

ImageFileRef ImageFileRef::from_path(const fs::path& path) {
    const std::string ext = lower(path.extension().string());
    if (ext == ".png") return {path, ImageFormat::Png};
    if (ext == ".ppm" || ext == ".pnm" || ext == ".pgm") return {path, ImageFormat::Ppm};
    throw IoError(IoError::Kind::UnsupportedFormat, "unsupported image extension '" + ext + "' for " + path.string());
}

std::uint8_t quantize(double x) noexcept {
    const double clamped = std::clamp(x, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::floor(clamped * 255.0 + 0.5));
}

std::vector<std::uint8_t> to_bytes(const ImageTensor& t) {
    std::vector<std::uint8_t> bytes(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) bytes[i] = quantize(t[i]);
    return bytes;
}

ImageTensor from_bytes(std::size_t height, std::size_t width, const std::vector<std::uint8_t>& rgb) {
    if (rgb.size() != height * width * kChannels) throw ShapeMismatch("from_bytes: buffer size does not match shape");
    ImageTensor t(height, width);
    for (std::size_t i = 0; i < rgb.size(); ++i) t[i] = static_cast<double>(rgb[i]) / 255.0;
    return t;
}

ImageTensor load_image(const ImageFileRef& ref) {
    require_exists(ref.path);
    return ref.format == ImageFormat::Png ? load_png(ref.path) : load_pnm(ref.path);
}

ImageTensor load_image(const fs::path& path) { return load_image(ImageFileRef::from_path(path)); }

void save_image(const ImageTensor& t, const ImageFileRef& ref) {
    if (ref.format == ImageFormat::Png) {
        save_png(t, ref.path);
    } else {
        save_ppm(t, ref.path);
    }
}

void save_image(const ImageTensor& t, const fs::path& path) { save_image(t, ImageFileRef::from_path(path)); }

}  // namespace desmoke
