#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "desmoke/tensor.hpp"

namespace desmoke {

enum class ImageFormat { Png, Ppm };

struct ImageFileRef {
    std::filesystem::path path;
    ImageFormat format;

    /// Infers the format from the extension (.png, .ppm, .pnm); throws
    /// IoError(UnsupportedFormat) for anything else.
    static ImageFileRef from_path(const std::filesystem::path& path);
};

/// Reads an 8-bit image and maps bytes by x / 255. Grayscale is replicated
/// to three channels; an alpha channel is dropped with a warning on stderr.
/// Throws IoError (NotFound, DecodeFailure, UnsupportedBitDepth).
ImageTensor load_image(const ImageFileRef& ref);
ImageTensor load_image(const std::filesystem::path& path);

/// Writes 8-bit RGB. Values are clamped to [0, 1] and quantised as
/// floor(x * 255 + 0.5). Throws IoError(WriteFailure).
void save_image(const ImageTensor& t, const ImageFileRef& ref);
void save_image(const ImageTensor& t, const std::filesystem::path& path);

/// floor(clamp(x, 0, 1) * 255 + 0.5)
std::uint8_t quantize(double x) noexcept;

/// Interleaved RGB bytes of the tensor, in storage order.
std::vector<std::uint8_t> to_bytes(const ImageTensor& t);
ImageTensor from_bytes(std::size_t height, std::size_t width, const std::vector<std::uint8_t>& rgb);

}  // namespace desmoke
