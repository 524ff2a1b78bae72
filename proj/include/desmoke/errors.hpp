#pragma once

#include <stdexcept>
#include <string>

namespace desmoke {

// Raised when a grid is smaller than the difference operators can handle.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ShapeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// File-level failures. `kind` lets the CLI map them onto exit codes and
// messages without string matching.
class IoError : public std::runtime_error {
public:
    enum class Kind { NotFound, DecodeFailure, UnsupportedBitDepth, UnsupportedFormat, WriteFailure };

    IoError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace desmoke
