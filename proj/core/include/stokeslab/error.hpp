#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stokeslab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid construction parameters (grid, ladder, configuration).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Fields whose dimensions or grids disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Out-of-domain numeric parameter (negative time, non-positive rate, bad exponent).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Grid too small for the requested stencil.
class GridError : public Error {
public:
    using Error::Error;
};

/// Dyadic block index or block range outside what the ladder resolves.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Grid that cannot host enough dyadic blocks.
class LadderError : public Error {
public:
    using Error::Error;
};

/// Index tuple or field violating the hypotheses of an estimate.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed field file. Carries the byte offset at which decoding failed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    [[nodiscard]] std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

}  // namespace stokeslab
