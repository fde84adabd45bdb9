#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>

#include "stokeslab/field.hpp"

namespace stokeslab {

enum class Storage : std::int64_t { physical = 0, spectral = 1 };

/// Fixed 128-byte header of an SFLD1 file.
///
/// Layout (little-endian): magic "SFLD1\n" padded with zeros to 8 bytes,
/// then i64 version, nx, ny, nz, f64 Lx, Ly, z_min, z_max, i64 ncomp,
/// i64 storage, zero padding up to byte 127.
struct FieldFileHeader {
    static constexpr std::int64_t kVersion = 1;
    static constexpr std::size_t kSize = 128;

    std::int64_t version = kVersion;
    SlabGrid grid{};
    std::int64_t ncomp = 0;
    Storage storage = Storage::spectral;

    /// Payload size in bytes implied by the header.
    [[nodiscard]] std::uint64_t payload_bytes() const noexcept;
};

using AnyField = std::variant<PhysicalField, SpectralField>;

struct LoadedField {
    FieldFileHeader header;
    AnyField field;
};

void write_field(const std::filesystem::path& path, const SpectralField& f);
void write_field(const std::filesystem::path& path, const PhysicalField& f);

/// Reads a field, throwing FormatError on bad magic, unsupported version,
/// invalid header values, truncated payload, or trailing bytes.
[[nodiscard]] LoadedField read_field(const std::filesystem::path& path);

/// Reads a field and returns it in spectral storage (forward-transforming
/// physical payloads).
[[nodiscard]] SpectralField read_spectral(const std::filesystem::path& path);

/// In-memory encode/decode used by the file functions.
[[nodiscard]] std::vector<unsigned char> encode_field(const AnyField& f);
[[nodiscard]] LoadedField decode_field(std::span<const unsigned char> bytes);

}  // namespace stokeslab
