#include "stokeslab/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "stokeslab/error.hpp"
#include "stokeslab/fft.hpp"

namespace stokeslab {

namespace {

constexpr char kMagic[8] = {'S', 'F', 'L', 'D', '1', '\n', 0, 0};

template <class T>
void put(std::vector<unsigned char>& out, std::size_t at, T value) {
    static_assert(sizeof(T) == 8);
    std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
    for (int b = 0; b < 8; ++b) {
        out[at + static_cast<std::size_t>(b)] = static_cast<unsigned char>(bits >> (8 * b));
    }
}

template <class T>
T get(std::span<const unsigned char> in, std::size_t at) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
        bits |= static_cast<std::uint64_t>(in[at + static_cast<std::size_t>(b)]) << (8 * b);
    }
    return std::bit_cast<T>(bits);
}

std::vector<unsigned char> header_bytes(const FieldFileHeader& h) {
    std::vector<unsigned char> out(FieldFileHeader::kSize, 0);
    std::memcpy(out.data(), kMagic, sizeof(kMagic));
    put<std::int64_t>(out, 8, h.version);
    put<std::int64_t>(out, 16, h.grid.nx);
    put<std::int64_t>(out, 24, h.grid.ny);
    put<std::int64_t>(out, 32, h.grid.nz);
    put<double>(out, 40, h.grid.lx);
    put<double>(out, 48, h.grid.ly);
    put<double>(out, 56, h.grid.z_min);
    put<double>(out, 64, h.grid.z_max);
    put<std::int64_t>(out, 72, h.ncomp);
    put<std::int64_t>(out, 80, static_cast<std::int64_t>(h.storage));
    return out;
}

int checked_int(std::int64_t v, const char* name, std::size_t offset) {
    if (v < 1 || v > (1 << 24)) {
        throw FormatError(std::string("invalid header field ") + name + " = " + std::to_string(v), offset);
    }
    return static_cast<int>(v);
}

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open field file " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error("write failed for " + path.string());
    }
}

}  // namespace

std::uint64_t FieldFileHeader::payload_bytes() const noexcept {
    const std::uint64_t values = static_cast<std::uint64_t>(grid.size()) * static_cast<std::uint64_t>(ncomp);
    return values * (storage == Storage::spectral ? 16u : 8u);
}

std::vector<unsigned char> encode_field(const AnyField& any) {
    FieldFileHeader h;
    std::vector<unsigned char> out;
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            h.grid = f.grid();
            h.ncomp = f.ncomp();
            h.storage = std::is_same_v<F, SpectralField> ? Storage::spectral : Storage::physical;
            out = header_bytes(h);
            const std::size_t base = out.size();
            out.resize(base + h.payload_bytes());
            std::size_t at = base;
            for (const auto& v : f.data()) {
                if constexpr (std::is_same_v<F, SpectralField>) {
                    put<double>(out, at, v.real());
                    put<double>(out, at + 8, v.imag());
                    at += 16;
                } else {
                    put<double>(out, at, v);
                    at += 8;
                }
            }
        },
        any);
    return out;
}

LoadedField decode_field(std::span<const unsigned char> bytes) {
    if (bytes.size() < FieldFileHeader::kSize) {
        throw FormatError("truncated header", bytes.size());
    }
    if (std::memcmp(bytes.data(), kMagic, 6) != 0) {
        throw FormatError("bad magic", 0);
    }
    FieldFileHeader h;
    h.version = get<std::int64_t>(bytes, 8);
    if (h.version != FieldFileHeader::kVersion) {
        throw FormatError("version mismatch: file has " + std::to_string(h.version) + ", reader supports " +
                              std::to_string(FieldFileHeader::kVersion),
                          8);
    }
    h.grid.nx = checked_int(get<std::int64_t>(bytes, 16), "nx", 16);
    h.grid.ny = checked_int(get<std::int64_t>(bytes, 24), "ny", 24);
    h.grid.nz = checked_int(get<std::int64_t>(bytes, 32), "nz", 32);
    h.grid.lx = get<double>(bytes, 40);
    h.grid.ly = get<double>(bytes, 48);
    h.grid.z_min = get<double>(bytes, 56);
    h.grid.z_max = get<double>(bytes, 64);
    try {
        validate(h.grid);
    } catch (const ValidationError& e) {
        throw FormatError(std::string("invalid grid in header: ") + e.what(), 16);
    }
    h.ncomp = checked_int(get<std::int64_t>(bytes, 72), "ncomp", 72);
    const auto flag = get<std::int64_t>(bytes, 80);
    if (flag != 0 && flag != 1) {
        throw FormatError("invalid storage flag " + std::to_string(flag), 80);
    }
    h.storage = static_cast<Storage>(flag);

    const std::uint64_t expected = FieldFileHeader::kSize + h.payload_bytes();
    if (bytes.size() < expected) {
        throw FormatError("truncated payload: expected " + std::to_string(h.payload_bytes()) + " bytes, found " +
                              std::to_string(bytes.size() - FieldFileHeader::kSize),
                          bytes.size());
    }
    if (bytes.size() > expected) {
        throw FormatError("trailing bytes after payload", expected);
    }

    std::size_t at = FieldFileHeader::kSize;
    const int ncomp = static_cast<int>(h.ncomp);
    if (h.storage == Storage::spectral) {
        SpectralField f(h.grid, ncomp);
        for (auto& v : f.data()) {
            v = cplx(get<double>(bytes, at), get<double>(bytes, at + 8));
            at += 16;
        }
        return {h, std::move(f)};
    }
    PhysicalField f(h.grid, ncomp);
    for (auto& v : f.data()) {
        v = get<double>(bytes, at);
        at += 8;
    }
    return {h, std::move(f)};
}

void write_field(const std::filesystem::path& path, const SpectralField& f) { write_all(path, encode_field(f)); }

void write_field(const std::filesystem::path& path, const PhysicalField& f) { write_all(path, encode_field(f)); }

LoadedField read_field(const std::filesystem::path& path) {
    const auto bytes = read_all(path);
    return decode_field(bytes);
}

SpectralField read_spectral(const std::filesystem::path& path) {
    auto loaded = read_field(path);
    if (auto* s = std::get_if<SpectralField>(&loaded.field)) {
        return std::move(*s);
    }
    return forward(std::get<PhysicalField>(loaded.field));
}

}  // namespace stokeslab
