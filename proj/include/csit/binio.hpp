#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "csit/errors.hpp"

namespace csit {

// Little-endian primitive encode/decode for the binary file formats.
// Byte order is spelled out explicitly so files are identical on any host.
class BinWriter {
public:
    explicit BinWriter(std::ostream& out) : out_(out) {}

    void u8(std::uint8_t v) { raw(&v, 1); }

    void u16(std::uint16_t v) {
        std::uint8_t b[2] = {std::uint8_t(v & 0xff), std::uint8_t(v >> 8)};
        raw(b, 2);
    }

    void u32(std::uint32_t v) {
        std::uint8_t b[4];
        for (int i = 0; i < 4; ++i) b[i] = std::uint8_t((v >> (8 * i)) & 0xff);
        raw(b, 4);
    }

    void u64(std::uint64_t v) {
        std::uint8_t b[8];
        for (int i = 0; i < 8; ++i) b[i] = std::uint8_t((v >> (8 * i)) & 0xff);
        raw(b, 8);
    }

    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    void magic(const char (&m)[5]) { raw(m, 4); }

    void bytes(const void* data, std::size_t n) { raw(data, n); }

private:
    void raw(const void* data, std::size_t n) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
        if (!out_) throw CorruptError("write failed");
    }

    std::ostream& out_;
};

class BinReader {
public:
    explicit BinReader(std::istream& in) : in_(in) {}

    std::uint8_t u8() {
        std::uint8_t v;
        raw(&v, 1);
        return v;
    }

    std::uint16_t u16() {
        std::uint8_t b[2];
        raw(b, 2);
        return std::uint16_t(b[0] | (std::uint16_t(b[1]) << 8));
    }

    std::uint32_t u32() {
        std::uint8_t b[4];
        raw(b, 4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        std::uint8_t b[8];
        raw(b, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
        return v;
    }

    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }

    // Reads 4 bytes and checks them against the expected file magic.
    void expect_magic(const char (&m)[5], const std::string& what) {
        char got[4];
        raw(got, 4);
        if (got[0] != m[0] || got[1] != m[1] || got[2] != m[2] || got[3] != m[3])
            throw FormatError("not a " + what + " file (bad magic)");
    }

    void bytes(void* data, std::size_t n) { raw(data, n); }

private:
    void raw(void* data, std::size_t n) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
        if (in_.gcount() != static_cast<std::streamsize>(n))
            throw CorruptError("unexpected end of file");
    }

    std::istream& in_;
};

} // namespace csit
