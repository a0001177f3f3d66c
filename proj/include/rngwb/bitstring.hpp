#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rngwb {

/// On-disk encodings understood by read_bits / write_bits.
enum class StreamFormat { RawBinary, Ascii01, Hex };

StreamFormat parse_stream_format(std::string_view name);
std::string_view stream_format_name(StreamFormat f);

/// Packed bit sequence with an explicit length in bits.
///
/// Bit i of the stream is bit (i mod 8), counted from the most significant
/// position, of byte floor(i / 8). Pad bits in the final byte are kept zero
/// so byte-level views (checksums, file dumps) are deterministic.
/// Instances are plain values; once built they can be shared freely across
/// threads.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n) : bytes_((n + 7) / 8, 0), n_(n) {}

    static BitString from_bits(std::initializer_list<int> bits);
    static BitString from_string01(std::string_view s);
    static BitString from_bytes(std::span<const std::uint8_t> data, std::size_t bit_count);
    static BitString from_hex(std::string_view hex);

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    int bit(std::size_t i) const {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
    }
    void set_bit(std::size_t i, int v) {
        const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (i & 7)));
        if (v)
            bytes_[i >> 3] |= mask;
        else
            bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
    }

    void push_back(int v);
    void append(const BitString& other);
    BitString slice(std::size_t pos, std::size_t len) const;

    std::size_t count_ones() const noexcept;
    std::size_t count_zeros() const noexcept { return n_ - count_ones(); }

    /// XOR with a string of identical length.
    BitString operator^(const BitString& rhs) const;

    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

    std::string to_string01() const;
    /// Uppercase hex; the last nibble, if partial, is zero-padded.
    std::string to_hex() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bytes_;  // MSB-first packing, pad bits zero
    std::size_t n_ = 0;
};

/// Streaming bit reader over a file. Uses a fixed-size internal buffer so
/// memory stays bounded regardless of file size. Single consumer.
class BitReader {
public:
    static constexpr std::size_t kBufferBytes = 64 * 1024;

    BitReader(const std::filesystem::path& path, StreamFormat format,
              std::optional<std::size_t> bit_limit = {});
    ~BitReader();
    BitReader(const BitReader&) = delete;
    BitReader& operator=(const BitReader&) = delete;

    /// Reads up to max_bits; returns fewer only at end of input.
    BitString read(std::size_t max_bits);
    bool exhausted() const { return exhausted_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    bool exhausted_ = false;
};

/// Reads min(max_bits, available) bits from a file in stream order.
/// For RawBinary, a `<path>.meta.json` sidecar (if present) supplies the true
/// bit length of the payload; the same applies to Hex payloads whose length
/// is not a whole number of nibbles.
BitString read_bits(const std::filesystem::path& path, StreamFormat format,
                    std::optional<std::size_t> max_bits = {});

/// Writes the string in the given format. RawBinary always gets a sidecar
/// recording the exact bit count; Hex gets one only when the length is not a
/// multiple of four. The payload itself never carries a header.
void write_bits(const BitString& s, const std::filesystem::path& path, StreamFormat format);

/// Splits into floor(n / block_len) full blocks; the remainder tail is
/// discarded (never zero-padded) and its size reported via discarded_bits.
std::vector<BitString> split_blocks(const BitString& s, std::size_t block_len,
                                    std::size_t* discarded_bits = nullptr);

}  // namespace rngwb
