#include "rngwb/bitstring.hpp"

#include <bit>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rngwb {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::filesystem::path sidecar_path(const std::filesystem::path& payload) {
    std::filesystem::path p = payload;
    p += ".meta.json";
    return p;
}

std::optional<std::size_t> read_sidecar_bits(const std::filesystem::path& payload) {
    const auto meta = sidecar_path(payload);
    std::ifstream in(meta);
    if (!in) return std::nullopt;
    nlohmann::json j;
    in >> j;
    if (!j.contains("bits")) throw std::runtime_error("sidecar missing 'bits': " + meta.string());
    return j.at("bits").get<std::size_t>();
}

}  // namespace

StreamFormat parse_stream_format(std::string_view name) {
    if (name == "raw" || name == "raw-binary") return StreamFormat::RawBinary;
    if (name == "ascii01") return StreamFormat::Ascii01;
    if (name == "hex") return StreamFormat::Hex;
    throw std::invalid_argument("unknown stream format: " + std::string(name));
}

std::string_view stream_format_name(StreamFormat f) {
    switch (f) {
        case StreamFormat::RawBinary: return "raw-binary";
        case StreamFormat::Ascii01: return "ascii01";
        case StreamFormat::Hex: return "hex";
    }
    return "?";
}

BitString BitString::from_bits(std::initializer_list<int> bits) {
    BitString s;
    for (int b : bits) s.push_back(b);
    return s;
}

BitString BitString::from_string01(std::string_view str) {
    BitString s;
    for (char c : str) {
        if (c == '0' || c == '1')
            s.push_back(c - '0');
        else
            throw std::invalid_argument(std::string("invalid bit character '") + c + "'");
    }
    return s;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> data, std::size_t bit_count) {
    if (bit_count > data.size() * 8)
        throw std::invalid_argument("bit_count exceeds available bytes");
    BitString s;
    s.n_ = bit_count;
    s.bytes_.assign(data.begin(), data.begin() + static_cast<std::ptrdiff_t>((bit_count + 7) / 8));
    if (bit_count % 8 != 0 && !s.bytes_.empty())
        s.bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - bit_count % 8));
    return s;
}

BitString BitString::from_hex(std::string_view hex) {
    BitString s;
    s.bytes_.reserve(hex.size() / 2 + 1);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const int d = hex_digit(hex[i]);
        if (d < 0)
            throw std::invalid_argument("invalid hex character at offset " + std::to_string(i));
        for (int b = 3; b >= 0; --b) s.push_back((d >> b) & 1);
    }
    return s;
}

void BitString::push_back(int v) {
    if (n_ % 8 == 0) bytes_.push_back(0);
    if (v) bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - (n_ & 7)));
    ++n_;
}

void BitString::append(const BitString& other) {
    if (n_ % 8 == 0) {
        bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
        n_ += other.n_;
        return;
    }
    for (std::size_t i = 0; i < other.n_; ++i) push_back(other.bit(i));
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
    if (pos + len > n_) throw std::out_of_range("slice out of range");
    if (pos % 8 == 0) {
        return from_bytes(std::span(bytes_).subspan(pos / 8), len);
    }
    BitString s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(bit(pos + i));
    return s;
}

std::size_t BitString::count_ones() const noexcept {
    std::size_t c = 0;
    for (std::uint8_t b : bytes_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
}

BitString BitString::operator^(const BitString& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("xor length mismatch");
    BitString out = *this;
    for (std::size_t i = 0; i < bytes_.size(); ++i) out.bytes_[i] ^= rhs.bytes_[i];
    return out;
}

std::string BitString::to_string01() const {
    std::string s;
    s.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) s.push_back(static_cast<char>('0' + bit(i)));
    return s;
}

std::string BitString::to_hex() const {
    static const char* digits = "0123456789ABCDEF";
    const std::size_t nibbles = (n_ + 3) / 4;
    std::string s;
    s.reserve(nibbles);
    for (std::size_t i = 0; i < nibbles; ++i) {
        const std::uint8_t byte = bytes_[i / 2];
        const int val = (i % 2 == 0) ? (byte >> 4) : (byte & 0x0F);
        s.push_back(digits[val]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Streaming file input

struct BitReader::Impl {
    std::ifstream in;
    StreamFormat format;
    std::vector<char> buf;
    std::size_t buf_pos = 0;
    std::size_t buf_len = 0;
    std::size_t consumed_in_file = 0;  // bytes/chars consumed, for error offsets
    std::optional<std::size_t> bits_remaining;

    // Partial decode state: bits already extracted from the current raw byte
    // or hex nibble pair.
    std::uint8_t pending = 0;
    int pending_bits = 0;

    bool refill() {
        if (buf_pos < buf_len) return true;
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf_len = static_cast<std::size_t>(in.gcount());
        buf_pos = 0;
        return buf_len > 0;
    }
};

BitReader::BitReader(const std::filesystem::path& path, StreamFormat format,
                     std::optional<std::size_t> bit_limit)
    : impl_(std::make_unique<Impl>()) {
    impl_->in.open(path, std::ios::binary);
    if (!impl_->in) throw std::runtime_error("cannot open file: " + path.string());
    impl_->format = format;
    impl_->buf.resize(kBufferBytes);
    impl_->bits_remaining = bit_limit;
}

BitReader::~BitReader() = default;

BitString BitReader::read(std::size_t max_bits) {
    BitString out;
    Impl& st = *impl_;
    while (out.size() < max_bits) {
        if (st.bits_remaining && *st.bits_remaining == 0) {
            exhausted_ = true;
            break;
        }
        if (st.pending_bits > 0) {
            const int b = (st.pending >> (st.pending_bits - 1)) & 1;
            --st.pending_bits;
            out.push_back(b);
            if (st.bits_remaining) --*st.bits_remaining;
            continue;
        }
        if (!st.refill()) {
            exhausted_ = true;
            break;
        }
        const char c = st.buf[st.buf_pos++];
        const std::size_t offset = st.consumed_in_file++;
        switch (st.format) {
            case StreamFormat::RawBinary:
                st.pending = static_cast<std::uint8_t>(c);
                st.pending_bits = 8;
                break;
            case StreamFormat::Ascii01:
                if (c == '0' || c == '1') {
                    st.pending = static_cast<std::uint8_t>(c - '0');
                    st.pending_bits = 1;
                } else if (!std::isspace(static_cast<unsigned char>(c))) {
                    throw std::runtime_error("malformed ascii01 character at byte offset " +
                                             std::to_string(offset));
                }
                break;
            case StreamFormat::Hex: {
                if (std::isspace(static_cast<unsigned char>(c))) break;
                const int d = hex_digit(c);
                if (d < 0)
                    throw std::runtime_error("malformed hex character at byte offset " +
                                             std::to_string(offset));
                st.pending = static_cast<std::uint8_t>(d);
                st.pending_bits = 4;
                break;
            }
        }
    }
    return out;
}

BitString read_bits(const std::filesystem::path& path, StreamFormat format,
                    std::optional<std::size_t> max_bits) {
    if (!std::filesystem::exists(path))
        throw std::runtime_error("missing file: " + path.string());

    std::optional<std::size_t> limit;
    if (format == StreamFormat::RawBinary || format == StreamFormat::Hex)
        limit = read_sidecar_bits(path);

    if (format == StreamFormat::Hex) {
        // Character count (ignoring whitespace) must be even.
        std::ifstream probe(path, std::ios::binary);
        std::size_t hex_chars = 0;
        char c;
        while (probe.get(c))
            if (!std::isspace(static_cast<unsigned char>(c))) ++hex_chars;
        if (hex_chars % 2 != 0)
            throw std::runtime_error("hex input has odd character count: " + path.string());
    }

    BitReader reader(path, format, limit);
    BitString out;
    const std::size_t chunk = 1 << 20;
    while (!reader.exhausted()) {
        std::size_t want = chunk;
        if (max_bits) {
            if (out.size() >= *max_bits) break;
            want = std::min(want, *max_bits - out.size());
        }
        BitString part = reader.read(want);
        if (part.empty()) break;
        out.append(part);
    }
    if (out.empty()) throw std::runtime_error("zero-length input: " + path.string());
    return out;
}

void write_bits(const BitString& s, const std::filesystem::path& path, StreamFormat format) {
    if (s.empty()) throw std::invalid_argument("refusing to write an empty bit string");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());

    bool need_sidecar = false;
    switch (format) {
        case StreamFormat::RawBinary: {
            const auto& bytes = s.bytes();
            out.write(reinterpret_cast<const char*>(bytes.data()),
                      static_cast<std::streamsize>(bytes.size()));
            need_sidecar = true;
            break;
        }
        case StreamFormat::Ascii01: {
            const std::string str = s.to_string01();
            out.write(str.data(), static_cast<std::streamsize>(str.size()));
            break;
        }
        case StreamFormat::Hex: {
            std::string str = s.to_hex();
            if (str.size() % 2 != 0) str.push_back('0');
            out.write(str.data(), static_cast<std::streamsize>(str.size()));
            need_sidecar = (s.size() % 8 != 0);
            break;
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
    out.close();

    if (need_sidecar) {
        nlohmann::json j;
        j["bits"] = s.size();
        j["format"] = stream_format_name(format);
        std::ofstream meta(sidecar_path(path), std::ios::trunc);
        meta << j.dump(2) << "\n";
        if (!meta) throw std::runtime_error("sidecar write failed: " + path.string());
    }
}

std::vector<BitString> split_blocks(const BitString& s, std::size_t block_len,
                                    std::size_t* discarded_bits) {
    if (block_len == 0) throw std::invalid_argument("block_len must be >= 1");
    const std::size_t count = s.size() / block_len;
    std::vector<BitString> blocks;
    blocks.reserve(count);
    for (std::size_t i = 0; i < count; ++i) blocks.push_back(s.slice(i * block_len, block_len));
    if (discarded_bits) *discarded_bits = s.size() - count * block_len;
    return blocks;
}

}  // namespace rngwb
