#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qarith {

// Fixed-width bit vector, bit 0 = least significant. Text form is MSB-first.
// This module is the classical ground truth every circuit is checked against,
// so the arithmetic below follows the carry/borrow recurrences literally
// instead of delegating to machine integers.
class BitString {
  public:
    BitString() = default;

    explicit BitString(size_t width) : bits_(width, 0) {
        if (width == 0) throw std::invalid_argument("BitString width must be >= 1");
    }

    static BitString from_uint(uint64_t value, size_t width) {
        if (width == 0 || width > 64) throw std::invalid_argument("width out of range [1,64]");
        if (width < 64 && value >> width) throw std::invalid_argument("value does not fit in width");
        BitString s(width);
        for (size_t i = 0; i < width; ++i) s.bits_[i] = (value >> i) & 1;
        return s;
    }

    // Accepts MSB-first digits with optional "0b" prefix, e.g. "0b101".
    static BitString parse(const std::string& text) {
        size_t start = 0;
        if (text.rfind("0b", 0) == 0) start = 2;
        if (start >= text.size()) throw std::invalid_argument("empty bit string");
        BitString s(text.size() - start);
        for (size_t i = start; i < text.size(); ++i) {
            char c = text[i];
            if (c != '0' && c != '1') throw std::invalid_argument("bad bit character");
            s.bits_[text.size() - 1 - i] = c - '0';
        }
        return s;
    }

    size_t width() const { return bits_.size(); }

    int bit(size_t i) const { return bits_.at(i); }

    void set_bit(size_t i, int v) {
        if (v != 0 && v != 1) throw std::invalid_argument("bit must be 0 or 1");
        bits_.at(i) = static_cast<uint8_t>(v);
    }

    uint64_t to_uint() const {
        if (width() > 64) throw std::logic_error("width > 64");
        uint64_t v = 0;
        for (size_t i = 0; i < width(); ++i) v |= static_cast<uint64_t>(bits_[i]) << i;
        return v;
    }

    std::string str() const {
        std::string out(width(), '0');
        for (size_t i = 0; i < width(); ++i) out[width() - 1 - i] = char('0' + bits_[i]);
        return out;
    }

    int msb() const { return bits_.back(); }

    BitString zero_extended(size_t new_width) const {
        if (new_width < width()) throw std::invalid_argument("cannot shrink");
        BitString s(new_width);
        for (size_t i = 0; i < width(); ++i) s.bits_[i] = bits_[i];
        return s;
    }

    BitString truncated(size_t new_width) const {
        if (new_width > width()) throw std::invalid_argument("cannot grow");
        BitString s(new_width);
        for (size_t i = 0; i < new_width; ++i) s.bits_[i] = bits_[i];
        return s;
    }

    bool operator==(const BitString& o) const { return bits_ == o.bits_; }
    bool operator!=(const BitString& o) const { return !(*this == o); }

  private:
    std::vector<uint8_t> bits_;
};

inline int maj(int a, int b, int c) { return (a & b) ^ (a & c) ^ (b & c); }

// x + y on equal widths n, result width n+1 built from the carry recurrence
// c_0 = 0, c_{i+1} = maj(x_i, y_i, c_i).
inline BitString add_bits(const BitString& x, const BitString& y) {
    if (x.width() != y.width()) throw std::invalid_argument("add_bits: width mismatch");
    const size_t n = x.width();
    BitString sum(n + 1);
    int carry = 0;
    for (size_t i = 0; i < n; ++i) {
        sum.set_bit(i, x.bit(i) ^ y.bit(i) ^ carry);
        carry = maj(x.bit(i), y.bit(i), carry);
    }
    sum.set_bit(n, carry);
    return sum;
}

inline BitString ones_complement(const BitString& x) {
    BitString out(x.width());
    for (size_t i = 0; i < x.width(); ++i) out.set_bit(i, x.bit(i) ^ 1);
    return out;
}

// Flip-then-add-one, truncated back to width n.
inline BitString twos_complement(const BitString& x) {
    BitString one(x.width());
    one.set_bit(0, 1);
    return add_bits(ones_complement(x), one).truncated(x.width());
}

// x - y on equal widths n, result width n+1 from the borrow recurrence
// b_0 = 0, b_{i+1} = maj(x_i ^ 1, y_i, b_i). Bit n is the sign bit: the
// result is the signed difference in (n+1)-bit two's complement.
inline BitString sub_bits(const BitString& x, const BitString& y) {
    if (x.width() != y.width()) throw std::invalid_argument("sub_bits: width mismatch");
    const size_t n = x.width();
    BitString diff(n + 1);
    int borrow = 0;
    for (size_t i = 0; i < n; ++i) {
        diff.set_bit(i, x.bit(i) ^ y.bit(i) ^ borrow);
        borrow = maj(x.bit(i) ^ 1, y.bit(i), borrow);
    }
    diff.set_bit(n, borrow);
    return diff;
}

// 1 iff x < y (unsigned); equals the sign bit of x - y.
inline int compare_bits(const BitString& x, const BitString& y) {
    return sub_bits(x, y).msb();
}

inline size_t hamming_weight(const BitString& x) {
    size_t w = 0;
    for (size_t i = 0; i < x.width(); ++i) w += static_cast<size_t>(x.bit(i));
    return w;
}

inline size_t hamming_weight(uint64_t v) {
    size_t w = 0;
    while (v) {
        w += v & 1;
        v >>= 1;
    }
    return w;
}

// Signed integer in [-2^(w-1), 2^(w-1)-1] with its two's-complement encoding.
struct SignedValue {
    int64_t value = 0;
    size_t width = 1;

    static SignedValue decode(const BitString& s) {
        int64_t v = static_cast<int64_t>(s.to_uint());
        if (s.msb()) v -= int64_t(1) << s.width();
        return SignedValue{v, s.width()};
    }

    BitString encode() const {
        const int64_t lo = -(int64_t(1) << (width - 1));
        const int64_t hi = (int64_t(1) << (width - 1)) - 1;
        if (value < lo || value > hi) throw std::invalid_argument("signed value out of range");
        uint64_t u = static_cast<uint64_t>(value) & ((width == 64) ? ~0ULL : ((1ULL << width) - 1));
        return BitString::from_uint(u, width);
    }
};

}  // namespace qarith
