#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fcb {

/// Fixed-length vector over GF(2), packed into 64-bit words.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& other) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    bool any() const noexcept {
        for (auto w : words_)
            if (w != 0) return true;
        return false;
    }

    std::size_t count() const noexcept {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// Number of positions set in both vectors.
    std::size_t count_common(const BitVector& other) const noexcept {
        std::size_t n = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            n += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
        return n;
    }

    bool intersects(const BitVector& other) const noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & other.words_[w]) return true;
        return false;
    }

    /// Index of the lowest set bit, or size() when empty.
    std::size_t lowest() const noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return size_;
    }

    bool operator==(const BitVector&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

inline BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
}

}  // namespace fcb
