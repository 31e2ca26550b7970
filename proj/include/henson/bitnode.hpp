#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace henson {

// A finite 0/1 sequence, packed 64 bits per word. The empty sequence is a
// valid node (it is the root of every tree here).
class BitNode {
public:
    BitNode() = default;

    static BitNode zeros(std::size_t n) {
        BitNode b;
        b.len_ = n;
        b.words_.assign((n + 63) / 64, 0);
        return b;
    }

    static BitNode from_string(const std::string& s) {
        BitNode b = zeros(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == '1') b.set(i);
        return b;
    }

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool bit(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool v = true) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }

    void push_back(bool v) {
        if ((len_ & 63) == 0) words_.push_back(0);
        ++len_;
        if (v) set(len_ - 1);
    }

    BitNode extended(bool v) const {
        BitNode b = *this;
        b.push_back(v);
        return b;
    }

    // Extend with zeros to length n, n >= size().
    BitNode zero_extended(std::size_t n) const {
        BitNode b = *this;
        b.len_ = n;
        b.words_.resize((n + 63) / 64, 0);
        return b;
    }

    BitNode prefix(std::size_t n) const {
        BitNode b;
        b.len_ = n;
        b.words_.assign(words_.begin(), words_.begin() + (n + 63) / 64);
        std::size_t tail = n & 63;
        if (tail != 0 && !b.words_.empty()) b.words_.back() &= (uint64_t(1) << tail) - 1;
        return b;
    }

    bool is_prefix_of(const BitNode& o) const {
        if (len_ > o.len_) return false;
        std::size_t full = len_ >> 6, tail = len_ & 63;
        for (std::size_t w = 0; w < full; ++w)
            if (words_[w] != o.words_[w]) return false;
        if (tail != 0) {
            uint64_t m = (uint64_t(1) << tail) - 1;
            if ((words_[full] & m) != (o.words_[full] & m)) return false;
        }
        return true;
    }

    // Longest common prefix (the meet s ∧ t).
    BitNode meet(const BitNode& o) const {
        std::size_t n = std::min(len_, o.len_);
        std::size_t agree = n;
        for (std::size_t w = 0; w * 64 < n; ++w) {
            uint64_t diff = words_[w] ^ o.words_[w];
            if (w * 64 + 64 > n) {
                std::size_t tail = n & 63;
                if (tail != 0) diff &= (uint64_t(1) << tail) - 1;
            }
            if (diff != 0) {
                agree = w * 64 + std::countr_zero(diff);
                break;
            }
        }
        return prefix(std::min(agree, n));
    }

    // True iff the sequence contains no 1, i.e. lies in 0^{<ω}.
    bool all_zero() const {
        for (uint64_t w : words_)
            if (w != 0) return false;
        return true;
    }

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            uint64_t x = words_[w];
            while (x != 0) {
                out.push_back(w * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
        return out;
    }

    // Least ℓ < min(|s|,|t|) with s(ℓ)=t(ℓ)=1, if any.
    std::optional<std::size_t> first_joint_one(const BitNode& o) const {
        std::size_t n = std::min(len_, o.len_);
        for (std::size_t w = 0; w * 64 < n; ++w) {
            uint64_t x = words_[w] & o.words_[w];
            if (w * 64 + 64 > n) {
                std::size_t tail = n & 63;
                if (tail != 0) x &= (uint64_t(1) << tail) - 1;
            }
            if (x != 0) return w * 64 + std::countr_zero(x);
        }
        return std::nullopt;
    }

    bool operator==(const BitNode& o) const {
        return len_ == o.len_ && words_ == o.words_;
    }
    bool operator!=(const BitNode& o) const { return !(*this == o); }

    // Total order extending lexicographic order on incomparable nodes
    // (first differing bit decides; a proper prefix sorts first).
    bool operator<(const BitNode& o) const {
        std::size_t n = std::min(len_, o.len_);
        for (std::size_t i = 0; i < n; ++i) {
            bool a = bit(i), b = o.bit(i);
            if (a != b) return !a;
        }
        return len_ < o.len_;
    }

    std::string to_string() const {
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i)
            if (bit(i)) s[i] = '1';
        return s;
    }

private:
    std::vector<uint64_t> words_;
    std::size_t len_ = 0;
};

inline bool lex_less(const BitNode& a, const BitNode& b) { return a < b; }

} // namespace henson
