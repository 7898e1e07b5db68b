#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vacant {

// Fixed-universe vertex set backed by a bitset, with a cached cardinality.
class VertexSet {
public:
    VertexSet() : n_(0), count_(0) {}
    explicit VertexSet(int n) : n_(n), bits_((n + 63) / 64, 0), count_(0) {
        if (n < 0) throw std::invalid_argument("VertexSet: negative universe");
    }

    static VertexSet full(int n) {
        VertexSet s(n);
        for (int v = 0; v < n; ++v) s.bits_[v >> 6] |= 1ull << (v & 63);
        s.count_ = n;
        return s;
    }

    int universe() const { return n_; }
    int count() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(int v) const {
        check(v);
        return (bits_[v >> 6] >> (v & 63)) & 1ull;
    }

    void insert(int v) {
        check(v);
        std::uint64_t m = 1ull << (v & 63);
        if (!(bits_[v >> 6] & m)) {
            bits_[v >> 6] |= m;
            ++count_;
        }
    }

    void erase(int v) {
        check(v);
        std::uint64_t m = 1ull << (v & 63);
        if (bits_[v >> 6] & m) {
            bits_[v >> 6] &= ~m;
            --count_;
        }
    }

    VertexSet complement() const {
        VertexSet s(n_);
        for (std::size_t w = 0; w < bits_.size(); ++w) s.bits_[w] = ~bits_[w];
        if (n_ & 63) s.bits_.back() &= (1ull << (n_ & 63)) - 1;
        s.count_ = n_ - count_;
        return s;
    }

    bool is_subset_of(const VertexSet& other) const {
        if (other.n_ != n_) throw std::invalid_argument("VertexSet: universe mismatch");
        for (std::size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w] & ~other.bits_[w]) return false;
        return true;
    }

    bool operator==(const VertexSet& other) const {
        return n_ == other.n_ && bits_ == other.bits_;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count_);
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    template <class F>
    void for_each(F f) const {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t bits = bits_[w];
            while (bits) {
                int b = std::countr_zero(bits);
                f(static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    // Recomputes cardinality from the raw words; tests compare it to count().
    int recount() const {
        int c = 0;
        for (std::uint64_t w : bits_) c += std::popcount(w);
        return c;
    }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("VertexSet: vertex out of range");
    }

    int n_;
    std::vector<std::uint64_t> bits_;
    int count_;
};

}  // namespace vacant
