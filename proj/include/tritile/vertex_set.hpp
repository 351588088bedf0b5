#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace tritile {

/// Fixed-universe bitset over vertex indices 0..universe-1.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe)
        : n_(universe), w_(static_cast<size_t>((universe + 63) / 64), 0) {}

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (auto& x : s.w_) x = ~uint64_t{0};
        s.trim();
        return s;
    }
    static VertexSet of(int universe, std::initializer_list<int> vs) {
        VertexSet s(universe);
        for (int v : vs) s.set(v);
        return s;
    }
    static VertexSet of(int universe, const std::vector<int>& vs) {
        VertexSet s(universe);
        for (int v : vs) s.set(v);
        return s;
    }

    int universe() const { return n_; }
    size_t words() const { return w_.size(); }
    const uint64_t* data() const { return w_.data(); }
    uint64_t* data() { return w_.data(); }

    bool test(int v) const { return (w_[v >> 6] >> (v & 63)) & 1u; }
    void set(int v) {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex index out of range");
        w_[v >> 6] |= uint64_t{1} << (v & 63);
    }
    void reset(int v) { w_[v >> 6] &= ~(uint64_t{1} << (v & 63)); }
    void clear() {
        for (auto& x : w_) x = 0;
    }

    int count() const {
        int c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    bool empty() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }
    bool any() const { return !empty(); }

    /// Lowest member or -1.
    int first() const { return next(-1); }
    /// Lowest member strictly greater than v, or -1.
    int next(int v) const {
        int i = v + 1;
        if (i >= n_) return -1;
        size_t wi = static_cast<size_t>(i >> 6);
        uint64_t x = w_[wi] & (~uint64_t{0} << (i & 63));
        while (true) {
            if (x) return static_cast<int>(wi * 64 + std::countr_zero(x));
            if (++wi >= w_.size()) return -1;
            x = w_[wi];
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t x = w_[i];
            while (x) {
                f(static_cast<int>(i * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(count()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    bool intersects(const VertexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    int intersect_count(const VertexSet& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }
    int intersect_count(const VertexSet& a, const VertexSet& b) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & a.w_[i] & b.w_[i]);
        return c;
    }
    bool subset_of(const VertexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    VertexSet& operator&=(const VertexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    /// Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    VertexSet complement() const {
        VertexSet s(*this);
        for (auto& x : s.w_) x = ~x;
        s.trim();
        return s;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace tritile
