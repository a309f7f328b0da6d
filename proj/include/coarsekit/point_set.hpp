#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "coarsekit/errors.hpp"

namespace coarsekit {

// Fixed-capacity bitset over the points of one space. All set algebra in the
// library goes through this type, so membership tests and combinations are
// exact word operations.
class PointSet {
  public:
    PointSet() : n_(0) {}
    explicit PointSet(int n) : n_(n), w_((n + 63) / 64, 0) {}

    static PointSet full(int n) {
        PointSet s(n);
        for (auto& w : s.w_) w = ~0ull;
        s.trim();
        return s;
    }
    static PointSet single(int n, int i) {
        PointSet s(n);
        s.set(i);
        return s;
    }
    static PointSet of(int n, std::initializer_list<int> idx) {
        PointSet s(n);
        for (int i : idx) s.set(i);
        return s;
    }

    int capacity() const { return n_; }
    std::size_t words() const { return w_.size(); }
    std::uint64_t word(std::size_t k) const { return w_[k]; }
    std::uint64_t& word_ref(std::size_t k) { return w_[k]; }

    void set(int i) {
        check(i);
        w_[i >> 6] |= 1ull << (i & 63);
    }
    void reset(int i) {
        check(i);
        w_[i >> 6] &= ~(1ull << (i & 63));
    }
    bool test(int i) const {
        check(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void clear() {
        for (auto& w : w_) w = 0;
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : w_) if (w) return false;
        return true;
    }

    PointSet& operator|=(const PointSet& o) {
        same(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    PointSet& operator&=(const PointSet& o) {
        same(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    // set difference
    PointSet& operator-=(const PointSet& o) {
        same(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }

    friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
    friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
    friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }

    bool intersects(const PointSet& o) const {
        same(o);
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }
    bool is_subset_of(const PointSet& o) const {
        same(o);
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    PointSet complement() const {
        PointSet r(n_);
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
        r.trim();
        return r;
    }

    // smallest member, or -1
    int first() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return static_cast<int>(k * 64 + std::countr_zero(w_[k]));
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                f(static_cast<int>(k * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> indices() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

  private:
    void check(int i) const {
        if (i < 0 || i >= n_) throw Error("PointSet index out of range");
    }
    void same(const PointSet& o) const {
        if (n_ != o.n_) throw Error("PointSet capacity mismatch");
    }
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (~0ull >> (64 - n_ % 64));
    }

    int n_;
    std::vector<std::uint64_t> w_;
};

}  // namespace coarsekit
