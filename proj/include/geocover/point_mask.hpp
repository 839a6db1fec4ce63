#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace geocover {

// Fixed-width set of point indices used by the kernel-level solvers.
class PointMask {
public:
    static constexpr int kWords = 4;
    static constexpr int kCapacity = 64 * kWords;

    PointMask() : w_{} {}

    static PointMask first_n(int n)
    {
        PointMask m;
        for (int i = 0; i < n; ++i)
            m.set(i);
        return m;
    }

    void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }

    int count() const
    {
        int c = 0;
        for (auto w : w_)
            c += std::popcount(w);
        return c;
    }
    bool any() const { return (w_[0] | w_[1] | w_[2] | w_[3]) != 0; }
    bool none() const { return !any(); }

    // -1 when empty
    int first() const { return next(0); }
    int next(int from) const
    {
        if (from >= kCapacity)
            return -1;
        int wi = from >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w)
                return (wi << 6) + std::countr_zero(w);
            if (++wi == kWords)
                return -1;
            w = w_[wi];
        }
    }

    template <class F>
    void for_each(F&& f) const
    {
        for (int wi = 0; wi < kWords; ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                f((wi << 6) + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> indices() const
    {
        std::vector<int> out;
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

    bool is_subset_of(const PointMask& o) const
    {
        for (int i = 0; i < kWords; ++i)
            if (w_[i] & ~o.w_[i])
                return false;
        return true;
    }
    bool intersects(const PointMask& o) const
    {
        for (int i = 0; i < kWords; ++i)
            if (w_[i] & o.w_[i])
                return true;
        return false;
    }
    int count_and(const PointMask& o) const
    {
        int c = 0;
        for (int i = 0; i < kWords; ++i)
            c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    PointMask& operator&=(const PointMask& o)
    {
        for (int i = 0; i < kWords; ++i)
            w_[i] &= o.w_[i];
        return *this;
    }
    PointMask& operator|=(const PointMask& o)
    {
        for (int i = 0; i < kWords; ++i)
            w_[i] |= o.w_[i];
        return *this;
    }
    // set difference
    PointMask& operator-=(const PointMask& o)
    {
        for (int i = 0; i < kWords; ++i)
            w_[i] &= ~o.w_[i];
        return *this;
    }
    friend PointMask operator&(PointMask a, const PointMask& b) { return a &= b; }
    friend PointMask operator|(PointMask a, const PointMask& b) { return a |= b; }
    friend PointMask operator-(PointMask a, const PointMask& b) { return a -= b; }
    friend bool operator==(const PointMask& a, const PointMask& b) { return a.w_ == b.w_; }
    friend bool operator!=(const PointMask& a, const PointMask& b) { return a.w_ != b.w_; }
    // orders by the lowest differing index: the set holding it comes first
    friend bool operator<(const PointMask& a, const PointMask& b)
    {
        for (int i = 0; i < kWords; ++i)
            if (a.w_[i] != b.w_[i]) {
                std::uint64_t diff = a.w_[i] ^ b.w_[i];
                return (a.w_[i] & diff & (~diff + 1)) != 0;
            }
        return false;
    }

    std::size_t hash() const
    {
        std::size_t h = 0;
        for (auto w : w_)
            h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
        return h;
    }

private:
    std::array<std::uint64_t, kWords> w_;
};

} // namespace geocover
