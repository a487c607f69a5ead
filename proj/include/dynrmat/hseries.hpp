#pragma once

#include <vector>

#include "dynrmat/errors.hpp"

namespace dynrmat {

// Truncated formal series in hbar with generic coefficients: all arithmetic
// discards terms of order > truncation(). The additive identity of T is not
// assumed to be default-constructible (Poly needs a variable count), so every
// series carries a zero prototype.
template <class T>
class HSeries {
public:
    HSeries(int truncation, T zero)
        : zero_(std::move(zero)), c_(static_cast<std::size_t>(truncation) + 1, zero_) {
        if (truncation < 0) throw Error("negative truncation order");
    }

    static HSeries unit(int truncation, const T& zero, const T& one) {
        HSeries s(truncation, zero);
        s.c_[0] = one;
        return s;
    }

    int truncation() const { return static_cast<int>(c_.size()) - 1; }
    const T& zero_prototype() const { return zero_; }

    const T& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

    HSeries& operator+=(const HSeries& o) {
        check(o);
        for (int k = 0; k <= truncation(); ++k) c_[k] = c_[k] + o.c_[k];
        return *this;
    }
    HSeries& operator-=(const HSeries& o) {
        check(o);
        for (int k = 0; k <= truncation(); ++k) c_[k] = c_[k] - o.c_[k];
        return *this;
    }
    friend HSeries operator+(HSeries a, const HSeries& b) { a += b; return a; }
    friend HSeries operator-(HSeries a, const HSeries& b) { a -= b; return a; }

    friend HSeries operator*(const HSeries& a, const HSeries& b) {
        a.check(b);
        HSeries out(a.truncation(), a.zero_);
        for (int i = 0; i <= a.truncation(); ++i)
            for (int j = 0; i + j <= a.truncation(); ++j)
                out.c_[i + j] = out.c_[i + j] + a.c_[i] * b.c_[j];
        return out;
    }
    HSeries& operator*=(const HSeries& o) { *this = *this * o; return *this; }

    HSeries operator-() const {
        HSeries out(truncation(), zero_);
        for (int k = 0; k <= truncation(); ++k) out.c_[k] = -c_[k];
        return out;
    }

    template <class S>
    HSeries scaled(const S& s) const {
        HSeries out(truncation(), zero_);
        for (int k = 0; k <= truncation(); ++k) out.c_[k] = c_[k] * s;
        return out;
    }

    // multiply by hbar^k (shift up, dropping terms past the truncation)
    HSeries shifted(int k) const {
        HSeries out(truncation(), zero_);
        for (int i = 0; i + k <= truncation(); ++i) out.c_[i + k] = c_[i];
        return out;
    }

    HSeries truncated(int new_order) const {
        HSeries out(new_order, zero_);
        for (int k = 0; k <= new_order && k <= truncation(); ++k) out.c_[k] = c_[k];
        return out;
    }

    friend bool operator==(const HSeries& a, const HSeries& b) { return a.c_ == b.c_; }

private:
    void check(const HSeries& o) const {
        if (o.truncation() != truncation()) throw Error("hbar-series truncation mismatch");
    }
    T zero_;
    std::vector<T> c_;
};

} // namespace dynrmat
