#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace dynrmat {

// Arbitrary-precision rational, always in canonical form: gcd(num, den) = 1,
// den > 0. Backed by GMP.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}           // NOLINT(google-explicit-constructor)
    Rational(int n) : v_(n) {}            // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : v_(q) { canonicalize(); }

    // Parses "p", "-p/q" or "p/q"; throws Error on malformed input or q = 0.
    static Rational parse(const std::string& text);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_), NoCanon{}); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational pow(unsigned e) const;
    Rational inv() const;
    Rational abs() const { return Rational(mpq_class(::abs(v_)), NoCanon{}); }

    // "p" when the denominator is 1, otherwise "p/q".
    std::string str() const;
    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    const mpq_class& raw() const { return v_; }

private:
    struct NoCanon {};
    Rational(mpq_class q, NoCanon) : v_(std::move(q)) {}
    void canonicalize() { v_.canonicalize(); }
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// n! as a Rational; n must be small (used for Taylor/symmetrization factors).
Rational factorial(unsigned n);

} // namespace dynrmat
