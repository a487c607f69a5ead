#include "dynrmat/rational.hpp"

#include <ostream>

#include "dynrmat/errors.hpp"

namespace dynrmat {

Rational::Rational(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(num, den);
    canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("rational division");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw Error("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw Error("malformed rational literal: '" + text + "'");
    if (sgn(q.get_den()) == 0) throw Error("rational literal with zero denominator: '" + text + "'");
    q.canonicalize();
    return Rational(q);
}

Rational Rational::pow(unsigned e) const {
    mpq_class out;
    mpz_pow_ui(out.get_num_mpz_t(), v_.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), v_.get_den_mpz_t(), e);
    return Rational(out, NoCanon{});
}

Rational Rational::inv() const {
    if (is_zero()) throw DivisionByZero("rational inverse");
    mpq_class out;
    mpq_inv(out.get_mpq_t(), v_.get_mpq_t());
    return Rational(out, NoCanon{});
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

} // namespace dynrmat
