#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <string>
#include <string_view>

namespace fintower {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Builds a canonical rational (lowest terms, positive denominator).
/// Throws std::domain_error on zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// 2^n as an exact rational.
Rational pow2_rational(int n);

/// Exact complex scalar over Q(i): the ground field for all exact matrix
/// arithmetic.  Both components are kept canonical (lowest terms, positive
/// denominator), so equality is structural.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int value) : re_(value) {}  // NOLINT: implicit by design
    explicit GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im)
        : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational imaginary_unit() {
        return GaussianRational(Rational(0), Rational(1));
    }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    Integer re_num() const { return numerator(re_); }
    Integer re_den() const { return denominator(re_); }
    Integer im_num() const { return numerator(im_); }
    Integer im_den() const { return denominator(im_); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_one() const { return im_.is_zero() && re_ == 1; }

    /// re^2 + im^2, exact.  Zero iff the scalar is zero.
    Rational norm_sq() const;

    GaussianRational conj() const { return {re_, Rational(-im_)}; }

    /// Multiplicative inverse; throws std::domain_error on zero.
    GaussianRational inverse() const;

    std::complex<double> to_complex() const {
        return {re_.convert_to<double>(), im_.convert_to<double>()};
    }

    GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
        a += b;
        return a;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
        a -= b;
        return a;
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) {
        a /= b;
        return a;
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

private:
    Rational re_{0};
    Rational im_{0};
};

/// Canonical text form: "0", "5", "-1/2", "3/4i", "1/2-3/4i".  Lowest terms,
/// no "/1", zero components omitted.
std::string format_scalar(const GaussianRational& value);

/// Lowest-terms rational as "a" or "a/b".
std::string format_rational(const Rational& value);

/// Parses the scalar grammar accepted by matrix files: an optionally signed
/// rational ("a", "a/b"), an imaginary term ("ci", "c/di"), or a real part
/// followed by a signed imaginary part ("a/b+c/di").  Exact; throws
/// std::invalid_argument with a reason on malformed input.
GaussianRational parse_scalar(std::string_view text);

}  // namespace fintower
