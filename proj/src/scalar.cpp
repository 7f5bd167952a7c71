#include "fintower/scalar.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace fintower {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den.is_zero()) {
        throw std::domain_error("rational with zero denominator");
    }
    // The mpz-pair constructor canonicalizes (gcd reduction, positive
    // denominator); the string and machine-int constructors do not.
    return Rational(num, den);
}

Rational pow2_rational(int n) {
    if (n < 0) {
        return Rational(Integer(1), Integer(1) << static_cast<unsigned>(-n));
    }
    return Rational(Integer(1) << static_cast<unsigned>(n));
}

Rational GaussianRational::norm_sq() const {
    return Rational(re_ * re_ + im_ * im_);
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) {
        throw std::domain_error("inverse of zero scalar");
    }
    const Rational n = norm_sq();
    return {Rational(re_ / n), Rational(-im_ / n)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    if (a.im_.is_zero() && b.im_.is_zero()) {
        return GaussianRational(Rational(a.re_ * b.re_));
    }
    return {Rational(a.re_ * b.re_ - a.im_ * b.im_),
            Rational(a.re_ * b.im_ + a.im_ * b.re_)};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    *this = *this * o;
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    *this *= o.inverse();
    return *this;
}

std::string format_rational(const Rational& value) {
    std::string out = numerator(value).str();
    if (denominator(value) != 1) {
        out += "/" + denominator(value).str();
    }
    return out;
}

std::string format_scalar(const GaussianRational& value) {
    if (value.is_zero()) {
        return "0";
    }
    std::string out;
    if (!value.re().is_zero()) {
        out += format_rational(value.re());
    }
    if (!value.im().is_zero()) {
        if (!out.empty() && value.im() > 0) {
            out += "+";
        }
        out += format_rational(value.im());
        out += "i";
    }
    return out;
}

namespace {

struct ScalarCursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    [[noreturn]] void fail(const std::string& reason) const {
        throw std::invalid_argument("invalid scalar \"" + std::string(text) +
                                    "\": " + reason);
    }

    int take_sign() {
        if (!done() && (peek() == '+' || peek() == '-')) {
            const int s = peek() == '-' ? -1 : 1;
            ++pos;
            return s;
        }
        return 1;
    }

    Integer take_digits(const char* what) {
        const std::size_t start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos;
        }
        if (pos == start) {
            fail(std::string("expected digits for ") + what);
        }
        return Integer(std::string(text.substr(start, pos - start)));
    }

    // One signed term: rational magnitude plus an imaginary marker.
    struct Term {
        Rational value;
        bool imaginary;
    };

    Term take_term(int sign) {
        Integer num = take_digits("numerator");
        Integer den(1);
        if (!done() && peek() == '/') {
            ++pos;
            den = take_digits("denominator");
            if (den.is_zero()) {
                fail("zero denominator");
            }
        }
        bool imaginary = false;
        if (!done() && peek() == 'i') {
            ++pos;
            imaginary = true;
        }
        if (sign < 0) {
            num = -num;
        }
        return {make_rational(num, den), imaginary};
    }
};

}  // namespace

GaussianRational parse_scalar(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    ScalarCursor cur{text.substr(begin, end - begin)};
    if (cur.done()) {
        cur.fail("empty");
    }

    const auto first = cur.take_term(cur.take_sign());
    if (cur.done()) {
        return first.imaginary ? GaussianRational(Rational(0), first.value)
                               : GaussianRational(first.value);
    }

    if (cur.peek() != '+' && cur.peek() != '-') {
        cur.fail("unexpected trailing characters");
    }
    if (first.imaginary) {
        cur.fail("imaginary part must come last");
    }
    const auto second = cur.take_term(cur.take_sign());
    if (!second.imaginary) {
        cur.fail("second term must be imaginary");
    }
    if (!cur.done()) {
        cur.fail("unexpected trailing characters");
    }
    return {first.value, second.value};
}

}  // namespace fintower
