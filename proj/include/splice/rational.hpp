#pragma once

// Arbitrary-precision integers and exact rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "splice/error.hpp"

namespace splice {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

/// Floor division; `b` must be non-zero.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Representative of `a` modulo `m` in [0, |m|).
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

/// Integer value if it fits in int64_t.
inline std::optional<std::int64_t> to_int64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        return std::nullopt;
    return x.convert_to<std::int64_t>();
}

/// Exact rational number, always in lowest terms with positive denominator.
/// Zero is 0/1, so equality is structural.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(const Integer& n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
    Rational(long long n) : num_(n), den_(1) {}        // NOLINT
    Rational(long n) : num_(n), den_(1) {}             // NOLINT
    Rational(int n) : num_(n), den_(1) {}              // NOLINT
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const Integer& num() const noexcept { return num_; }
    const Integer& den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Integer floor() const { return floor_div(num_, den_); }
    /// Fractional part {x} in [0, 1).
    Rational frac() const { return Rational(mod(num_, den_), den_, Reduced{}); }

    Rational operator-() const { return Rational(-num_, den_, Reduced{}); }

    Rational& operator+=(const Rational& o) {
        if (den_ == o.den_) {
            num_ += o.num_;
        } else {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ *= o.den_;
        }
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw DomainError("rational division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const Integer lhs = a.num_ * b.den_;
        const Integer rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "n/d", or "n" when the denominator is 1.
    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Parses "n", "-n", "n/d". Throws ParseError on anything else.
    static Rational parse(std::string_view text) {
        auto parse_int = [&](std::string_view s) -> Integer {
            std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
            if (i == s.size()) throw ParseError("malformed rational '" + std::string(text) + "'");
            for (std::size_t k = i; k < s.size(); ++k)
                if (s[k] < '0' || s[k] > '9')
                    throw ParseError("malformed rational '" + std::string(text) + "'");
            return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
        };
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        Integer d = parse_int(text.substr(slash + 1));
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(parse_int(text.substr(0, slash)), d);
    }

    double to_double() const {
        return boost::multiprecision::cpp_rational(num_, den_).convert_to<double>();
    }

private:
    struct Reduced {};
    Rational(Integer n, Integer d, Reduced) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw DomainError("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ == 1) return;
        const Integer g = gcd(abs(num_), den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Integer num_;
    Integer den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace splice
