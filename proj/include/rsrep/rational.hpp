#pragma once

// Exact rational numbers: the only numeric carrier of the library core.
// Always reduced, denominator always positive, zero is 0/1.

#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>

#include "rsrep/bigint.hpp"
#include "rsrep/errors.hpp"

namespace rsrep {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_.is_one(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw domain_error("division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return (a.num_ * b.den_) <=> (b.num_ * a.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    BigInt floor() const {
        auto dm = BigInt::divmod(num_, den_);
        if (num_.is_negative() && !dm.second.is_zero()) return dm.first - BigInt(1);
        return dm.first;
    }

    BigInt ceil() const {
        auto dm = BigInt::divmod(num_, den_);
        if (!num_.is_negative() && !dm.second.is_zero()) return dm.first + BigInt(1);
        return dm.first;
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    // base^exp as an exact rational; negative exponents invert
    static Rational pow(long long base, long long exp) {
        if (exp >= 0) return Rational(BigInt::pow(BigInt(base), static_cast<unsigned long long>(exp)));
        return Rational(BigInt(1), BigInt::pow(BigInt(base), static_cast<unsigned long long>(-exp)));
    }

    // wire format: "p/q" (denominator always present)
    std::string to_string() const { return num_.to_string() + "/" + den_.to_string(); }

    // accepts "p" or "p/q"
    static Rational parse(std::string_view s) {
        size_t slash = s.find('/');
        try {
            if (slash == std::string_view::npos) return Rational(BigInt::from_string(s));
            BigInt n = BigInt::from_string(s.substr(0, slash));
            BigInt d = BigInt::from_string(s.substr(slash + 1));
            if (d.is_zero()) throw usage_error("zero denominator in rational literal");
            return Rational(std::move(n), std::move(d));
        } catch (const std::invalid_argument&) {
            throw usage_error("malformed rational '" + std::string(s) + "', expected p/q");
        }
    }

    size_t hash() const {
        size_t h = num_.hash();
        h ^= den_.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }

private:
    BigInt num_, den_;

    void reduce() {
        if (den_.is_zero()) throw domain_error("rational with zero denominator");
        if (den_.is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

}  // namespace rsrep

template <>
struct std::hash<rsrep::Rational> {
    size_t operator()(const rsrep::Rational& r) const { return r.hash(); }
};
