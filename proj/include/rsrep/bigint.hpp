#pragma once

// Sign-magnitude arbitrary-precision integer, base 2^32.
// Magnitudes in this library stay small (a few hundred bits), so schoolbook
// arithmetic and binary gcd are entirely adequate.

#include <algorithm>
#include <cstdint>
#include <compare>
#include <stdexcept>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

namespace rsrep {

class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // avoid UB on LLONG_MIN
        unsigned long long u = v < 0 ? ~static_cast<unsigned long long>(v) + 1ull
                                     : static_cast<unsigned long long>(v);
        push_u64(u);
    }

    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    static BigInt from_u64(unsigned long long u) {
        BigInt b;
        if (u) {
            b.sign_ = 1;
            b.push_u64(u);
        }
        return b;
    }

    static BigInt from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("empty integer literal");
        int sgn = 1;
        if (s.front() == '-' || s.front() == '+') {
            sgn = s.front() == '-' ? -1 : 1;
            s.remove_prefix(1);
        }
        if (s.empty()) throw std::invalid_argument("empty integer literal");
        BigInt acc;
        size_t i = 0;
        while (i < s.size()) {
            size_t chunk = std::min<size_t>(9, s.size() - i);
            uint32_t part = 0;
            uint32_t scale = 1;
            for (size_t j = 0; j < chunk; ++j) {
                char c = s[i + j];
                if (c < '0' || c > '9') throw std::invalid_argument("invalid digit in integer literal");
                part = part * 10 + static_cast<uint32_t>(c - '0');
                scale *= 10;
            }
            acc = acc.mul_u32(scale);
            acc = acc + BigInt(static_cast<long long>(part));
            i += chunk;
        }
        if (sgn < 0) acc.sign_ = -acc.sign_;
        return acc;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }
    int sign() const { return sign_; }

    bool is_even() const { return sign_ == 0 || (mag_[0] & 1u) == 0; }

    bool fits_int64() const {
        if (mag_.size() > 2) return false;
        unsigned long long u = to_u64_mag();
        if (sign_ >= 0) return u <= 0x7fffffffffffffffull;
        return u <= 0x8000000000000000ull;
    }

    long long to_int64() const {
        unsigned long long u = to_u64_mag();
        if (sign_ >= 0) return static_cast<long long>(u);
        return -static_cast<long long>(u - 1) - 1;
    }

    double to_double() const {
        double v = 0;
        for (size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0 + mag_[i];
        return sign_ < 0 ? -v : v;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            const BigInt& big = c > 0 ? a : b;
            const BigInt& small = c > 0 ? b : a;
            r.mag_ = sub_mag(big.mag_, small.mag_);
            r.sign_ = big.sign_;
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            uint64_t carry = 0;
            uint64_t ai = a.mag_[i];
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                uint64_t cur = r.mag_[i + j] + carry + ai * b.mag_[j];
                r.mag_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            size_t k = i + b.mag_.size();
            while (carry) {
                uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // Quotient truncated toward zero; remainder has the dividend's sign.
    using DivMod = std::pair<BigInt, BigInt>;  // {quotient, remainder}

    static DivMod divmod(const BigInt& a, const BigInt& b) {
        if (b.sign_ == 0) throw std::domain_error("division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (a.sign_ == 0 || c < 0) return {BigInt(), a};
        BigInt quot, rem;
        if (b.mag_.size() == 1) {
            uint32_t d = b.mag_[0];
            quot.mag_.assign(a.mag_.size(), 0);
            uint64_t carry = 0;
            for (size_t i = a.mag_.size(); i-- > 0;) {
                uint64_t cur = (carry << 32) | a.mag_[i];
                quot.mag_[i] = static_cast<uint32_t>(cur / d);
                carry = cur % d;
            }
            quot.trim();
            if (carry) {
                rem.mag_.push_back(static_cast<uint32_t>(carry));
                rem.sign_ = 1;
            }
        } else {
            // binary long division; divisors here are at most a few limbs
            quot.mag_.assign(a.mag_.size(), 0);
            for (size_t bit = a.bit_length(); bit-- > 0;) {
                rem.shl1();
                if (a.bit(bit)) rem.set_bit0();
                if (cmp_mag(rem.mag_, b.mag_) >= 0) {
                    rem.mag_ = sub_mag(rem.mag_, b.mag_);
                    rem.trim();
                    quot.mag_[bit / 32] |= (1u << (bit % 32));
                }
            }
            quot.trim();
            if (!rem.mag_.empty()) rem.sign_ = 1;
        }
        quot.sign_ = quot.mag_.empty() ? 0 : a.sign_ * b.sign_;
        rem.sign_ = rem.mag_.empty() ? 0 : a.sign_;
        return {std::move(quot), std::move(rem)};
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    static BigInt gcd(const BigInt& x, const BigInt& y) {
        BigInt a = x.abs(), b = y.abs();
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        size_t az = a.trailing_zero_bits(), bz = b.trailing_zero_bits();
        size_t shift = std::min(az, bz);
        a.shr_bits(az);
        b.shr_bits(bz);
        while (true) {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) break;
            if (c > 0) std::swap(a, b);
            b.mag_ = sub_mag(b.mag_, a.mag_);
            b.trim();
            b.shr_bits(b.trailing_zero_bits());
        }
        a.shl_bits(shift);
        return a;
    }

    static BigInt pow(const BigInt& base, unsigned long long exp) {
        BigInt r(1), b = base;
        while (exp) {
            if (exp & 1) r *= b;
            exp >>= 1;
            if (exp) b *= b;
        }
        return r;
    }

    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        if (a.sign_ < 0) c = -c;
        return c <=> 0;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::vector<uint32_t> groups;
        BigInt t = abs();
        while (!t.is_zero()) {
            auto dm = divmod(t, BigInt(1000000000));
            groups.push_back(dm.second.is_zero() ? 0u : dm.second.mag_[0]);
            t = dm.first;
        }
        std::string out;
        if (sign_ < 0) out.push_back('-');
        out += std::to_string(groups.back());
        for (size_t i = groups.size() - 1; i-- > 0;) {
            std::string part = std::to_string(groups[i]);
            out.append(9 - part.size(), '0');
            out += part;
        }
        return out;
    }

    size_t hash() const {
        size_t h = 1469598103934665603ull ^ static_cast<size_t>(sign_ + 2);
        for (uint32_t limb : mag_) {
            h ^= limb;
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;  // little endian, no leading zero limbs

    void push_u64(unsigned long long u) {
        mag_.push_back(static_cast<uint32_t>(u));
        if (u >> 32) mag_.push_back(static_cast<uint32_t>(u >> 32));
    }

    unsigned long long to_u64_mag() const {
        unsigned long long u = 0;
        if (mag_.size() > 1) u = static_cast<unsigned long long>(mag_[1]) << 32;
        if (!mag_.empty()) u |= mag_[0];
        return u;
    }

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    size_t bit_length() const {
        if (mag_.empty()) return 0;
        uint32_t top = mag_.back();
        size_t bits = (mag_.size() - 1) * 32;
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    bool bit(size_t i) const {
        size_t limb = i / 32;
        if (limb >= mag_.size()) return false;
        return (mag_[limb] >> (i % 32)) & 1u;
    }

    void shl1() {
        uint32_t carry = 0;
        for (auto& limb : mag_) {
            uint32_t next = limb >> 31;
            limb = (limb << 1) | carry;
            carry = next;
        }
        if (carry) mag_.push_back(carry);
    }

    void set_bit0() {
        if (mag_.empty()) mag_.push_back(1);
        else mag_[0] |= 1u;
        if (sign_ == 0) sign_ = 1;
    }

    size_t trailing_zero_bits() const {
        for (size_t i = 0; i < mag_.size(); ++i) {
            if (mag_[i]) {
                size_t b = 0;
                uint32_t v = mag_[i];
                while (!(v & 1u)) {
                    v >>= 1;
                    ++b;
                }
                return i * 32 + b;
            }
        }
        return 0;
    }

    void shr_bits(size_t n) {
        if (n == 0 || mag_.empty()) return;
        size_t limbs = n / 32, bits = n % 32;
        if (limbs >= mag_.size()) {
            mag_.clear();
            sign_ = 0;
            return;
        }
        mag_.erase(mag_.begin(), mag_.begin() + static_cast<long>(limbs));
        if (bits) {
            for (size_t i = 0; i + 1 < mag_.size(); ++i)
                mag_[i] = (mag_[i] >> bits) | (mag_[i + 1] << (32 - bits));
            mag_.back() >>= bits;
        }
        trim();
    }

    void shl_bits(size_t n) {
        if (n == 0 || mag_.empty()) return;
        size_t limbs = n / 32, bits = n % 32;
        if (bits) {
            uint32_t carry = 0;
            for (auto& limb : mag_) {
                uint32_t next = limb >> (32 - bits);
                limb = (limb << bits) | carry;
                carry = next;
            }
            if (carry) mag_.push_back(carry);
        }
        mag_.insert(mag_.begin(), limbs, 0u);
    }

    BigInt mul_u32(uint32_t m) const {
        if (sign_ == 0 || m == 0) return BigInt();
        BigInt r;
        r.sign_ = sign_;
        r.mag_.reserve(mag_.size() + 1);
        uint64_t carry = 0;
        for (uint32_t limb : mag_) {
            uint64_t cur = static_cast<uint64_t>(limb) * m + carry;
            r.mag_.push_back(static_cast<uint32_t>(cur));
            carry = cur >> 32;
        }
        if (carry) r.mag_.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r;
        r.reserve(big.size() + 1);
        uint64_t carry = 0;
        for (size_t i = 0; i < big.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(big[i]) + (i < small.size() ? small[i] : 0) + carry;
            r.push_back(static_cast<uint32_t>(cur));
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r;
        r.reserve(a.size());
        int64_t borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            int64_t cur = static_cast<int64_t>(a[i]) - (i < b.size() ? b[i] : 0) - borrow;
            if (cur < 0) {
                cur += 1ll << 32;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r.push_back(static_cast<uint32_t>(cur));
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

}  // namespace rsrep

template <>
struct std::hash<rsrep::BigInt> {
    size_t operator()(const rsrep::BigInt& b) const { return b.hash(); }
};
