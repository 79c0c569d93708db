#pragma once

// Exact geometry of cylinder sets: the numbers whose expansion can start
// with a fixed digit word. Every rank-m cylinder is a closed interval of
// length x_max/s^m; adjacent siblings overlap.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsrep/numerals.hpp"

namespace rsrep::cylinders {

struct Interval {
    Rational lo, hi;

    Rational length() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Cylinder {
    Params params;
    DigitWord base;

    Cylinder(Params p, DigitWord b) : params(p), base(std::move(b)) {
        check_word(base, params.r);
    }

    size_t rank() const { return base.size(); }

    std::string to_string() const {
        std::string out;
        for (size_t i = 0; i < base.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(base[i]);
        }
        return out;
    }

    static Cylinder parse(std::string_view text, const Params& p) {
        DigitWord w;
        std::istringstream in{std::string(text)};
        int d;
        while (in >> d) w.push_back(d);
        if (!in.eof()) throw usage_error("bad cylinder base '" + std::string(text) + "'");
        return Cylinder(p, std::move(w));
    }
};

// [a, a + d] with a the prefix value and d = x_max/s^m; the length depends
// only on the rank.
inline Interval interval(const Cylinder& c) {
    Rational a = numerals::value_of_prefix(c.base, c.params.s);
    Rational d = c.params.x_max() * Rational::pow(c.params.s, -static_cast<long long>(c.rank()));
    return {a, a + d};
}

// Same-rank cylinders coincide exactly when their left endpoints do.
inline bool coincide(const Cylinder& a, const Cylinder& b) {
    if (!(a.params == b.params)) throw usage_error("cylinders from different systems");
    if (a.rank() != b.rank()) return false;
    return numerals::value_of_prefix(a.base, a.params.s) ==
           numerals::value_of_prefix(b.base, b.params.s);
}

// The r+1 cylinders refining c by one more digit; their union is exactly c.
inline std::vector<Cylinder> children(const Cylinder& c) {
    std::vector<Cylinder> out;
    out.reserve(static_cast<size_t>(c.params.r) + 1);
    for (int d = 0; d <= c.params.r; ++d) {
        DigitWord b = c.base;
        b.push_back(d);
        out.emplace_back(c.params, std::move(b));
    }
    return out;
}

// Overlap of children i and i+1 of c: the interval from the left endpoint of
// child i+1 to the right endpoint of child i. Its length is
// (r-s+1)/(s^(m+1)(s-1)) and the ratio to the parent length is (r-s+1)/(sr).
inline Interval adjacent_overlap(const Cylinder& c, Digit i) {
    if (i < 0 || i >= c.params.r) throw usage_error("child digit must be in {0..r-1}");
    auto kids = children(c);
    Interval left = interval(kids[static_cast<size_t>(i)]);
    Interval right = interval(kids[static_cast<size_t>(i) + 1]);
    return {right.lo, left.hi};
}

// The offset p such that adjacent rank-k overlaps are rank-(k+p) cylinders,
// if any: requires s^p * (r-s+1) == r, i.e. r/(r-s+1) a power of s.
inline std::optional<int> overlap_cylinder_offset(const Params& p) {
    long long target = p.r, unit = p.r - p.s + 1;
    if (target % unit) return std::nullopt;
    long long ratio = target / unit;
    int exp = 0;
    while (ratio % p.s == 0) {
        ratio /= p.s;
        ++exp;
    }
    if (ratio == 1 && exp >= 1) return exp;
    return std::nullopt;
}

// Rank-m cylinder around x: base is the depth-m expansion of x under the
// given policy, so interval(result) contains x.
inline Cylinder cylinder_containing(const Rational& x, size_t m, const Params& p,
                                    const Policy& policy) {
    auto step = numerals::expand(x, p, policy, m);
    return Cylinder(p, std::move(step.digits));
}

}  // namespace rsrep::cylinders
