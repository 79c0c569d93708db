#pragma once

// The digit projection f: read the canonical base-(r+1) digits of x in [0,1]
// and reinterpret them in base s over the same alphabet. Exact evaluation,
// discontinuity jumps at base-(r+1) terminating points, the functional
// equations and self-affine graph structure, integral and variation bounds.

#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rsrep/census.hpp"
#include "rsrep/numerals.hpp"

namespace rsrep::projection {

// Canonical base-(r+1) digit stream of x in [0,1]: terminating values carry
// period (0); the sole period-(r) form is x = 1.
inline PeriodicRep canonical_digits(const Rational& x, const Params& p) {
    if (x < Rational(0) || x > Rational(1)) throw domain_error("value outside [0, 1]");
    const long long g = p.r + 1;
    const BigInt q = x.den();
    std::unordered_map<BigInt, size_t> first_seen;
    std::vector<BigInt> trail{x.num()};
    DigitWord digits;
    first_seen.emplace(x.num(), 0);
    while (true) {
        const BigInt& cur = trail.back();
        Digit d;
        if (cur == q) {
            d = p.r;  // x == 1 keeps remainder 1 and digit r forever
        } else {
            d = static_cast<Digit>((cur * BigInt(g) / q).to_int64());
        }
        digits.push_back(d);
        BigInt next = cur * BigInt(g) - BigInt(d) * q;
        auto [it, inserted] = first_seen.emplace(next, trail.size());
        trail.push_back(next);
        if (!inserted) {
            size_t start = it->second;
            DigitWord pre(digits.begin(), digits.begin() + static_cast<long>(start));
            DigitWord per(digits.begin() + static_cast<long>(start), digits.end());
            return PeriodicRep(p.r, std::move(pre), std::move(per));
        }
    }
}

// f(x): the canonical base-(r+1) digits of x evaluated in base s.
// At x = 1 this gives x_max = r/(s-1), keeping the digit map consistent on
// the whole domain (the constant-r stream evaluates to x_max in base s).
inline Rational evaluate(const Rational& x, const Params& p) {
    return numerals::value_of(canonical_digits(x, p), p.s);
}

// Rank m of a base-(r+1) terminating point: minimal m >= 1 with
// x * (r+1)^m integral. Endpoints and non-terminating x have none; these are
// exactly the points with two base-(r+1) representations, where f jumps.
inline std::optional<int> binary_rank(const Rational& x, const Params& p) {
    if (x < Rational(0) || x > Rational(1)) throw domain_error("value outside [0, 1]");
    if (x.is_zero() || x == Rational(1)) return std::nullopt;
    BigInt cur = x.den();
    const BigInt g(p.r + 1);
    int m = 0;
    while (!cur.is_one()) {
        BigInt shared = BigInt::gcd(cur, g);
        if (shared.is_one()) return std::nullopt;
        cur = cur / shared;
        ++m;
    }
    return m;
}

// Jump of f at a rank-m binary point: (r-s+1)/(s^m (s-1)), always positive.
inline Rational jump(const Rational& x, const Params& p) {
    auto m = binary_rank(x, p);
    if (!m) throw usage_error("jump is defined only at base-(r+1) terminating points");
    return Rational(BigInt(p.r - p.s + 1), BigInt::pow(BigInt(p.s), static_cast<unsigned>(*m)) *
                                               BigInt(p.s - 1));
}

// Truncated one-sided difference approaching the jump from the alternative
// representation: f over digits c_1..c_(m-1) [c_m - 1] r...r (k times)
// minus f(x). Equals jump(x) - x_max/s^(m+k) exactly.
inline Rational one_sided_gap(const Rational& x, const Params& p, size_t k) {
    if (k < 1) throw usage_error("one_sided_gap requires k >= 1");
    if (!binary_rank(x, p))
        throw usage_error("one_sided_gap is defined only at base-(r+1) terminating points");
    PeriodicRep rep = canonical_digits(x, p);
    DigitWord word = rep.preperiod;
    word.back() -= 1;
    word.insert(word.end(), k, p.r);
    return numerals::value_of_prefix(word, p.s) - evaluate(x, p);
}

// f((i + x)/(r+1)) == i/s + f(x)/s. Checked at value level whenever the
// canonical digits of the left side are i prepended to those of x; at the
// x = 1 edge, where prepending leaves canonical form, the identity is
// checked on the digit streams themselves.
inline bool functional_equation_holds(Digit i, const Rational& x, const Params& p) {
    if (i < 0 || i > p.r) throw domain_error("digit outside alphabet");
    PeriodicRep rep_x = canonical_digits(x, p);
    DigitWord pre{i};
    pre.insert(pre.end(), rep_x.preperiod.begin(), rep_x.preperiod.end());
    PeriodicRep prepended(p.r, std::move(pre), rep_x.period);
    Rational shifted = (Rational(i) + x) / Rational(p.r + 1);
    Rational rhs = (Rational(i) + numerals::value_of(rep_x, p.s)) / Rational(p.s);
    if (canonical_digits(shifted, p) == prepended)
        return evaluate(shifted, p) == rhs;
    return numerals::value_of(prepended, p.s) == rhs;
}

// One affine piece of the graph IFS: contract x by r+1, y by s, translate to
// the digit-i cell.
struct IfsMap {
    Digit digit = 0;
    Rational x_scale, x_offset;
    Rational y_scale, y_offset;

    std::pair<Rational, Rational> apply(const Rational& x, const Rational& y) const {
        return {x_scale * x + x_offset, y_scale * y + y_offset};
    }
};

inline std::vector<IfsMap> ifs_maps(const Params& p) {
    std::vector<IfsMap> maps;
    maps.reserve(static_cast<size_t>(p.r) + 1);
    for (int i = 0; i <= p.r; ++i) {
        maps.push_back({i, Rational(1, p.r + 1), Rational(i, p.r + 1), Rational(1, p.s),
                        Rational(i, p.s)});
    }
    return maps;
}

inline constexpr size_t default_sample_budget = size_t(1) << 22;

// Exact graph points over all rank-n terminating values: x runs over the
// uniform (r+1)^(-n) grid and y = f(x). Numerators are stored over the
// common denominators (r+1)^n and s^n; points are in ascending x order.
struct GraphSample {
    Params params;
    int depth = 0;
    long long x_den = 1;  // (r+1)^depth
    long long y_den = 1;  // s^depth
    std::vector<std::pair<long long, long long>> nums;

    size_t size() const { return nums.size(); }
    Rational x_at(size_t i) const { return Rational(nums[i].first, x_den); }
    Rational y_at(size_t i) const { return Rational(nums[i].second, y_den); }
};

inline GraphSample graph_sample(const Params& p, int n,
                                size_t max_points = default_sample_budget) {
    if (n < 0) throw usage_error("sample depth must be >= 0");
    long long points = 1;
    for (int i = 0; i < n; ++i) {
        points *= p.r + 1;
        if (points > static_cast<long long>(max_points))
            throw budget_error("graph sample exceeds point budget");
    }
    GraphSample out;
    out.params = p;
    out.depth = n;
    for (int i = 0; i < n; ++i) {
        out.x_den *= p.r + 1;
        out.y_den *= p.s;
    }
    out.nums.reserve(static_cast<size_t>(points));
    auto fill = [&](auto&& self, int depth, long long xn, long long yn) -> void {
        if (depth == n) {
            out.nums.push_back({xn, yn});
            return;
        }
        for (int d = 0; d <= p.r; ++d)
            self(self, depth + 1, xn * (p.r + 1) + d, yn * p.s + d);
    };
    fill(fill, 0, 0, 0);
    return out;
}

// Integral of f over [0,1]: r/(2(s-1)).
inline Rational exact_integral(const Params& p) {
    return Rational(p.r, 2LL * (p.s - 1));
}

// Left Riemann sum of f on the uniform (r+1)^(-n) grid; increases strictly
// with n and reaches the integral to within r/(2 s^n (s-1)).
inline Rational riemann_estimate(const Params& p, int n,
                                 size_t max_points = default_sample_budget) {
    GraphSample sample = graph_sample(p, n, max_points);
    long long acc = 0;
    for (const auto& [xn, yn] : sample.nums) acc += yn;
    return Rational(BigInt(acc), BigInt(sample.y_den) * BigInt(sample.x_den));
}

// Sum of all jump magnitudes up to rank n: sum of r^m (r-s+1)/(s^m (s-1)),
// a geometric aggregate with increment ratio r/s; unbounded in n.
inline Rational variation_lower_bound(const Params& p, int n) {
    if (n < 1) throw usage_error("variation bound requires n >= 1");
    Rational total(0);
    Rational unit(p.r - p.s + 1, p.s - 1);
    Rational ratio(p.r, p.s);
    Rational power(1);
    for (int m = 1; m <= n; ++m) {
        power *= ratio;
        total += unit * power;
    }
    return total;
}

// Three points of any base-(r+1) cylinder on which f fails to be monotone:
// f rises from x1 to x2 and falls from x2 to x3 while x1 < x2 < x3.
struct MonotonicityWitness {
    Rational x1, x2, x3;
    Rational f1, f2, f3;
};

inline MonotonicityWitness monotonicity_witness(const DigitWord& base, const Params& p) {
    check_word(base, p.r);
    const long long g = p.r + 1;
    DigitWord w1 = base;
    DigitWord w2 = base;
    w2.push_back(0);
    w2.push_back(p.r);
    DigitWord w3 = base;
    w3.push_back(1);
    PeriodicRep mid(p.r, w2, DigitWord{p.r - 1});
    MonotonicityWitness w;
    w.x1 = numerals::value_of_prefix(w1, g);
    w.x2 = numerals::value_of(mid, g);
    w.x3 = numerals::value_of_prefix(w3, g);
    w.f1 = numerals::value_of_prefix(w1, p.s);
    w.f2 = numerals::value_of(mid, p.s);
    w.f3 = numerals::value_of_prefix(w3, p.s);
    return w;
}

// Self-affine dimension of the graph of f: 2 ln(r+1) / ln((r+1)s).
inline DimensionValue self_affine_dimension(const Params& p) {
    return DimensionValue::make({p.r + 1, p.r + 1}, {static_cast<long long>(p.r) + 1, p.s});
}

// Heuristic box-counting over a graph sample: square boxes of side
// (r+1)^(-k), counts and local log – log slopes. No exactness contract.
struct BoxCountRow {
    int exponent = 0;
    double scale = 0;
    size_t count = 0;
    double slope = 0;
};

inline std::vector<BoxCountRow> box_counts(const GraphSample& sample,
                                           std::vector<int> exponents) {
    std::sort(exponents.begin(), exponents.end());
    std::vector<BoxCountRow> rows;
    const long long g = sample.params.r + 1;
    for (int k : exponents) {
        if (k < 1 || k > sample.depth)
            throw usage_error("box exponent outside the sampled depth");
        long long col_div = 1;
        for (int i = 0; i < sample.depth - k; ++i) col_div *= g;
        long long gk = 1;
        for (int i = 0; i < k; ++i) gk *= g;
        std::unordered_set<unsigned long long> seen;
        seen.reserve(sample.size() / 4 + 16);
        for (const auto& [xn, yn] : sample.nums) {
            unsigned long long col = static_cast<unsigned long long>(xn / col_div);
            auto row =
                static_cast<unsigned long long>(static_cast<__int128>(yn) * gk / sample.y_den);
            seen.insert((col << 32) | row);
        }
        BoxCountRow row;
        row.exponent = k;
        row.scale = std::pow(static_cast<double>(g), -k);
        row.count = seen.size();
        rows.push_back(row);
    }
    for (size_t i = 1; i < rows.size(); ++i) {
        double dn = std::log(static_cast<double>(rows[i].count)) -
                    std::log(static_cast<double>(rows[i - 1].count));
        double dd = (rows[i].exponent - rows[i - 1].exponent) * std::log(static_cast<double>(g));
        rows[i].slope = dn / dd;
    }
    if (rows.size() > 1) rows[0].slope = rows[1].slope;
    return rows;
}

// Cardinality of the level set f^{-1}(y0), which matches the cardinality of
// the representation set of y0. When some representation of y0 ends in the
// constant-r period, the matching preimage stream is a non-canonical
// base-(r+1) expansion; such y0 are flagged.
struct LevelSetClass {
    census::CardinalityClass cardinality;
    bool has_constant_r_tail = false;
};

inline LevelSetClass classify_level(const Rational& y0, const Params& p) {
    auto a = census::automaton_for(y0, p);
    LevelSetClass out;
    out.cardinality = census::classify(y0, p);
    Rational top = p.x_max();
    for (const Rational& state : a->states) {
        if (state == top) {
            out.has_constant_r_tail = true;
            break;
        }
    }
    return out;
}

}  // namespace rsrep::projection
