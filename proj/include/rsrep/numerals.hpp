#pragma once

// Expansion of rationals over the digit alphabet {0..r} in base s, exact
// evaluation of digit streams, and the digit-pair substitution combinatorics
// that generate alternative representations.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rsrep/core.hpp"

namespace rsrep::numerals {

// Exact value of the finite digit word w in the given base: sum of w_i/base^i.
inline Rational value_of_prefix(const DigitWord& word, long long base) {
    if (base < 2) throw usage_error("base must be >= 2");
    BigInt acc(0);
    for (Digit d : word) acc = acc * BigInt(base) + BigInt(d);
    return Rational(acc, BigInt::pow(BigInt(base), word.size()));
}

// Exact value of an eventually periodic digit stream in the given base.
// Digits may exceed base-1; that is the normal case for a redundant alphabet.
inline Rational value_of(const PeriodicRep& rep, long long base) {
    if (base < 2) throw usage_error("base must be >= 2");
    BigInt pre_num(0);
    for (Digit d : rep.preperiod) pre_num = pre_num * BigInt(base) + BigInt(d);
    BigInt per_num(0);
    for (Digit d : rep.period) per_num = per_num * BigInt(base) + BigInt(d);
    BigInt bm = BigInt::pow(BigInt(base), rep.preperiod.size());
    BigInt bp1 = BigInt::pow(BigInt(base), rep.period.size()) - BigInt(1);
    // pre/b^m + per/(b^m (b^p - 1))
    return Rational(pre_num * bp1 + per_num, bm * bp1);
}

// Closed interval of digits usable at the next expansion step from scaled
// remainder y: those a with 0 <= s*y - a <= x_max. Never empty on [0, x_max].
inline std::pair<int, int> admissible_range(const Rational& y, const Params& p) {
    if (y < Rational(0) || y > p.x_max())
        throw domain_error("value outside [0, x_max]");
    Rational sy = Rational(p.s) * y;
    BigInt lo_b = (sy - p.x_max()).ceil();
    BigInt hi_b = sy.floor();
    int lo = lo_b.is_negative() ? 0 : static_cast<int>(lo_b.to_int64());
    int hi = hi_b > BigInt(p.r) ? p.r : static_cast<int>(hi_b.to_int64());
    return {lo, hi};
}

inline std::vector<Digit> admissible_digits(const Rational& y, const Params& p) {
    auto [lo, hi] = admissible_range(y, p);
    std::vector<Digit> out;
    out.reserve(static_cast<size_t>(hi - lo + 1));
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
}

struct ExpansionStep {
    DigitWord digits;
    Rational remainder;  // scaled residual, stays in [0, x_max]
};

// Depth-limited expansion of x in [0, x_max]: every step picks an admissible
// digit per policy and rescales the remainder by s. After n steps
// 0 <= x - sum(digit_i/s^i) <= x_max/s^n holds exactly.
inline ExpansionStep expand(const Rational& x, const Params& p, const Policy& policy,
                            size_t depth) {
    ExpansionStep out;
    out.remainder = x;
    if (x < Rational(0) || x > p.x_max())
        throw domain_error("expand: x outside [0, x_max]");
    std::mt19937_64 rng(policy.seed);
    out.digits.reserve(depth);
    for (size_t i = 0; i < depth; ++i) {
        auto [lo, hi] = admissible_range(out.remainder, p);
        int d;
        switch (policy.kind) {
            case PolicyKind::greedy: d = hi; break;
            case PolicyKind::lazy: d = lo; break;
            default: d = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
        }
        out.digits.push_back(d);
        out.remainder = Rational(p.s) * out.remainder - Rational(d);
    }
    return out;
}

// Full expansion of a rational under a deterministic policy. Remainders of
// p/q keep denominators dividing q and lie in [0, x_max], so the digit
// sequence is eventually periodic; the first revisited remainder closes it.
inline PeriodicRep expand_periodic(const Rational& x, const Params& p, const Policy& policy) {
    if (!policy.deterministic())
        throw usage_error("expand_periodic requires a deterministic policy");
    if (x < Rational(0) || x > p.x_max())
        throw domain_error("expand_periodic: x outside [0, x_max]");
    // remainders share x's denominator: track numerators only
    const BigInt q = x.den();
    const BigInt sq = BigInt(p.s);
    std::unordered_map<BigInt, size_t> first_seen;
    std::vector<BigInt> trail{x.num()};
    DigitWord digits;
    first_seen.emplace(x.num(), 0);
    Rational y = x;
    while (true) {
        auto [lo, hi] = admissible_range(y, p);
        int d = policy.kind == PolicyKind::greedy ? hi : lo;
        digits.push_back(d);
        BigInt next = sq * trail.back() - BigInt(d) * q;
        y = Rational(next, q);
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

// Two digit pairs with a*s + b == c*s + d are interchangeable anywhere in a
// representation without changing its value.
struct PairSubstitution {
    std::pair<Digit, Digit> left;   // (a, b)
    std::pair<Digit, Digit> right;  // (c, d), a < c

    long long invariant(const Params& p) const {
        return static_cast<long long>(left.first) * p.s + left.second;
    }

    friend bool operator==(const PairSubstitution&, const PairSubstitution&) = default;
    friend auto operator<=>(const PairSubstitution&, const PairSubstitution&) = default;
};

// All unordered interchangeable pairs over {0..r}^2, canonically oriented.
// For s <= r <= 2s-1 there are exactly r(r-s+1) of them.
inline std::vector<PairSubstitution> interchangeable_pairs(const Params& p) {
    std::map<long long, std::vector<std::pair<Digit, Digit>>> by_value;
    for (int a = 0; a <= p.r; ++a)
        for (int b = 0; b <= p.r; ++b)
            by_value[static_cast<long long>(a) * p.s + b].push_back({a, b});
    std::vector<PairSubstitution> out;
    for (auto& [value, group] : by_value) {
        for (size_t i = 0; i < group.size(); ++i)
            for (size_t j = i + 1; j < group.size(); ++j)
                out.push_back({group[i], group[j]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Maximal chain of digit pairs sharing the invariant a*s + b, ordered by
// leading digit.
struct SubstitutionChain {
    long long invariant = 0;
    std::vector<std::pair<Digit, Digit>> links;

    friend bool operator==(const SubstitutionChain&, const SubstitutionChain&) = default;
};

// For r == 2s: the 2s-1 three-element chains (j,2s) <-> (j+1,s) <-> (j+2,0).
// Otherwise: every maximal group of pairwise-interchangeable digit pairs.
inline std::vector<SubstitutionChain> substitution_chains(const Params& p) {
    std::vector<SubstitutionChain> out;
    if (p.r == 2 * p.s) {
        for (int j = 0; j <= 2 * p.s - 2; ++j) {
            SubstitutionChain c;
            c.invariant = static_cast<long long>(j + 2) * p.s;
            c.links = {{j, 2 * p.s}, {j + 1, p.s}, {j + 2, 0}};
            out.push_back(std::move(c));
        }
        return out;
    }
    std::map<long long, std::vector<std::pair<Digit, Digit>>> by_value;
    for (int a = 0; a <= p.r; ++a)
        for (int b = 0; b <= p.r; ++b)
            by_value[static_cast<long long>(a) * p.s + b].push_back({a, b});
    for (auto& [value, group] : by_value) {
        if (group.size() < 2) continue;
        std::sort(group.begin(), group.end());
        out.push_back({value, std::move(group)});
    }
    return out;
}

// Digitwise complement d -> r-d; maps a representation of x to one of
// x_max - x and is an involution.
inline PeriodicRep reflect(const PeriodicRep& rep, const Params& p) {
    if (rep.alphabet_bound != p.r)
        throw usage_error("reflect expects an alphabet bound of r");
    DigitWord pre = rep.preperiod, per = rep.period;
    for (Digit& d : pre) d = p.r - d;
    for (Digit& d : per) d = p.r - d;
    return PeriodicRep(p.r, std::move(pre), std::move(per));
}

// Witness that x has a terminating representation (period (0)), i.e.
// x = m/s^k realized by some digit word. Searches the remainder graph of x
// breadth-first for the remainder 0; the BFS path gives the shortest witness
// with smallest digits.
inline std::optional<PeriodicRep> terminating_representation(const Rational& x, const Params& p) {
    if (x < Rational(0) || x > p.x_max())
        throw domain_error("value outside [0, x_max]");
    const BigInt q = x.den();
    std::unordered_map<BigInt, std::pair<BigInt, Digit>> parent;  // numerator -> (prev, digit)
    std::queue<BigInt> frontier;
    parent.emplace(x.num(), std::make_pair(x.num(), Digit(-1)));
    frontier.push(x.num());
    while (!frontier.empty()) {
        BigInt cur = frontier.front();
        frontier.pop();
        if (cur.is_zero()) {
            DigitWord pre;
            BigInt at = cur;
            while (parent.at(at).second != -1) {
                pre.push_back(parent.at(at).second);
                at = parent.at(at).first;
            }
            std::reverse(pre.begin(), pre.end());
            return PeriodicRep(p.r, std::move(pre), DigitWord{0});
        }
        auto [lo, hi] = admissible_range(Rational(cur, q), p);
        for (int d = lo; d <= hi; ++d) {
            BigInt next = BigInt(p.s) * cur - BigInt(d) * q;
            if (parent.emplace(next, std::make_pair(cur, d)).second) frontier.push(next);
        }
    }
    return std::nullopt;
}

}  // namespace rsrep::numerals
