#pragma once

// Shared domain types: system parameters (s, r), digit words, eventually
// periodic digit representations, expansion policies, dimension values.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rsrep/errors.hpp"
#include "rsrep/rational.hpp"

namespace rsrep {

using Digit = int;
using DigitWord = std::vector<Digit>;

// Numeration system with natural base s and digit alphabet {0, 1, ..., r},
// s <= r. Values representable as sums of digit/s^n lie in [0, r/(s-1)].
struct Params {
    int s = 2;
    int r = 3;

    Params() = default;
    Params(int s_, int r_) : s(s_), r(r_) {
        if (s < 2 || r < s) throw usage_error("params require 2 <= s <= r");
    }

    Rational x_max() const { return Rational(r, static_cast<long long>(s) - 1); }

    friend bool operator==(const Params&, const Params&) = default;
};

inline void check_word(const DigitWord& w, int bound) {
    for (Digit d : w) {
        if (d < 0 || d > bound)
            throw usage_error("digit " + std::to_string(d) + " outside alphabet {0.." +
                              std::to_string(bound) + "}");
    }
}

// Eventually periodic digit sequence: preperiod word followed by an
// infinitely repeated nonempty period word. Stored in canonical form:
// the period is primitive and trailing preperiod digits that match the
// period tail are rolled into it.
struct PeriodicRep {
    int alphabet_bound = 0;
    DigitWord preperiod;
    DigitWord period;

    PeriodicRep() = default;
    PeriodicRep(int bound, DigitWord pre, DigitWord per)
        : alphabet_bound(bound), preperiod(std::move(pre)), period(std::move(per)) {
        if (period.empty()) throw usage_error("period must be nonempty");
        check_word(preperiod, bound);
        check_word(period, bound);
        normalize();
    }

    size_t preperiod_length() const { return preperiod.size(); }
    size_t period_length() const { return period.size(); }

    Digit digit_at(size_t i) const {
        if (i < preperiod.size()) return preperiod[i];
        return period[(i - preperiod.size()) % period.size()];
    }

    friend bool operator==(const PeriodicRep&, const PeriodicRep&) = default;
    friend auto operator<=>(const PeriodicRep&, const PeriodicRep&) = default;

    // "d1 d2 ... (p1 p2 ...)", digits in decimal, may exceed 9
    std::string to_string() const {
        std::string out;
        for (Digit d : preperiod) {
            out += std::to_string(d);
            out += ' ';
        }
        out += '(';
        for (size_t i = 0; i < period.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(period[i]);
        }
        out += ')';
        return out;
    }

    static PeriodicRep parse(std::string_view text, int bound) {
        std::string spaced;
        spaced.reserve(text.size() + 4);
        for (char c : text) {
            if (c == '(' || c == ')') {
                spaced += ' ';
                spaced += c;
                spaced += ' ';
            } else {
                spaced += c;
            }
        }
        std::istringstream in{spaced};
        DigitWord pre, per;
        bool in_period = false, closed = false;
        std::string tok;
        while (in >> tok) {
            if (tok == "(") {
                if (in_period || closed) throw usage_error("unexpected '(' in representation");
                in_period = true;
            } else if (tok == ")") {
                if (!in_period) throw usage_error("unexpected ')' in representation");
                in_period = false;
                closed = true;
            } else {
                if (closed) throw usage_error("trailing tokens after period");
                size_t pos = 0;
                int d;
                try {
                    d = std::stoi(tok, &pos);
                } catch (const std::exception&) {
                    throw usage_error("bad digit token '" + tok + "'");
                }
                if (pos != tok.size()) throw usage_error("bad digit token '" + tok + "'");
                (in_period ? per : pre).push_back(d);
            }
        }
        if (!closed || per.empty()) throw usage_error("representation needs a nonempty (period)");
        return PeriodicRep(bound, std::move(pre), std::move(per));
    }

private:
    void normalize() {
        // primitive period
        for (size_t len = 1; len <= period.size() / 2; ++len) {
            if (period.size() % len) continue;
            bool repeats = true;
            for (size_t i = len; i < period.size() && repeats; ++i)
                repeats = period[i] == period[i % len];
            if (repeats) {
                period.resize(len);
                break;
            }
        }
        // roll matching preperiod tail into the period
        while (!preperiod.empty() && preperiod.back() == period.back()) {
            preperiod.pop_back();
            period.insert(period.begin(), period.back());
            period.pop_back();
        }
    }
};

enum class PolicyKind { greedy, lazy, seeded_random };

// Digit-choice rule used when an expansion step admits several digits.
struct Policy {
    PolicyKind kind = PolicyKind::greedy;
    std::uint64_t seed = 0;

    static Policy greedy() { return {PolicyKind::greedy, 0}; }
    static Policy lazy() { return {PolicyKind::lazy, 0}; }
    static Policy seeded_random(std::uint64_t seed) { return {PolicyKind::seeded_random, seed}; }

    bool deterministic() const { return kind != PolicyKind::seeded_random; }

    static Policy parse(std::string_view name, std::uint64_t seed) {
        if (name == "greedy") return greedy();
        if (name == "lazy") return lazy();
        if (name == "random") return seeded_random(seed);
        throw usage_error("unknown policy '" + std::string(name) + "'");
    }
};

// A dimension expressed as ln(prod num_args)/ln(prod den_args), with the
// exact rational exponent attached when both products are powers of a
// common integer base.
struct DimensionValue {
    double value = 0;
    std::vector<long long> num_args;
    std::vector<long long> den_args;
    std::optional<Rational> exact;

    static DimensionValue make(std::vector<long long> num, std::vector<long long> den) {
        DimensionValue d;
        d.num_args = std::move(num);
        d.den_args = std::move(den);
        long long np = 1, dp = 1;
        for (long long a : d.num_args) np *= a;
        for (long long a : d.den_args) dp *= a;
        d.value = std::log(static_cast<double>(np)) / std::log(static_cast<double>(dp));
        d.exact = common_power_ratio(np, dp);
        if (d.exact) d.value = d.exact->to_double();
        return d;
    }

    static std::optional<Rational> common_power_ratio(long long np, long long dp) {
        if (np == 1) return Rational(0);
        if (np == dp) return Rational(1);
        for (long long b = 2; b <= np && b <= dp; ++b) {
            auto exponent_of = [b](long long v) -> std::optional<long long> {
                long long e = 0;
                while (v % b == 0) {
                    v /= b;
                    ++e;
                }
                return v == 1 ? std::optional<long long>(e) : std::nullopt;
            };
            auto en = exponent_of(np), ed = exponent_of(dp);
            if (en && ed) return Rational(*en, *ed);
        }
        return std::nullopt;
    }
};

}  // namespace rsrep
