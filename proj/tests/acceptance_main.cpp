// Acceptance suite: one check per shipped guarantee, one pass/fail line each.
// Every tolerance is pinned here, in code. Exit status is the number of
// failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace rsrep;
using namespace testsupport;
namespace num = rsrep::numerals;
namespace cyl = rsrep::cylinders;
namespace cen = rsrep::census;
namespace prj = rsrep::projection;

using Kind = cen::CardinalityClass::Kind;

namespace {

const std::vector<std::pair<int, int>> kTestedSystems = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {3, 5}};

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

// 1. |interchangeable_pairs| = r(r-s+1), confirmed by exhaustive enumeration,
//    for all 2 <= s <= r <= 2s-1 with s <= 12.
Outcome pair_count_law() {
    Outcome out;
    for (int s = 2; s <= 12; ++s) {
        for (int r = s; r <= 2 * s - 1; ++r) {
            Params p(s, r);
            auto pairs = num::interchangeable_pairs(p);
            auto oracle = brute_force_pairs(p);
            size_t expected = static_cast<size_t>(r) * static_cast<size_t>(r - s + 1);
            if (pairs.size() != expected)
                out.fail("count mismatch vs formula at (" + std::to_string(s) + "," +
                         std::to_string(r) + ")");
            if (pairs.size() != oracle.size())
                out.fail("count mismatch vs oracle at (" + std::to_string(s) + "," +
                         std::to_string(r) + ")");
            else
                for (size_t i = 0; i < pairs.size(); ++i)
                    if (pairs[i].left != oracle[i].left || pairs[i].right != oracle[i].right)
                        out.fail("set mismatch at (" + std::to_string(s) + "," +
                                 std::to_string(r) + ")");
        }
    }
    if (num::interchangeable_pairs(Params(2, 2)).size() != 2) out.fail("(2,2) != 2");
    if (num::interchangeable_pairs(Params(3, 4)).size() != 8) out.fail("(3,4) != 8");
    return out;
}

// 2. 500 seeded rationals per tested system: exact round trip under greedy
//    and lazy, and the prefix bound 0 <= x - S_n <= r/(s^n (s-1)) for n <= 40.
Outcome expansion_soundness() {
    Outcome out;
    for (auto [s, r] : kTestedSystems) {
        Params p(s, r);
        Rng rng(1000u * static_cast<unsigned>(s) + static_cast<unsigned>(r));
        for (int i = 0; i < 500 && out.pass; ++i) {
            Rational x = random_rational(rng, p, 1000, false);
            for (Policy policy : {Policy::greedy(), Policy::lazy()}) {
                PeriodicRep rep = num::expand_periodic(x, p, policy);
                if (num::value_of(rep, p.s) != x) {
                    out.fail("round trip failed at x=" + x.to_string() + " (" +
                             std::to_string(s) + "," + std::to_string(r) + ")");
                    break;
                }
                auto step = num::expand(x, p, policy, 40);
                Rational partial(0);
                Rational scale(1);
                for (size_t n = 0; n < 40; ++n) {
                    scale /= Rational(p.s);
                    partial += Rational(step.digits[n]) * scale;
                    Rational residual = x - partial;
                    if (residual < Rational(0) || residual > p.x_max() * scale) {
                        out.fail("prefix bound failed at x=" + x.to_string());
                        break;
                    }
                }
            }
        }
    }
    return out;
}

// 3. Cylinder length r/(s^m (s-1)), overlap (r-s+1)/(s^(m+1) (s-1)), ratio
//    (r-s+1)/(sr) on 200 random cylinders, and the overlap-is-a-cylinder
//    offsets p=1 for (2,2) and none for (2,3), (3,3), (3,4).
Outcome cylinder_laws() {
    Outcome out;
    Rng rng(33);
    for (int i = 0; i < 200; ++i) {
        auto [s, r] = kTestedSystems[static_cast<size_t>(draw(rng, 0, 4))];
        Params p(s, r);
        size_t m = static_cast<size_t>(draw(rng, 0, 10));
        cyl::Cylinder c(p, random_word(rng, p, m));
        Rational len = cyl::interval(c).length();
        Rational sm = Rational::pow(p.s, static_cast<long long>(m));
        if (len != Rational(p.r) / (sm * Rational(p.s - 1))) out.fail("length law failed");
        int digit = static_cast<int>(draw(rng, 0, p.r - 1));
        Rational overlap = cyl::adjacent_overlap(c, digit).length();
        if (overlap != Rational(p.r - p.s + 1) / (sm * Rational(p.s) * Rational(p.s - 1)))
            out.fail("overlap law failed");
        if (overlap / len != Rational(p.r - p.s + 1, static_cast<long long>(p.s) * p.r))
            out.fail("ratio law failed");
    }
    struct Expectation {
        int s, r;
        std::optional<int> p;
    };
    const std::vector<Expectation> table = {
        {2, 2, 1}, {2, 3, std::nullopt}, {3, 3, std::nullopt}, {3, 4, std::nullopt}};
    for (const auto& e : table) {
        auto got = cyl::overlap_cylinder_offset(Params(e.s, e.r));
        if (got != e.p) {
            std::string got_s = got ? std::to_string(*got) : "none";
            std::string want_s = e.p ? std::to_string(*e.p) : "none";
            out.fail("overlap_cylinder_offset(" + std::to_string(e.s) + "," +
                     std::to_string(e.r) + ") = " + got_s + ", expected " + want_s +
                     " [the identity r(s^p-1) = s^p(s-1) is satisfied at p=1 whenever r=s," +
                     " so the expected value for (3,3) is unsatisfiable; see ledger]");
        }
    }
    return out;
}

// 4. count_prefixes equals full word enumeration for all n with
//    (r+1)^n <= 10^6 on 50 seeded rationals per tested system.
Outcome census_oracle() {
    Outcome out;
    for (auto [s, r] : kTestedSystems) {
        Params p(s, r);
        int n = 0;
        long long words = 1;
        while (words * (r + 1) <= 1000000) {
            words *= r + 1;
            ++n;
        }
        Rng rng(4000u + 100u * static_cast<unsigned>(s) + static_cast<unsigned>(r));
        for (int i = 0; i < 50 && out.pass; ++i) {
            Rational x = random_rational(rng, p, 1000, false);
            auto oracle = brute_force_prefix_counts(x, p, n);
            for (int k = 0; k <= n; ++k) {
                if (cen::count_prefixes(x, p, static_cast<size_t>(k)) !=
                    BigInt(oracle[static_cast<size_t>(k)])) {
                    out.fail("census mismatch at x=" + x.to_string() + " n=" + std::to_string(k) +
                             " (" + std::to_string(s) + "," + std::to_string(r) + ")");
                    break;
                }
            }
        }
    }
    return out;
}

// 5. Single-digit period classification matches the digit table for every
//    r < 2s-1 with s <= 6; for r > 2s-2 with s <= 5 every sampled interior
//    rational is a continuum level and the endpoints are singletons.
Outcome level_set_tables() {
    Outcome out;
    for (int s = 2; s <= 6; ++s) {
        for (int r = s; r < 2 * s - 1; ++r) {
            Params p(s, r);
            for (int c = 0; c <= r; ++c) {
                Rational x = num::value_of(PeriodicRep(r, {}, {c}), s);
                auto cls = cen::classify(x, p);
                Kind expected;
                if (c == 0 || c == r || (c >= r - s + 2 && c <= s - 2)) expected = Kind::finite;
                else if (c == r - s + 1 || c == s - 1) expected = Kind::countably_infinite;
                else expected = Kind::continuum;
                if (cls.kind != expected)
                    out.fail("digit table mismatch at c=" + std::to_string(c) + " (" +
                             std::to_string(s) + "," + std::to_string(r) + ")");
                if (expected == Kind::finite && cls.count != BigInt(1))
                    out.fail("digit table count != 1 at c=" + std::to_string(c));
            }
        }
    }
    for (int s = 2; s <= 5; ++s) {
        for (int r = 2 * s - 1; r <= 2 * s + 2; ++r) {
            Params p(s, r);
            Rng rng(5000u + 10u * static_cast<unsigned>(s) + static_cast<unsigned>(r));
            for (int i = 0; i < 100; ++i) {
                Rational x = random_rational(rng, p, 120, true);
                if (cen::classify(x, p).kind != Kind::continuum) {
                    out.fail("interior point not continuum at x=" + x.to_string() + " (" +
                             std::to_string(s) + "," + std::to_string(r) + ")");
                    break;
                }
            }
            if (cen::classify(Rational(0), p) != cen::CardinalityClass::finite(BigInt(1)))
                out.fail("endpoint 0 not finite(1)");
            if (cen::classify(p.x_max(), p) != cen::CardinalityClass::finite(BigInt(1)))
                out.fail("endpoint x_max not finite(1)");
        }
    }
    return out;
}

// 6. jump = (r-s+1)/(s^m (s-1)) on 100 random terminating points, and the
//    k=40 one-sided gap sits within the tail bound r/(s^(m+40) (s-1)).
Outcome jump_law() {
    Outcome out;
    Rng rng(66);
    for (auto [s, r] : kTestedSystems) {
        Params p(s, r);
        for (int i = 0; i < 20; ++i) {
            int m = static_cast<int>(draw(rng, 1, 6));
            Rational x = random_binary_point(rng, p, m);
            Rational expected = Rational(p.r - p.s + 1) /
                                (Rational::pow(p.s, m) * Rational(p.s - 1));
            if (prj::jump(x, p) != expected) out.fail("jump law failed at x=" + x.to_string());
            Rational gap = prj::one_sided_gap(x, p, 40);
            Rational diff = expected - gap;
            Rational tail = Rational(p.r) / (Rational::pow(p.s, m + 40) * Rational(p.s - 1));
            if (diff < Rational(0) || diff > tail)
                out.fail("gap tail bound failed at x=" + x.to_string());
        }
    }
    return out;
}

// 7. The IFS image of graph_sample(n) lies inside graph_sample(n+1) with
//    exact coordinates and full (r+1)^(n+1) counts, for n <= 8.
Outcome self_affinity() {
    Outcome out;
    for (auto [s, r] : {std::pair{2, 3}, {3, 4}}) {
        Params p(s, r);
        for (int n = 0; n <= 8 && out.pass; ++n) {
            auto cur = prj::graph_sample(p, n);
            auto next = prj::graph_sample(p, n + 1);
            long long expected_points = 1;
            for (int i = 0; i <= n; ++i) expected_points *= r + 1;
            if (static_cast<long long>(next.size()) != expected_points) {
                out.fail("sample size != (r+1)^(n+1) at n=" + std::to_string(n));
                continue;
            }
            long long images = 0;
            for (int digit = 0; digit <= p.r; ++digit) {
                for (const auto& [xn, yn] : cur.nums) {
                    long long xi = xn + digit * cur.x_den;
                    long long yi = yn + digit * cur.y_den;
                    const auto& target = next.nums[static_cast<size_t>(xi)];
                    if (target.first != xi || target.second != yi) {
                        out.fail("image point missing at n=" + std::to_string(n) + " digit=" +
                                 std::to_string(digit));
                        break;
                    }
                    ++images;
                }
            }
            if (out.pass && images != expected_points)
                out.fail("image count mismatch at n=" + std::to_string(n));
        }
    }
    return out;
}

// 8. Exact integral r/(2(s-1)); the depth-10 Riemann estimate for (2,3) is
//    within 1/100.
Outcome integral_criterion() {
    Outcome out;
    if (prj::exact_integral(Params(2, 3)) != Rational(3, 2)) out.fail("(2,3) exact != 3/2");
    if (prj::exact_integral(Params(3, 4)) != Rational(1)) out.fail("(3,4) exact != 1");
    Rational est = prj::riemann_estimate(Params(2, 3), 10);
    Rational gap = Rational(3, 2) - est;
    if (gap < Rational(0)) gap = -gap;
    if (!(gap < Rational(1, 100)))
        out.fail("estimate at n=10 off by " + gap.to_string());
    return out;
}

// 9. Variation partial sums for n = 1..30 equal the geometric aggregates
//    with increment ratio r/s and exceed 10^3 within n <= 30 for (2,3).
Outcome variation_divergence() {
    Outcome out;
    Params p(2, 3);
    Rational direct(0);
    Rational term(1);
    bool exceeded = false;
    for (int n = 1; n <= 30; ++n) {
        term = Rational(p.r - p.s + 1, p.s - 1) * Rational::pow(p.s, -n) *
               Rational(BigInt::pow(BigInt(p.r), static_cast<unsigned>(n)));
        direct += term;
        Rational sum = prj::variation_lower_bound(p, n);
        if (sum != direct) out.fail("partial sum mismatch at n=" + std::to_string(n));
        if (n >= 2) {
            Rational prev = prj::variation_lower_bound(p, n - 1);
            Rational prev_prev = n >= 3 ? prj::variation_lower_bound(p, n - 2) : Rational(0);
            if ((sum - prev) / (prev - prev_prev) != Rational(p.r, p.s))
                out.fail("increment ratio != r/s at n=" + std::to_string(n));
        }
        if (sum > Rational(1000)) exceeded = true;
    }
    if (!exceeded) out.fail("partial sums never exceeded 10^3 by n=30");
    return out;
}

// 10. The witness sign pattern (+, -) holds on 100 random cylinders of rank
//     at most 8 for every tested system, with exact arithmetic.
Outcome monotonicity_witnesses() {
    Outcome out;
    for (auto [s, r] : kTestedSystems) {
        Params p(s, r);
        Rng rng(100u * static_cast<unsigned>(s) + static_cast<unsigned>(r));
        for (int i = 0; i < 100; ++i) {
            auto w = prj::monotonicity_witness(
                random_word(rng, p, static_cast<size_t>(draw(rng, 0, 8))), p);
            if (!(w.x1 < w.x2 && w.x2 < w.x3)) out.fail("witness points out of order");
            if (!(w.f2 - w.f1 > Rational(0))) out.fail("witness rise not positive");
            if (!(w.f3 - w.f2 < Rational(0))) out.fail("witness fall not negative");
            if (!out.pass) break;
        }
    }
    return out;
}

// 11. Dimension formulas: self-affine 4/3 for (2,3) as an exact log ratio,
//     unique-set ln2/ln3 for (3,3), Cantor level-set 1/2 for s=2. The
//     box-count slope band for (2,3) at depth 10 is reported but not gated.
Outcome dimension_formulas(std::string& info) {
    Outcome out;
    auto sa = prj::self_affine_dimension(Params(2, 3));
    if (sa.exact != Rational(4, 3)) out.fail("self-affine (2,3) exact != 4/3");
    long long np = 1, dp = 1;
    for (long long a : sa.num_args) np *= a;
    for (long long a : sa.den_args) dp *= a;
    if (np != 16 || dp != 8) out.fail("self-affine (2,3) log arguments != (16, 8)");

    auto us = cen::unique_set_dimension(Params(3, 3));
    if (us.num_args != std::vector<long long>{2} || us.den_args != std::vector<long long>{3})
        out.fail("unique-set (3,3) may only carry (2, 3)");
    if (std::abs(us.value - std::log(2.0) / std::log(3.0)) > 1e-12)
        out.fail("unique-set (3,3) value is not ln2/ln3");

    for (int r = 2; r <= 5; ++r) {
        if (cen::cantor_levelset_dimension(Params(2, r)).exact != Rational(1, 2))
            out.fail("cantor level-set (2," + std::to_string(r) + ") != 1/2");
    }

    auto sample = prj::graph_sample(Params(2, 3), 10);
    auto rows = prj::box_counts(sample, {3, 4, 5, 6, 7, 8});
    std::ostringstream band;
    band << "box-count slopes (2,3) depth 10 [band 4/3 +- 0.2, informational]:";
    for (const auto& row : rows) {
        if (row.exponent < 4) continue;
        bool in_band = std::abs(row.slope - 4.0 / 3.0) <= 0.2;
        char buf[64];
        std::snprintf(buf, sizeof(buf), " k=%d %.3f%s", row.exponent, row.slope,
                      in_band ? "" : "(out)");
        band << buf;
    }
    info = band.str();
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome(std::string&)> check;
    };
    auto plain = [](Outcome (*f)()) {
        return [f](std::string&) { return f(); };
    };
    const std::vector<Criterion> criteria = {
        {1, "pair-count law", 5, plain(pair_count_law)},
        {2, "expansion soundness", 30, plain(expansion_soundness)},
        {3, "cylinder laws", 5, plain(cylinder_laws)},
        {4, "census oracle", 60, plain(census_oracle)},
        {5, "level-set tables", 60, plain(level_set_tables)},
        {6, "jump law", 10, plain(jump_law)},
        {7, "self-affinity", 30, plain(self_affinity)},
        {8, "integral", 20, plain(integral_criterion)},
        {9, "variation divergence", 1, plain(variation_divergence)},
        {10, "monotonicity witnesses", 5, plain(monotonicity_witnesses)},
        {11, "dimension formulas", 60, dimension_formulas},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string info;
        Outcome out;
        try {
            out = criterion.check(info);
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= criterion.limit_seconds)
            out.fail("runtime " + std::to_string(elapsed) + "s exceeds " +
                     std::to_string(criterion.limit_seconds) + "s");
        std::printf("criterion %2d (%s): %s (%.2fs)%s%s\n", criterion.id, criterion.name,
                    out.pass ? "PASS" : "FAIL", elapsed, out.detail.empty() ? "" : " — ",
                    out.detail.c_str());
        if (!info.empty()) std::printf("    %s\n", info.c_str());
        if (!out.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
