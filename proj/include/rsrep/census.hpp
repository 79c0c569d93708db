#pragma once

// Remainder automaton of a rational x: states are the reachable expansion
// remainders, edges carry digits, and infinite paths from x are exactly the
// representations of x. Counting and cardinality classification are purely
// structural on this graph.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsrep/numerals.hpp"

namespace rsrep::census {

struct RemainderAutomaton {
    Params params;
    Rational start;
    std::vector<Rational> states;                         // index 0 = start, BFS order
    std::vector<std::vector<std::pair<Digit, size_t>>> edges;  // per state, digit-ascending
    BigInt state_bound;                                   // floor(den(start) * x_max) + 1

    size_t size() const { return states.size(); }
};

inline RemainderAutomaton build_automaton(const Rational& x, const Params& p,
                                          size_t max_states = size_t(1) << 20) {
    if (x < Rational(0) || x > p.x_max())
        throw domain_error("automaton: x outside [0, x_max]");
    RemainderAutomaton a;
    a.params = p;
    a.start = x;
    a.state_bound = (Rational(x.den()) * p.x_max()).floor() + BigInt(1);
    const BigInt q = x.den();
    std::unordered_map<BigInt, size_t> index;
    std::vector<BigInt> nums{x.num()};
    index.emplace(x.num(), 0);
    for (size_t i = 0; i < nums.size(); ++i) {
        BigInt cur = nums[i];
        a.states.push_back(Rational(cur, q));
        a.edges.emplace_back();
        auto [lo, hi] = numerals::admissible_range(Rational(cur, q), p);
        for (int d = lo; d <= hi; ++d) {
            BigInt next = BigInt(p.s) * cur - BigInt(d) * q;
            auto [it, inserted] = index.emplace(next, nums.size());
            if (inserted) {
                nums.push_back(next);
                if (nums.size() > max_states)
                    throw budget_error("automaton exceeds state budget");
            }
            a.edges[i].push_back({d, it->second});
        }
    }
    return a;
}

// Level-set style queries reuse the automaton of the same (x, params);
// keep a bounded cache behind a mutex.
inline std::shared_ptr<const RemainderAutomaton> automaton_for(const Rational& x, const Params& p,
                                                               size_t max_states = size_t(1)
                                                                                   << 20) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const RemainderAutomaton>> cache;
    std::string key = std::to_string(p.s) + ":" + std::to_string(p.r) + ":" + x.to_string();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end() && it->second->size() <= max_states) return it->second;
    }
    auto built = std::make_shared<const RemainderAutomaton>(build_automaton(x, p, max_states));
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 1024) cache.clear();
    cache.emplace(key, built);
    return built;
}

// Number of length-n digit words extendable to a representation of x,
// i.e. words w with 0 <= x - value_of_prefix(w) <= x_max/s^n.
inline BigInt count_prefixes(const Rational& x, const Params& p, size_t n) {
    auto a = automaton_for(x, p);
    std::vector<BigInt> cur(a->size());
    cur[0] = BigInt(1);
    for (size_t step = 0; step < n; ++step) {
        std::vector<BigInt> next(a->size());
        for (size_t i = 0; i < a->size(); ++i) {
            if (cur[i].is_zero()) continue;
            for (auto [d, t] : a->edges[i]) next[t] += cur[i];
        }
        cur = std::move(next);
    }
    BigInt total(0);
    for (const BigInt& c : cur) total += c;
    return total;
}

struct CardinalityClass {
    enum class Kind { finite, countably_infinite, continuum };
    Kind kind = Kind::finite;
    BigInt count;  // set when finite

    static CardinalityClass finite(BigInt n) { return {Kind::finite, std::move(n)}; }
    static CardinalityClass countable() { return {Kind::countably_infinite, BigInt(0)}; }
    static CardinalityClass continuum() { return {Kind::continuum, BigInt(0)}; }

    friend bool operator==(const CardinalityClass&, const CardinalityClass&) = default;

    std::string to_string() const {
        switch (kind) {
            case Kind::finite: return "finite(" + count.to_string() + ")";
            case Kind::countably_infinite: return "countably_infinite";
            default: return "continuum";
        }
    }
};

namespace detail {

struct SccResult {
    std::vector<int> comp;         // state -> component id (reverse topological)
    std::vector<char> has_cycle;   // per component
    std::vector<size_t> comp_size;
    std::vector<size_t> internal_edges;
};

inline SccResult strongly_connected(const RemainderAutomaton& a) {
    const size_t n = a.size();
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<int> low(n, -1), disc(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<size_t> stack;
    int timer = 0, ncomp = 0;

    // iterative Tarjan
    struct Frame {
        size_t v;
        size_t edge = 0;
    };
    for (size_t root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> call{{root}};
        while (!call.empty()) {
            Frame& f = call.back();
            size_t v = f.v;
            if (f.edge == 0) {
                disc[v] = low[v] = timer++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (f.edge < a.edges[v].size()) {
                size_t w = a.edges[v][f.edge].second;
                ++f.edge;
                if (disc[w] == -1) {
                    call.push_back({w});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                if (low[v] == disc[v]) {
                    while (true) {
                        size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        res.comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                call.pop_back();
                if (!call.empty()) {
                    size_t parent = call.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
    res.comp_size.assign(static_cast<size_t>(ncomp), 0);
    res.internal_edges.assign(static_cast<size_t>(ncomp), 0);
    res.has_cycle.assign(static_cast<size_t>(ncomp), 0);
    for (size_t v = 0; v < n; ++v) {
        ++res.comp_size[static_cast<size_t>(res.comp[v])];
        for (auto [d, w] : a.edges[v]) {
            if (res.comp[w] == res.comp[v]) {
                ++res.internal_edges[static_cast<size_t>(res.comp[v])];
                if (w == v) res.has_cycle[static_cast<size_t>(res.comp[v])] = 1;
            }
        }
    }
    for (size_t c = 0; c < res.comp_size.size(); ++c)
        if (res.comp_size[c] > 1) res.has_cycle[c] = 1;
    return res;
}

}  // namespace detail

// Cardinality of the set of representations of x, decided structurally:
// a strongly connected component carrying two distinct cycles forces a
// continuum of paths; otherwise every cyclic component is a single simple
// cycle, and an exit edge from any cycle state allows countably many
// departure times; otherwise paths are counted through the acyclic part.
inline CardinalityClass classify(const Rational& x, const Params& p) {
    auto a = automaton_for(x, p);
    auto scc = detail::strongly_connected(*a);
    for (size_t c = 0; c < scc.comp_size.size(); ++c) {
        if (scc.has_cycle[c] && scc.internal_edges[c] > scc.comp_size[c])
            return CardinalityClass::continuum();
    }
    for (size_t v = 0; v < a->size(); ++v) {
        if (!scc.has_cycle[static_cast<size_t>(scc.comp[v])]) continue;
        for (auto [d, w] : a->edges[v]) {
            if (scc.comp[w] != scc.comp[v]) return CardinalityClass::countable();
        }
    }
    // acyclic part is a DAG; component ids are in reverse topological order,
    // so every edge target is already counted
    std::vector<BigInt> paths(a->size());
    std::vector<size_t> order(a->size());
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(),
              [&](size_t u, size_t v) { return scc.comp[u] < scc.comp[v]; });
    for (size_t v : order) {
        if (scc.has_cycle[static_cast<size_t>(scc.comp[v])]) {
            paths[v] = BigInt(1);
        } else {
            for (auto [d, w] : a->edges[v]) paths[v] += paths[w];
        }
    }
    return CardinalityClass::finite(paths[0]);
}

namespace detail {

// lexicographic order on the infinite digit streams of two normalized reps
struct StreamLess {
    bool operator()(const PeriodicRep& a, const PeriodicRep& b) const {
        size_t horizon = std::max(a.preperiod_length(), b.preperiod_length()) +
                         std::lcm(a.period_length(), b.period_length());
        for (size_t i = 0; i < horizon; ++i) {
            Digit da = a.digit_at(i), db = b.digit_at(i);
            if (da != db) return da < db;
        }
        return false;
    }
};

}  // namespace detail

struct Enumeration {
    std::vector<PeriodicRep> reps;  // stream-lexicographic order
    bool complete = false;          // true when these are all representations of x
};

// Eventually periodic representations of x, in stream-lexicographic order:
// the lassos of the remainder automaton with preperiod at most max_preperiod
// (default: one more than the state count) and period at most one more than
// the state count, truncated to the max_count smallest.
inline Enumeration enumerate_representations(const Rational& x, const Params& p, size_t max_count,
                                             std::optional<size_t> max_preperiod = std::nullopt,
                                             size_t node_budget = 4000000) {
    auto a = automaton_for(x, p);
    const size_t max_pre = max_preperiod.value_or(a->size() + 1);
    const size_t max_per = a->size() + 1;
    const size_t max_len = max_pre + max_per;

    std::set<PeriodicRep, detail::StreamLess> best;
    bool trimmed = false;
    if (max_count == 0) return {{}, false};

    std::vector<std::vector<size_t>> at_positions(a->size());
    DigitWord path_digits;
    std::vector<size_t> path_states;
    size_t nodes = 0;

    auto consider = [&](PeriodicRep rep) {
        if (best.size() < max_count) {
            best.insert(std::move(rep));
        } else if (detail::StreamLess{}(rep, *best.rbegin())) {
            best.insert(std::move(rep));
            if (best.size() > max_count) {
                best.erase(std::prev(best.end()));
                trimmed = true;
            }
        } else if (best.find(rep) == best.end()) {
            trimmed = true;
        }
    };

    auto subtree_hopeless = [&]() {
        // with a full candidate set, a prefix already greater than the
        // largest kept stream cannot contribute
        if (best.size() < max_count) return false;
        const PeriodicRep& cap = *best.rbegin();
        for (size_t i = 0; i < path_digits.size(); ++i) {
            Digit d = cap.digit_at(i);
            if (path_digits[i] != d) return path_digits[i] > d;
        }
        return false;
    };

    auto dfs = [&](auto&& self, size_t state) -> void {
        if (++nodes > node_budget) throw budget_error("representation enumeration budget exceeded");
        size_t here = path_states.size();
        for (size_t i : at_positions[state]) {
            if (i <= max_pre && here - i <= max_per) {
                consider(PeriodicRep(
                    p.r, DigitWord(path_digits.begin(), path_digits.begin() + static_cast<long>(i)),
                    DigitWord(path_digits.begin() + static_cast<long>(i), path_digits.end())));
            }
        }
        if (here >= max_len || subtree_hopeless()) return;
        at_positions[state].push_back(here);
        path_states.push_back(state);
        for (auto [d, t] : a->edges[state]) {
            path_digits.push_back(d);
            self(self, t);
            path_digits.pop_back();
        }
        path_states.pop_back();
        at_positions[state].pop_back();
    };
    dfs(dfs, 0);

    Enumeration out;
    out.reps.assign(best.begin(), best.end());
    auto cls = classify(x, p);
    out.complete = cls.kind == CardinalityClass::Kind::finite && !trimmed &&
                   BigInt(static_cast<long long>(out.reps.size())) == cls.count;
    return out;
}

// Hausdorff dimension of the set of values with a unique representation,
// ln(2s-r-1)/ln(s); defined only for r < 2s-1.
inline DimensionValue unique_set_dimension(const Params& p) {
    if (p.r >= 2 * p.s - 1)
        throw regime_error("unique-representation dimension requires r < 2s-1");
    return DimensionValue::make({2LL * p.s - p.r - 1}, {p.s});
}

// Dimension of the two-map Cantor set embedded in any level set that admits
// an interchangeable pair: the solution of 2 s^(-2t) = 1.
inline DimensionValue cantor_levelset_dimension(const Params& p) {
    return DimensionValue::make({2}, {p.s, p.s});
}

inline std::string to_dot(const RemainderAutomaton& a) {
    std::string out = "digraph remainders {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (size_t i = 0; i < a.size(); ++i) {
        out += "  \"" + a.states[i].to_string() + "\"";
        if (i == 0) out += " [peripheries=2]";
        out += ";\n";
    }
    for (size_t i = 0; i < a.size(); ++i) {
        for (auto [d, t] : a.edges[i]) {
            out += "  \"" + a.states[i].to_string() + "\" -> \"" + a.states[t].to_string() +
                   "\" [label=\"" + std::to_string(d) + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace rsrep::census
