#pragma once

// Command-line front end. Every library operation is reachable from exactly
// one subcommand; identical argv + seed + config produce byte-identical
// output. Rationals cross this boundary only as "p/q" strings.

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsrep/rsrep.hpp"

namespace rsrep::cli {

using ordered_json = nlohmann::ordered_json;

struct CliConfig {
    int s = 2;
    int r = 3;
    std::uint64_t seed = 0;
    std::string format = "json";  // json | csv | dot | text
    long long max_depth = 100000;
    int max_sample_exponent = 11;
    long long max_automaton_states = 1 << 20;

    void validate() const {
        if (s < 2 || r < s) throw usage_error("config requires 2 <= s <= r");
        if (max_depth < 1 || max_sample_exponent < 1 || max_automaton_states < 1)
            throw usage_error("config budgets must be positive");
        if (format != "json" && format != "csv" && format != "dot" && format != "text")
            throw usage_error("config format must be json, csv, dot or text");
    }
};

inline CliConfig load_config_file(const std::string& path) {
    CliConfig cfg;
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file '" + path + "'");
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos || line[begin] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error("config line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto as_ll = [&](const std::string& v) {
            try {
                size_t pos = 0;
                long long n = std::stoll(v, &pos);
                if (pos != v.size()) throw std::invalid_argument(v);
                return n;
            } catch (const std::exception&) {
                throw usage_error("config value for '" + key + "' is not an integer");
            }
        };
        if (key == "s") cfg.s = static_cast<int>(as_ll(value));
        else if (key == "r") cfg.r = static_cast<int>(as_ll(value));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_ll(value));
        else if (key == "format") cfg.format = value;
        else if (key == "max_depth") cfg.max_depth = as_ll(value);
        else if (key == "max_sample_exponent") cfg.max_sample_exponent = static_cast<int>(as_ll(value));
        else if (key == "max_automaton_states") cfg.max_automaton_states = as_ll(value);
        else throw usage_error("unknown config key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

// Registry of subcommands and the library operations each one exposes; the
// coverage test checks that this is a partition of all operations.
struct CommandEntry {
    const char* name;
    const char* summary;
    std::vector<const char*> operations;
};

inline const std::vector<CommandEntry>& command_table() {
    static const std::vector<CommandEntry> table = {
        {"expand", "expand x into digits under a policy",
         {"numerals.expand", "numerals.expand_periodic", "numerals.admissible_digits"}},
        {"value", "evaluate a digit representation exactly",
         {"numerals.value_of", "numerals.reflect"}},
        {"pairs", "interchangeable digit pairs", {"numerals.interchangeable_pairs"}},
        {"chains", "substitution chains of digit pairs", {"numerals.substitution_chains"}},
        {"cylinder", "cylinder intervals, children, coincidence, membership",
         {"cylinders.interval", "cylinders.children", "cylinders.coincide",
          "cylinders.cylinder_containing"}},
        {"overlap", "adjacent-cylinder overlaps",
         {"cylinders.adjacent_overlap", "cylinders.overlap_cylinder_offset"}},
        {"census", "count and enumerate representations",
         {"census.count_prefixes", "census.enumerate_representations",
          "numerals.terminating_representation"}},
        {"classify", "cardinality of the representation / level set",
         {"census.classify", "projection.classify_level"}},
        {"feval", "evaluate the digit projection",
         {"projection.evaluate", "projection.canonical_digits",
          "projection.functional_equation_holds"}},
        {"jumps", "discontinuity data of the digit projection",
         {"projection.binary_rank", "projection.jump", "projection.one_sided_gap"}},
        {"witness", "non-monotonicity witness on a cylinder",
         {"projection.monotonicity_witness"}},
        {"graph", "exact graph samples and box counts",
         {"projection.graph_sample", "projection.box_counts"}},
        {"ifs", "affine maps of the self-affine graph", {"projection.ifs_maps"}},
        {"integral", "integral of the digit projection",
         {"projection.exact_integral", "projection.riemann_estimate"}},
        {"variation", "lower bounds for the total variation",
         {"projection.variation_lower_bound"}},
        {"dims", "dimension formulas",
         {"projection.self_affine_dimension", "census.unique_set_dimension",
          "census.cantor_levelset_dimension"}},
        {"automaton", "remainder automaton export", {"census.build_automaton"}},
    };
    return table;
}

inline const std::vector<std::string>& all_operations() {
    static const std::vector<std::string> ops = {
        "numerals.value_of", "numerals.admissible_digits", "numerals.expand",
        "numerals.expand_periodic", "numerals.interchangeable_pairs",
        "numerals.substitution_chains", "numerals.reflect",
        "numerals.terminating_representation",
        "cylinders.interval", "cylinders.coincide", "cylinders.children",
        "cylinders.adjacent_overlap", "cylinders.overlap_cylinder_offset",
        "cylinders.cylinder_containing",
        "census.build_automaton", "census.count_prefixes",
        "census.enumerate_representations", "census.classify",
        "census.unique_set_dimension", "census.cantor_levelset_dimension",
        "projection.canonical_digits", "projection.evaluate", "projection.binary_rank",
        "projection.jump", "projection.one_sided_gap",
        "projection.functional_equation_holds", "projection.ifs_maps",
        "projection.graph_sample", "projection.exact_integral",
        "projection.riemann_estimate", "projection.variation_lower_bound",
        "projection.monotonicity_witness", "projection.self_affine_dimension",
        "projection.box_counts", "projection.classify_level",
    };
    return ops;
}

namespace detail {

inline std::string rat(const Rational& x) { return x.to_string(); }

inline ordered_json interval_json(const cylinders::Interval& iv) {
    return ordered_json{{"lo", rat(iv.lo)}, {"hi", rat(iv.hi)}};
}

inline ordered_json digits_json(const DigitWord& w) {
    ordered_json arr = ordered_json::array();
    for (Digit d : w) arr.push_back(d);
    return arr;
}

inline std::string digits_text(const DigitWord& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(w[i]);
    }
    return out;
}

inline ordered_json cardinality_json(const census::CardinalityClass& c) {
    using Kind = census::CardinalityClass::Kind;
    ordered_json j;
    switch (c.kind) {
        case Kind::finite:
            j["class"] = "finite";
            j["count"] = c.count.to_string();
            break;
        case Kind::countably_infinite: j["class"] = "countably_infinite"; break;
        case Kind::continuum: j["class"] = "continuum"; break;
    }
    return j;
}

inline ordered_json dimension_json(const DimensionValue& d) {
    ordered_json j;
    j["value"] = d.value;
    j["formula"] = ordered_json{{"num_args", d.num_args}, {"den_args", d.den_args}};
    if (d.exact) j["exact"] = d.exact->to_string();
    else j["exact"] = nullptr;
    return j;
}

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stoi(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw usage_error("bad integer list '" + text + "'");
        }
    }
    if (out.empty()) throw usage_error("empty integer list");
    return out;
}

struct Emitter {
    std::ostream& out;
    std::string format;

    void json(const ordered_json& doc) const { out << doc.dump() << "\n"; }
    void line(const std::string& s) const { out << s << "\n"; }
};

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using detail::Emitter;
    using detail::rat;

    // config file first (flag wins over environment), flags override config
    CliConfig cfg;
    try {
        std::string config_path;
        for (size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
        }
        if (config_path.empty()) {
            if (const char* env = std::getenv("REDUNDANT_RADIX_CONFIG")) config_path = env;
        }
        if (!config_path.empty()) cfg = load_config_file(config_path);
    } catch (const usage_error& e) {
        err << ordered_json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    }

    CLI::App app{"exact arithmetic for numeration with a redundant digit alphabet"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    std::string config_path_opt;
    app.add_option("--config", config_path_opt, "key=value config file");
    app.add_option("--s", cfg.s, "base (>= 2)");
    app.add_option("--r", cfg.r, "largest digit (>= s)");
    app.add_option("--seed", cfg.seed, "seed for the random digit policy");
    app.add_option("--format", cfg.format, "json | csv | dot | text");
    app.add_option("--max-depth", cfg.max_depth, "expansion depth budget");
    app.add_option("--max-sample-exponent", cfg.max_sample_exponent, "graph sample budget");
    app.add_option("--max-states", cfg.max_automaton_states, "automaton state budget");

    struct {
        std::string x, policy = "greedy";
        long long depth = 16;
        bool periodic = false, admissible = false;
    } expand_opt;
    auto* sc_expand = app.add_subcommand("expand", "expand x into digits under a policy");
    sc_expand->add_option("--x", expand_opt.x, "value p/q in [0, x_max]")->required();
    sc_expand->add_option("--policy", expand_opt.policy, "greedy | lazy | random");
    sc_expand->add_option("--depth", expand_opt.depth, "number of digits");
    sc_expand->add_flag("--periodic", expand_opt.periodic, "full eventually periodic expansion");
    sc_expand->add_flag("--admissible", expand_opt.admissible, "list admissible first digits only");

    struct {
        std::string rep;
        long long base = 0;
        bool reflect = false;
    } value_opt;
    auto* sc_value = app.add_subcommand("value", "evaluate a digit representation exactly");
    sc_value->add_option("--rep", value_opt.rep, "digits, e.g. \"0 1 (3)\"")->required();
    sc_value->add_option("--base", value_opt.base, "evaluation base (default s)");
    sc_value->add_flag("--reflect", value_opt.reflect, "apply the digitwise complement d -> r-d");

    auto* sc_pairs = app.add_subcommand("pairs", "interchangeable digit pairs");
    auto* sc_chains = app.add_subcommand("chains", "substitution chains of digit pairs");

    struct {
        std::string base, same, x;
        long long rank = -1;
        std::string policy = "greedy";
        bool children = false;
    } cyl_opt;
    auto* sc_cyl = app.add_subcommand("cylinder", "cylinder intervals and relations");
    sc_cyl->add_option("--base", cyl_opt.base, "space-separated digits (may be empty)");
    sc_cyl->add_flag("--children", cyl_opt.children, "list the r+1 refining cylinders");
    sc_cyl->add_option("--same", cyl_opt.same, "second base to compare for coincidence");
    sc_cyl->add_option("--containing", cyl_opt.x, "value p/q to enclose");
    sc_cyl->add_option("--rank", cyl_opt.rank, "rank for --containing");
    sc_cyl->add_option("--policy", cyl_opt.policy, "digit policy for --containing");

    struct {
        std::string base;
        int digit = -1;
        bool check_rank = false;
    } overlap_opt;
    auto* sc_overlap = app.add_subcommand("overlap", "adjacent-cylinder overlaps");
    sc_overlap->add_option("--base", overlap_opt.base, "parent cylinder base");
    sc_overlap->add_option("--digit", overlap_opt.digit, "left child digit i in {0..r-1}");
    sc_overlap->add_flag("--check-rank", overlap_opt.check_rank,
                         "report the offset p making overlaps cylinders, if any");

    struct {
        std::string x;
        long long count_n = -1, max_count = -1, max_preperiod = -1;
        bool terminating = false;
    } census_opt;
    auto* sc_census = app.add_subcommand("census", "count and enumerate representations");
    sc_census->add_option("--x", census_opt.x, "value p/q")->required();
    sc_census->add_option("--count-n", census_opt.count_n, "count length-n digit prefixes");
    sc_census->add_option("--enumerate", census_opt.max_count,
                          "list up to this many representations");
    sc_census->add_option("--max-preperiod", census_opt.max_preperiod,
                          "preperiod bound for --enumerate");
    sc_census->add_flag("--terminating", census_opt.terminating,
                        "search for a terminating representation");

    struct {
        std::string x;
        bool level = false;
    } classify_opt;
    auto* sc_classify = app.add_subcommand("classify", "cardinality of the representation set");
    sc_classify->add_option("--x", classify_opt.x, "value p/q")->required();
    sc_classify->add_flag("--level", classify_opt.level,
                          "treat x as a level of the digit projection");

    struct {
        std::string x;
        bool with_rep = false;
        int feq_digit = -1;
    } feval_opt;
    auto* sc_feval = app.add_subcommand("feval", "evaluate the digit projection");
    sc_feval->add_option("--x", feval_opt.x, "value p/q in [0, 1]")->required();
    sc_feval->add_flag("--with-rep", feval_opt.with_rep, "include the canonical digits");
    sc_feval->add_option("--feq-digit", feval_opt.feq_digit,
                         "check the functional equation for this digit");

    struct {
        std::string x;
        long long gap_k = -1;
    } jumps_opt;
    auto* sc_jumps = app.add_subcommand("jumps", "discontinuity data of the digit projection");
    sc_jumps->add_option("--x", jumps_opt.x, "value p/q in [0, 1]")->required();
    sc_jumps->add_option("--gap-k", jumps_opt.gap_k, "truncation depth for the one-sided gap");

    struct {
        std::string base;
    } witness_opt;
    auto* sc_witness = app.add_subcommand("witness", "non-monotonicity witness on a cylinder");
    sc_witness->add_option("--base", witness_opt.base, "cylinder base digits (may be empty)");

    struct {
        long long n = 4;
        std::string box;
    } graph_opt;
    auto* sc_graph = app.add_subcommand("graph", "exact graph samples and box counts");
    sc_graph->add_option("--n", graph_opt.n, "sample depth");
    sc_graph->add_option("--box", graph_opt.box, "comma-separated box exponents");

    auto* sc_ifs = app.add_subcommand("ifs", "affine maps of the self-affine graph");

    struct {
        long long estimate_n = -1;
    } integral_opt;
    auto* sc_integral = app.add_subcommand("integral", "integral of the digit projection");
    sc_integral->add_option("--estimate-n", integral_opt.estimate_n,
                            "also report the depth-n Riemann estimate");

    struct {
        long long n = 10;
    } variation_opt;
    auto* sc_variation = app.add_subcommand("variation", "total-variation lower bounds");
    sc_variation->add_option("--n", variation_opt.n, "number of jump ranks to sum");

    auto* sc_dims = app.add_subcommand("dims", "dimension formulas");

    struct {
        std::string x;
    } automaton_opt;
    auto* sc_automaton = app.add_subcommand("automaton", "remainder automaton export");
    sc_automaton->add_option("--x", automaton_opt.x, "value p/q")->required();

    try {
        std::vector<const char*> argv;
        argv.push_back("rsrep");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        cfg.validate();
        Params params(cfg.s, cfg.r);
        Emitter emit{out, cfg.format};
        const bool text = cfg.format == "text";
        if (cfg.format == "dot" && !sc_automaton->parsed())
            throw usage_error("dot output is only available for 'automaton'");
        if (cfg.format == "csv" && !sc_graph->parsed())
            throw usage_error("csv output is only available for 'graph'");

        if (sc_expand->parsed()) {
            Rational x = Rational::parse(expand_opt.x);
            Policy policy = Policy::parse(expand_opt.policy, cfg.seed);
            if (expand_opt.admissible) {
                auto digits = numerals::admissible_digits(x, params);
                if (text) emit.line(detail::digits_text(digits));
                else emit.json({{"x", rat(x)}, {"admissible", detail::digits_json(digits)}});
            } else if (expand_opt.periodic) {
                PeriodicRep rep = numerals::expand_periodic(x, params, policy);
                if (text) emit.line(rep.to_string());
                else
                    emit.json({{"rep", rep.to_string()},
                               {"preperiod", detail::digits_json(rep.preperiod)},
                               {"period", detail::digits_json(rep.period)},
                               {"value", rat(numerals::value_of(rep, params.s))}});
            } else {
                if (expand_opt.depth < 0 || expand_opt.depth > cfg.max_depth)
                    throw budget_error("expansion depth exceeds budget");
                auto step = numerals::expand(x, params, policy, static_cast<size_t>(expand_opt.depth));
                if (text) {
                    emit.line(detail::digits_text(step.digits));
                    emit.line(rat(step.remainder));
                } else {
                    emit.json({{"digits", detail::digits_json(step.digits)},
                               {"remainder", rat(step.remainder)}});
                }
            }
        } else if (sc_value->parsed()) {
            PeriodicRep rep = PeriodicRep::parse(value_opt.rep, params.r);
            long long base = value_opt.base > 0 ? value_opt.base : params.s;
            if (value_opt.reflect) rep = numerals::reflect(rep, params);
            Rational v = numerals::value_of(rep, base);
            if (text) emit.line(rat(v));
            else
                emit.json({{"rep", rep.to_string()}, {"base", base}, {"value", rat(v)}});
        } else if (sc_pairs->parsed()) {
            auto pairs = numerals::interchangeable_pairs(params);
            if (text) {
                for (const auto& pr : pairs)
                    emit.line("(" + std::to_string(pr.left.first) + "," +
                              std::to_string(pr.left.second) + ") <-> (" +
                              std::to_string(pr.right.first) + "," +
                              std::to_string(pr.right.second) + ")");
            } else {
                ordered_json arr = ordered_json::array();
                for (const auto& pr : pairs)
                    arr.push_back({{"left", {pr.left.first, pr.left.second}},
                                   {"right", {pr.right.first, pr.right.second}}});
                emit.json({{"count", pairs.size()}, {"pairs", arr}});
            }
        } else if (sc_chains->parsed()) {
            auto chains = numerals::substitution_chains(params);
            if (text) {
                for (const auto& c : chains) {
                    std::string line;
                    for (size_t i = 0; i < c.links.size(); ++i) {
                        if (i) line += " <-> ";
                        line += "(" + std::to_string(c.links[i].first) + "," +
                                std::to_string(c.links[i].second) + ")";
                    }
                    emit.line(line);
                }
            } else {
                ordered_json arr = ordered_json::array();
                for (const auto& c : chains) {
                    ordered_json links = ordered_json::array();
                    for (auto [a, b] : c.links) links.push_back({a, b});
                    arr.push_back({{"invariant", c.invariant}, {"links", links}});
                }
                emit.json({{"count", chains.size()}, {"chains", arr}});
            }
        } else if (sc_cyl->parsed()) {
            if (!cyl_opt.x.empty()) {
                if (cyl_opt.rank < 0) throw usage_error("--containing requires --rank");
                if (cyl_opt.rank > cfg.max_depth)
                    throw budget_error("rank exceeds depth budget");
                Rational x = Rational::parse(cyl_opt.x);
                Policy policy = Policy::parse(cyl_opt.policy, cfg.seed);
                auto c = cylinders::cylinder_containing(x, static_cast<size_t>(cyl_opt.rank),
                                                        params, policy);
                auto iv = cylinders::interval(c);
                if (text) emit.line(c.to_string());
                else
                    emit.json({{"x", rat(x)},
                               {"rank", cyl_opt.rank},
                               {"policy", cyl_opt.policy},
                               {"base", c.to_string()},
                               {"interval", detail::interval_json(iv)}});
            } else if (!cyl_opt.same.empty()) {
                auto c1 = cylinders::Cylinder::parse(cyl_opt.base, params);
                auto c2 = cylinders::Cylinder::parse(cyl_opt.same, params);
                bool same = cylinders::coincide(c1, c2);
                if (text) emit.line(same ? "coincide" : "distinct");
                else
                    emit.json({{"base", c1.to_string()},
                               {"other", c2.to_string()},
                               {"coincide", same}});
            } else {
                auto c = cylinders::Cylinder::parse(cyl_opt.base, params);
                auto iv = cylinders::interval(c);
                ordered_json doc{{"base", c.to_string()},
                                 {"rank", c.rank()},
                                 {"interval", detail::interval_json(iv)},
                                 {"length", rat(iv.length())}};
                if (cyl_opt.children) {
                    ordered_json kids = ordered_json::array();
                    for (const auto& child : cylinders::children(c))
                        kids.push_back({{"base", child.to_string()},
                                        {"interval", detail::interval_json(
                                                         cylinders::interval(child))}});
                    doc["children"] = kids;
                }
                if (text) {
                    emit.line(rat(iv.lo) + " " + rat(iv.hi));
                } else {
                    emit.json(doc);
                }
            }
        } else if (sc_overlap->parsed()) {
            if (overlap_opt.check_rank) {
                auto p = cylinders::overlap_cylinder_offset(params);
                if (text) emit.line(p ? std::to_string(*p) : "none");
                else {
                    ordered_json doc;
                    doc["offset_p"] = p ? ordered_json(*p) : ordered_json(nullptr);
                    emit.json(doc);
                }
            } else {
                if (overlap_opt.digit < 0) throw usage_error("overlap requires --digit or --check-rank");
                auto c = cylinders::Cylinder::parse(overlap_opt.base, params);
                auto ov = cylinders::adjacent_overlap(c, overlap_opt.digit);
                Rational ratio = ov.length() / cylinders::interval(c).length();
                if (text) emit.line(rat(ov.lo) + " " + rat(ov.hi));
                else
                    emit.json({{"base", c.to_string()},
                               {"digit", overlap_opt.digit},
                               {"overlap", detail::interval_json(ov)},
                               {"length", rat(ov.length())},
                               {"parent_ratio", rat(ratio)}});
            }
        } else if (sc_census->parsed()) {
            Rational x = Rational::parse(census_opt.x);
            int modes = (census_opt.count_n >= 0) + (census_opt.max_count >= 0) +
                        (census_opt.terminating ? 1 : 0);
            if (modes != 1)
                throw usage_error("census needs exactly one of --count-n, --enumerate, --terminating");
            if (census_opt.count_n >= 0) {
                if (census_opt.count_n > cfg.max_depth)
                    throw budget_error("prefix length exceeds depth budget");
                BigInt n = census::count_prefixes(x, params, static_cast<size_t>(census_opt.count_n));
                if (text) emit.line(n.to_string());
                else
                    emit.json({{"x", rat(x)},
                               {"n", census_opt.count_n},
                               {"count", n.to_string()}});
            } else if (census_opt.terminating) {
                auto witness = numerals::terminating_representation(x, params);
                if (text) emit.line(witness ? witness->to_string() : "none");
                else {
                    ordered_json doc{{"x", rat(x)}, {"terminating", witness.has_value()}};
                    doc["witness"] = witness ? ordered_json(witness->to_string())
                                             : ordered_json(nullptr);
                    emit.json(doc);
                }
            } else {
                std::optional<size_t> max_pre;
                if (census_opt.max_preperiod >= 0)
                    max_pre = static_cast<size_t>(census_opt.max_preperiod);
                auto result = census::enumerate_representations(
                    x, params, static_cast<size_t>(census_opt.max_count), max_pre);
                if (text) {
                    for (const auto& rep : result.reps) emit.line(rep.to_string());
                } else {
                    ordered_json arr = ordered_json::array();
                    for (const auto& rep : result.reps) arr.push_back(rep.to_string());
                    emit.json({{"x", rat(x)},
                               {"count", result.reps.size()},
                               {"complete", result.complete},
                               {"reps", arr}});
                }
            }
        } else if (sc_classify->parsed()) {
            Rational x = Rational::parse(classify_opt.x);
            if (classify_opt.level) {
                auto level = projection::classify_level(x, params);
                ordered_json doc{{"y0", rat(x)}};
                doc.update(detail::cardinality_json(level.cardinality));
                doc["constant_r_tail"] = level.has_constant_r_tail;
                if (text) emit.line(level.cardinality.to_string());
                else emit.json(doc);
            } else {
                auto cls = census::classify(x, params);
                ordered_json doc{{"x", rat(x)}};
                doc.update(detail::cardinality_json(cls));
                if (text) emit.line(cls.to_string());
                else emit.json(doc);
            }
        } else if (sc_feval->parsed()) {
            Rational x = Rational::parse(feval_opt.x);
            if (feval_opt.feq_digit >= 0) {
                bool holds = projection::functional_equation_holds(feval_opt.feq_digit, x, params);
                if (text) emit.line(holds ? "true" : "false");
                else
                    emit.json({{"x", rat(x)},
                               {"digit", feval_opt.feq_digit},
                               {"functional_equation_holds", holds}});
            } else {
                Rational fx = projection::evaluate(x, params);
                ordered_json doc{{"x", rat(x)}, {"f", rat(fx)}};
                if (feval_opt.with_rep)
                    doc["rep"] = projection::canonical_digits(x, params).to_string();
                if (x == Rational(1))
                    doc["note"] = "f(1) = x_max (digit-map value of the constant-r stream)";
                if (text) emit.line(rat(fx));
                else emit.json(doc);
            }
        } else if (sc_jumps->parsed()) {
            Rational x = Rational::parse(jumps_opt.x);
            auto rank = projection::binary_rank(x, params);
            ordered_json doc{{"x", rat(x)}};
            doc["binary_rank"] = rank ? ordered_json(*rank) : ordered_json(nullptr);
            if (rank) doc["jump"] = rat(projection::jump(x, params));
            if (jumps_opt.gap_k >= 0) {
                if (jumps_opt.gap_k > cfg.max_depth)
                    throw budget_error("gap depth exceeds depth budget");
                Rational gap =
                    projection::one_sided_gap(x, params, static_cast<size_t>(jumps_opt.gap_k));
                doc["gap_k"] = jumps_opt.gap_k;
                doc["gap"] = rat(gap);
            }
            if (text) emit.line(rank ? rat(projection::jump(x, params)) : "none");
            else emit.json(doc);
        } else if (sc_witness->parsed()) {
            auto c = cylinders::Cylinder::parse(witness_opt.base, params);
            auto w = projection::monotonicity_witness(c.base, params);
            if (text) {
                emit.line(rat(w.f1) + " " + rat(w.f2) + " " + rat(w.f3));
            } else {
                emit.json({{"base", c.to_string()},
                           {"x", {rat(w.x1), rat(w.x2), rat(w.x3)}},
                           {"f", {rat(w.f1), rat(w.f2), rat(w.f3)}},
                           {"rise", rat(w.f2 - w.f1)},
                           {"fall", rat(w.f3 - w.f2)}});
            }
        } else if (sc_graph->parsed()) {
            if (graph_opt.n < 0 || graph_opt.n > cfg.max_sample_exponent)
                throw budget_error("sample depth exceeds budget");
            auto sample = projection::graph_sample(params, static_cast<int>(graph_opt.n));
            if (!graph_opt.box.empty()) {
                auto rows = projection::box_counts(sample, detail::parse_int_list(graph_opt.box));
                if (cfg.format == "csv") {
                    emit.line("exponent,scale,count,slope");
                    for (const auto& r0 : rows) {
                        std::ostringstream os;
                        os << r0.exponent << "," << r0.scale << "," << r0.count << "," << r0.slope;
                        emit.line(os.str());
                    }
                } else if (text) {
                    for (const auto& r0 : rows)
                        emit.line(std::to_string(r0.exponent) + " " + std::to_string(r0.count) +
                                  " " + std::to_string(r0.slope));
                } else {
                    ordered_json arr = ordered_json::array();
                    for (const auto& r0 : rows)
                        arr.push_back({{"exponent", r0.exponent},
                                       {"scale", r0.scale},
                                       {"count", r0.count},
                                       {"slope", r0.slope}});
                    emit.json({{"n", graph_opt.n}, {"box_counts", arr}});
                }
            } else if (cfg.format == "csv") {
                emit.line("x_num,x_den,y_num,y_den");
                for (size_t i = 0; i < sample.size(); ++i) {
                    Rational x = sample.x_at(i), y = sample.y_at(i);
                    emit.line(x.num().to_string() + "," + x.den().to_string() + "," +
                              y.num().to_string() + "," + y.den().to_string());
                }
            } else if (text) {
                for (size_t i = 0; i < sample.size(); ++i)
                    emit.line(rat(sample.x_at(i)) + " " + rat(sample.y_at(i)));
            } else {
                ordered_json arr = ordered_json::array();
                for (size_t i = 0; i < sample.size(); ++i)
                    arr.push_back({{"x", rat(sample.x_at(i))}, {"y", rat(sample.y_at(i))}});
                emit.json({{"n", graph_opt.n}, {"points", arr}});
            }
        } else if (sc_ifs->parsed()) {
            auto maps = projection::ifs_maps(params);
            if (text) {
                for (const auto& m : maps)
                    emit.line(std::to_string(m.digit) + ": x' = " + rat(m.x_scale) + " x + " +
                              rat(m.x_offset) + ", y' = " + rat(m.y_scale) + " y + " +
                              rat(m.y_offset));
            } else {
                ordered_json arr = ordered_json::array();
                for (const auto& m : maps) {
                    ordered_json matrix = ordered_json::array();
                    matrix.push_back(ordered_json::array({rat(m.x_scale), rat(Rational(0))}));
                    matrix.push_back(ordered_json::array({rat(Rational(0)), rat(m.y_scale)}));
                    arr.push_back({{"digit", m.digit},
                                   {"matrix", matrix},
                                   {"offset", {rat(m.x_offset), rat(m.y_offset)}}});
                }
                emit.json({{"maps", arr}});
            }
        } else if (sc_integral->parsed()) {
            Rational exact = projection::exact_integral(params);
            ordered_json doc{{"exact", rat(exact)}};
            if (integral_opt.estimate_n >= 0) {
                if (integral_opt.estimate_n > cfg.max_sample_exponent)
                    throw budget_error("estimate depth exceeds budget");
                Rational estimate =
                    projection::riemann_estimate(params, static_cast<int>(integral_opt.estimate_n));
                doc["estimate_n"] = integral_opt.estimate_n;
                doc["estimate"] = rat(estimate);
                doc["error"] = rat(exact - estimate);
            }
            if (text) emit.line(rat(exact));
            else emit.json(doc);
        } else if (sc_variation->parsed()) {
            if (variation_opt.n < 1) throw usage_error("variation requires --n >= 1");
            if (variation_opt.n > cfg.max_depth)
                throw budget_error("variation rank exceeds depth budget");
            ordered_json sums = ordered_json::array();
            Rational total(0), power(1);
            const Rational unit(params.r - params.s + 1, params.s - 1);
            const Rational ratio(params.r, params.s);
            for (long long m = 1; m <= variation_opt.n; ++m) {
                power *= ratio;
                total += unit * power;
                sums.push_back(rat(total));
            }
            if (text) {
                for (const auto& s0 : sums) emit.line(s0.get<std::string>());
            } else {
                emit.json({{"n", variation_opt.n},
                           {"partial_sums", sums},
                           {"increment_ratio", rat(Rational(params.r, params.s))}});
            }
        } else if (sc_dims->parsed()) {
            ordered_json doc;
            doc["self_affine"] = detail::dimension_json(projection::self_affine_dimension(params));
            try {
                doc["unique_set"] = detail::dimension_json(census::unique_set_dimension(params));
            } catch (const regime_error&) {
                doc["unique_set"] = "regime_error";
            }
            doc["cantor_levelset"] =
                detail::dimension_json(census::cantor_levelset_dimension(params));
            if (text) {
                emit.line("self_affine " + std::to_string(doc["self_affine"]["value"].get<double>()));
                emit.line(doc["unique_set"].is_string()
                              ? "unique_set regime_error"
                              : "unique_set " +
                                    std::to_string(doc["unique_set"]["value"].get<double>()));
                emit.line("cantor_levelset " +
                          std::to_string(doc["cantor_levelset"]["value"].get<double>()));
            } else {
                emit.json(doc);
            }
        } else if (sc_automaton->parsed()) {
            Rational x = Rational::parse(automaton_opt.x);
            auto a = census::build_automaton(x, params,
                                             static_cast<size_t>(cfg.max_automaton_states));
            if (cfg.format == "dot") {
                out << census::to_dot(a);
            } else if (text) {
                for (size_t i = 0; i < a.size(); ++i)
                    for (auto [d, t] : a.edges[i])
                        emit.line(a.states[i].to_string() + " -" + std::to_string(d) + "-> " +
                                  a.states[t].to_string());
            } else {
                ordered_json states = ordered_json::array();
                for (const auto& st : a.states) states.push_back(st.to_string());
                ordered_json edges = ordered_json::array();
                for (size_t i = 0; i < a.size(); ++i)
                    for (auto [d, t] : a.edges[i])
                        edges.push_back({{"from", a.states[i].to_string()},
                                         {"digit", d},
                                         {"to", a.states[t].to_string()}});
                emit.json({{"start", a.start.to_string()},
                           {"state_bound", a.state_bound.to_string()},
                           {"states", states},
                           {"edges", edges}});
            }
        }
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << ordered_json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    } catch (const budget_error& e) {
        err << ordered_json{{"error", {{"type", "budget"}, {"message", e.what()}}}}.dump() << "\n";
        return 3;
    } catch (const usage_error& e) {
        err << ordered_json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    } catch (const domain_error& e) {
        err << ordered_json{{"error", {{"type", "domain"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << ordered_json{{"error", {{"type", "domain"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    }
}

}  // namespace rsrep::cli
