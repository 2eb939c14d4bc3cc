#pragma once

// Command-line driver. Kept as a library function so the commands are
// testable in-process; the installed binary is a thin wrapper.
//
// Exit codes: 0 success (eq: equal; oracle: agreement; fuzz: all pass),
// 1 negative result, 2 usage, I/O, or parse errors.

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "netlist.hpp"
#include "oracle.hpp"

namespace starmesh::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline EliminationOrder parse_order(const std::string& s) {
    if (s == "min-degree") return EliminationOrder::min_degree();
    if (s.rfind("random:", 0) == 0) {
        const std::string seed = s.substr(7);
        if (!seed.empty() && seed.find_first_not_of("0123456789") == std::string::npos)
            return EliminationOrder::random(std::stoull(seed));
    }
    throw usage_error("--order must be min-degree or random:<seed>");
}

inline int cmd_normalize(const std::string& file, bool trace, const std::string& order_str,
                         std::ostream& out) {
    auto order = parse_order(order_str);
    auto any = parse_netlist(read_file(file));
    std::visit(
        [&](const auto& c) {
            auto res = normalize(c, order);
            if (trace) out << to_string(res.trace);
            out << res.form.to_string() << '\n';
        },
        any);
    return 0;
}

inline int cmd_eq(const std::string& file_a, const std::string& file_b, std::ostream& out) {
    auto a = parse_netlist(read_file(file_a));
    auto b = parse_netlist(read_file(file_b));
    if (a.index() != b.index())
        throw usage_error("eq: rig mismatch ('" + std::string(rig_name_of(a)) + "' vs '" +
                          std::string(rig_name_of(b)) + "')");
    bool equal = std::visit(
        [&](const auto& ca) {
            using C = std::decay_t<decltype(ca)>;
            return decide_eq(ca, std::get<C>(b));
        },
        a);
    out << (equal ? "equal" : "not equal") << '\n';
    return equal ? 0 : 1;
}

inline int cmd_oracle(const std::string& file, std::ostream& out) {
    auto any = parse_netlist(read_file(file));
    auto* c = std::get_if<Circuit<RationalRig>>(&any);
    if (!c)
        throw usage_error("oracle: unsupported rig '" + std::string(rig_name_of(any)) +
                          "' (requires rational)");
    bool ok = agrees_with_normal_form(*c);
    out << (ok ? "agree" : "disagree") << '\n';
    return ok ? 0 : 1;
}

struct FuzzParams {
    std::string rig;
    int count = 100;
    std::uint64_t seed = 0;
    int max_nodes = 8;
    int max_edges = 0; // 0 = twice max_nodes
    int ports = 4;
    int orders = 5;
};

template <rig R>
int fuzz_campaign(const FuzzParams& p, std::ostream& out) {
    const int max_edges = p.max_edges > 0 ? p.max_edges : 2 * p.max_nodes;
    int confluent = 0;
    int oracle_pass = 0;
    const bool exact = !std::is_same_v<R, Float64Rig>;
    const bool has_oracle = std::is_same_v<R, RationalRig> || std::is_same_v<R, LatticeRig>;

    for (int i = 0; i < p.count; ++i) {
        CircuitGenSpec gs{p.max_nodes, max_edges, p.ports,
                          derive_seed(p.seed, static_cast<std::uint64_t>(i))};
        auto c = random_circuit<R>(gs);
        auto base = normalize(c);
        bool ok = true;
        for (int j = 1; j <= p.orders && ok; ++j) {
            auto alt = normalize(c, EliminationOrder::random(derive_seed(
                                        p.seed, static_cast<std::uint64_t>(i) * 8192 +
                                                    static_cast<std::uint64_t>(j))));
            ok = exact ? alt.form.to_string() == base.form.to_string()
                       : alt.form.equals(base.form);
        }
        confluent += ok;

        if constexpr (std::is_same_v<R, RationalRig>) {
            oracle_pass += agrees_with_normal_form(c);
        } else if constexpr (std::is_same_v<R, LatticeRig>) {
            std::set<std::pair<int, int>> mesh_pairs;
            for (const auto& e : base.form.mesh) mesh_pairs.insert({e.a, e.b});
            oracle_pass += mesh_pairs == internal_path_adjacency(c) &&
                           reachability_closure(base.form.to_circuit()) ==
                               reachability_closure(c);
        }
    }

    out << "fuzz rig=" << R::name << " count=" << p.count << " orders=" << p.orders
        << " seed=" << p.seed << " max-nodes=" << p.max_nodes << " max-edges=" << max_edges
        << " ports=" << p.ports << '\n';
    out << "confluence: " << confluent << '/' << p.count << '\n';
    if (has_oracle)
        out << "oracle: " << oracle_pass << '/' << p.count << '\n';
    else
        out << "oracle: n/a" << '\n';
    bool pass = confluent == p.count && (!has_oracle || oracle_pass == p.count);
    out << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

inline int cmd_fuzz(const FuzzParams& p, std::ostream& out) {
    if (p.count < 1 || p.orders < 0 || p.max_nodes < 1 || p.ports < 0)
        throw usage_error("fuzz: bounds must be positive");
    if (p.rig == RationalRig::name) return fuzz_campaign<RationalRig>(p, out);
    if (p.rig == Float64Rig::name) return fuzz_campaign<Float64Rig>(p, out);
    if (p.rig == LatticeRig::name) return fuzz_campaign<LatticeRig>(p, out);
    if (p.rig == TropicalRig::name) return fuzz_campaign<TropicalRig>(p, out);
    throw usage_error("fuzz: unknown rig '" + p.rig + "'");
}

} // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"resistor network normalizer"};
    app.require_subcommand(1);

    std::string file;
    std::string file_b;
    bool trace = false;
    std::string order = "min-degree";
    auto* norm = app.add_subcommand("normalize", "reduce a netlist to mesh normal form");
    norm->add_option("file", file, "input netlist")->required();
    norm->add_flag("--trace", trace, "print one line per rewrite step");
    norm->add_option("--order", order, "elimination order: min-degree or random:<seed>");

    auto* eq = app.add_subcommand("eq", "decide equality of two netlists");
    eq->add_option("a", file, "first netlist")->required();
    eq->add_option("b", file_b, "second netlist")->required();

    auto* orc = app.add_subcommand("oracle", "check the normal form against Kron reduction");
    orc->add_option("file", file, "input netlist (rational rig)")->required();

    detail::FuzzParams fp;
    auto* fz = app.add_subcommand("fuzz", "run a seeded confluence and oracle campaign");
    fz->add_option("--rig", fp.rig, "rational, float64, lattice, or tropical")->required();
    fz->add_option("--count", fp.count, "number of random circuits");
    fz->add_option("--seed", fp.seed, "campaign seed");
    fz->add_option("--max-nodes", fp.max_nodes, "node bound per circuit");
    fz->add_option("--max-edges", fp.max_edges, "edge bound (default: twice max-nodes)");
    fz->add_option("--ports", fp.ports, "boundary port count");
    fz->add_option("--orders", fp.orders, "random elimination orders per circuit");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (app.got_subcommand(norm)) return detail::cmd_normalize(file, trace, order, out);
        if (app.got_subcommand(eq)) return detail::cmd_eq(file, file_b, out);
        if (app.got_subcommand(orc)) return detail::cmd_oracle(file, out);
        return detail::cmd_fuzz(fp, out);
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace starmesh::cli
