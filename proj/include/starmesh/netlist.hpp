#pragma once

// Plain-text netlist format:
//
//   # comment
//   rig rational
//   dom 1
//   cod 1
//   node a
//   node b
//   port 0 a
//   port 1 b
//   edge a b 3/2
//
// Header lines (rig, dom, cod, in that order) come first; ports use
// indices 0..dom+cod-1 with dom ports first; values follow the declared
// rig's grammar. '#' starts a comment, blank lines are ignored.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "circuit.hpp"

namespace starmesh {

enum class netlist_errc {
    bad_syntax,
    unknown_rig,
    bad_signature,
    duplicate_node,
    undeclared_node,
    duplicate_port,
    bad_port_index,
    missing_port,
    bad_value,
    zero_conductance,
};

inline std::string_view to_string(netlist_errc c) {
    switch (c) {
        case netlist_errc::bad_syntax: return "bad-syntax";
        case netlist_errc::unknown_rig: return "unknown-rig";
        case netlist_errc::bad_signature: return "bad-signature";
        case netlist_errc::duplicate_node: return "duplicate-node";
        case netlist_errc::undeclared_node: return "undeclared-node";
        case netlist_errc::duplicate_port: return "duplicate-port";
        case netlist_errc::bad_port_index: return "bad-port-index";
        case netlist_errc::missing_port: return "missing-port";
        case netlist_errc::bad_value: return "bad-value";
        case netlist_errc::zero_conductance: return "zero-conductance";
    }
    return "?";
}

/// Netlist diagnostic: code plus the 1-based source line it points at.
struct parse_error : error {
    netlist_errc code;
    int line;

    parse_error(netlist_errc c, int ln, const std::string& msg)
        : error("line " + std::to_string(ln) + ": " + std::string(to_string(c)) + ": " + msg),
          code(c),
          line(ln) {}
};

using AnyCircuit = std::variant<Circuit<RationalRig>, Circuit<Float64Rig>,
                                Circuit<LatticeRig>, Circuit<TropicalRig>>;

inline std::string_view rig_name_of(const AnyCircuit& c) {
    return std::visit([](const auto& cc) {
        return std::decay_t<decltype(cc)>::rig_type::name;
    }, c);
}

namespace detail {

struct Stmt {
    int line;
    std::vector<std::string> tokens;
};

inline std::vector<Stmt> tokenize_netlist(std::string_view text) {
    std::vector<Stmt> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        Stmt s{line_no, {}};
        std::istringstream is{std::string(line)};
        std::string tok;
        while (is >> tok) s.tokens.push_back(tok);
        if (!s.tokens.empty()) out.push_back(std::move(s));
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

inline std::optional<long> parse_count(const std::string& s) {
    if (s.empty() || s.size() > 9) return std::nullopt;
    for (char ch : s)
        if (ch < '0' || ch > '9') return std::nullopt;
    return std::stol(s);
}

template <rig R>
Circuit<R> parse_body(const std::vector<Stmt>& stmts, int dom, int cod) {
    Circuit<R> c;
    c.dom = dom;
    c.cod = cod;
    std::map<std::string, NodeId> names;
    std::vector<bool> port_seen(static_cast<std::size_t>(dom + cod), false);
    c.ports.assign(static_cast<std::size_t>(dom + cod), 0);

    auto lookup = [&](const std::string& name, int line) {
        auto it = names.find(name);
        if (it == names.end())
            throw parse_error(netlist_errc::undeclared_node, line, "node '" + name + "'");
        return it->second;
    };

    for (const auto& s : stmts) {
        const auto& t = s.tokens;
        if (t[0] == "node") {
            if (t.size() != 2)
                throw parse_error(netlist_errc::bad_syntax, s.line, "expected: node <id>");
            if (names.count(t[1]))
                throw parse_error(netlist_errc::duplicate_node, s.line, "node '" + t[1] + "'");
            NodeId id = static_cast<NodeId>(names.size());
            names.emplace(t[1], id);
            c.nodes.push_back(id);
        } else if (t[0] == "port") {
            if (t.size() != 3)
                throw parse_error(netlist_errc::bad_syntax, s.line, "expected: port <index> <node-id>");
            auto idx = parse_count(t[1]);
            if (!idx || *idx >= dom + cod)
                throw parse_error(netlist_errc::bad_port_index, s.line, "index '" + t[1] + "'");
            if (port_seen[static_cast<std::size_t>(*idx)])
                throw parse_error(netlist_errc::duplicate_port, s.line, "index " + t[1]);
            port_seen[static_cast<std::size_t>(*idx)] = true;
            c.ports[static_cast<std::size_t>(*idx)] = lookup(t[2], s.line);
        } else if (t[0] == "edge") {
            if (t.size() != 4)
                throw parse_error(netlist_errc::bad_syntax, s.line,
                                  "expected: edge <node-id> <node-id> <value>");
            NodeId u = lookup(t[1], s.line);
            NodeId v = lookup(t[2], s.line);
            auto val = R::parse(t[3]);
            if (!val)
                throw parse_error(netlist_errc::bad_value, s.line,
                                  "'" + t[3] + "' is not a " + std::string(R::name) + " value");
            if (is_rig_zero<R>(*val))
                throw parse_error(netlist_errc::zero_conductance, s.line,
                                  "edge conductance must be nonzero");
            c.edges.push_back({u, v, std::move(*val)});
        } else {
            throw parse_error(netlist_errc::bad_syntax, s.line, "unknown keyword '" + t[0] + "'");
        }
    }
    for (std::size_t i = 0; i < port_seen.size(); ++i)
        if (!port_seen[i])
            throw parse_error(netlist_errc::missing_port, 0,
                              "port " + std::to_string(i) + " never assigned");
    return c;
}

} // namespace detail

/// Parses a netlist document into a circuit over the rig it declares.
/// Throws parse_error with a line number and a distinct code per defect.
inline AnyCircuit parse_netlist(std::string_view text) {
    auto stmts = detail::tokenize_netlist(text);
    if (stmts.size() < 3 || stmts[0].tokens[0] != "rig" || stmts[1].tokens[0] != "dom" ||
        stmts[2].tokens[0] != "cod")
        throw parse_error(netlist_errc::bad_syntax, stmts.empty() ? 1 : stmts[0].line,
                          "header must be: rig <name>, dom <n>, cod <m>");
    if (stmts[0].tokens.size() != 2)
        throw parse_error(netlist_errc::bad_syntax, stmts[0].line, "expected: rig <name>");
    const std::string& rig_name = stmts[0].tokens[1];
    auto dom = stmts[1].tokens.size() == 2 ? detail::parse_count(stmts[1].tokens[1]) : std::nullopt;
    auto cod = stmts[2].tokens.size() == 2 ? detail::parse_count(stmts[2].tokens[1]) : std::nullopt;
    if (!dom) throw parse_error(netlist_errc::bad_signature, stmts[1].line, "dom must be a count");
    if (!cod) throw parse_error(netlist_errc::bad_signature, stmts[2].line, "cod must be a count");
    if (*dom + *cod > 1000000)
        throw parse_error(netlist_errc::bad_signature, stmts[1].line, "signature too large");

    std::vector<detail::Stmt> body(stmts.begin() + 3, stmts.end());
    int d = static_cast<int>(*dom), k = static_cast<int>(*cod);
    if (rig_name == RationalRig::name) return detail::parse_body<RationalRig>(body, d, k);
    if (rig_name == Float64Rig::name) return detail::parse_body<Float64Rig>(body, d, k);
    if (rig_name == LatticeRig::name) return detail::parse_body<LatticeRig>(body, d, k);
    if (rig_name == TropicalRig::name) return detail::parse_body<TropicalRig>(body, d, k);
    throw parse_error(netlist_errc::unknown_rig, stmts[0].line, "'" + rig_name + "'");
}

/// Typed parse; throws usage_error if the document declares another rig.
template <rig R>
Circuit<R> parse_netlist_as(std::string_view text) {
    auto any = parse_netlist(text);
    if (auto* c = std::get_if<Circuit<R>>(&any)) return std::move(*c);
    throw usage_error("netlist declares rig '" + std::string(rig_name_of(any)) + "', expected '" +
                      std::string(R::name) + "'");
}

/// Deterministic emitter: nodes are renamed n0..nk-1 in id order, edges
/// are sorted, values use the rig grammar. parse(emit(c)) reproduces c up
/// to that renaming, and emit is a fixpoint of parse-then-emit.
template <rig R>
std::string emit_netlist(const Circuit<R>& c) {
    std::ostringstream os;
    os << "rig " << R::name << '\n';
    os << "dom " << c.dom << '\n';
    os << "cod " << c.cod << '\n';
    auto dense = [&c](NodeId id) {
        return static_cast<std::size_t>(
            std::lower_bound(c.nodes.begin(), c.nodes.end(), id) - c.nodes.begin());
    };
    for (std::size_t i = 0; i < c.nodes.size(); ++i) os << "node n" << i << '\n';
    for (std::size_t p = 0; p < c.ports.size(); ++p)
        os << "port " << p << " n" << dense(c.ports[p]) << '\n';
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> lines;
    lines.reserve(c.edges.size());
    for (const auto& e : c.edges) {
        auto u = dense(e.u), v = dense(e.v);
        if (u > v) std::swap(u, v);
        lines.emplace_back(u, v, R::format(e.value));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [u, v, val] : lines)
        os << "edge n" << u << " n" << v << ' ' << val << '\n';
    return os.str();
}

} // namespace starmesh
