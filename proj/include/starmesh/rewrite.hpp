#pragma once

// Single-step rewrites on canonical circuits: parallel merge, short-circuit
// (self-loop) deletion, and star-mesh elimination of an internal node. Every
// step records what it deleted and created plus the (N,P) measure on both
// sides, and every step strictly decreases the measure lexicographically.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"

namespace starmesh {

/// Termination measure: node count N, then parallel surplus P, compared
/// lexicographically. P counts every edge beyond the first on each node
/// pair; self-loops always count as surplus (a loop is a resistor in
/// parallel with the identification of its endpoints).
struct Measure {
    std::int64_t node_count = 0;
    std::int64_t parallel_surplus = 0;
    auto operator<=>(const Measure&) const = default;
};

inline std::string to_string(const Measure& m) {
    return "(" + std::to_string(m.node_count) + "," + std::to_string(m.parallel_surplus) + ")";
}

template <rig R>
Measure measure(const Circuit<R>& c) {
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (const auto& e : c.edges)
        if (e.u != e.v) pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    return {static_cast<std::int64_t>(c.nodes.size()),
            static_cast<std::int64_t>(c.edges.size()) - static_cast<std::int64_t>(pairs.size())};
}

enum class RuleKind { parallel, short_circuit, star_mesh };

inline std::string_view rule_name(RuleKind k) {
    switch (k) {
        case RuleKind::parallel: return "parallel";
        case RuleKind::short_circuit: return "short-circuit";
        case RuleKind::star_mesh: return "star-mesh";
    }
    return "?";
}

template <rig R>
struct RewriteStep {
    RuleKind rule = RuleKind::parallel;
    NodeId center = 0; // star_mesh only: the eliminated node
    int degree = 0;    // star_mesh only: arm count
    std::vector<NodeId> deleted_nodes;
    std::vector<Edge<R>> deleted_edges;
    std::vector<Edge<R>> created_edges;
    Measure before;
    Measure after;
};

template <rig R>
struct Trace {
    Circuit<R> initial;
    Circuit<R> result;
    std::vector<RewriteStep<R>> steps;
};

/// One arm of a star: the neighbor the arm reaches and its conductance.
template <rig R>
struct Arm {
    NodeId neighbor = 0;
    typename R::value_type value{};
};

namespace detail {

template <rig R>
void check_step_decreases(const RewriteStep<R>& s) {
    if (!(s.after < s.before))
        throw internal_error("rewrite step failed to decrease the (N,P) measure");
}

} // namespace detail

/// The star-mesh transformation: given the arms of a star whose center is
/// being eliminated, returns the mesh edge for each unordered neighbor
/// pair, with conductance y_i * y_j / (sum of all arms). Zero or one arm
/// yields no edges.
template <rig R>
std::vector<Edge<R>> star_to_mesh(std::span<const Arm<R>> arms) {
    for (const auto& a : arms)
        if (is_rig_zero<R>(a.value))
            throw invalid_conductance("star_to_mesh: zero arm conductance");
    for (std::size_t i = 0; i < arms.size(); ++i)
        for (std::size_t j = i + 1; j < arms.size(); ++j)
            if (arms[i].neighbor == arms[j].neighbor)
                throw usage_error("star_to_mesh: duplicate neighbor (canonicalize first)");
    std::vector<Edge<R>> mesh;
    if (arms.size() <= 1) return mesh;

    auto sigma = arms[0].value;
    for (std::size_t i = 1; i < arms.size(); ++i) sigma = R::add(sigma, arms[i].value);
    if (is_rig_zero<R>(sigma))
        throw internal_error("star_to_mesh: arm sum is zero; rig is not positive");
    auto inv_sigma = R::inv(sigma);

    mesh.reserve(arms.size() * (arms.size() - 1) / 2);
    for (std::size_t i = 0; i < arms.size(); ++i) {
        for (std::size_t j = i + 1; j < arms.size(); ++j) {
            auto y = R::mul(R::mul(arms[i].value, arms[j].value), inv_sigma);
            mesh.push_back({std::min(arms[i].neighbor, arms[j].neighbor),
                            std::max(arms[i].neighbor, arms[j].neighbor), std::move(y)});
        }
    }
    return mesh;
}

/// Removes internal node v, replacing its star by the equivalent mesh and
/// merging any parallels the mesh creates. Requires a canonical circuit.
template <rig R>
std::pair<Circuit<R>, RewriteStep<R>> eliminate_internal(const Circuit<R>& c, NodeId v) {
    if (!c.has_node(v)) throw usage_error("eliminate_internal: unknown node");
    if (c.is_boundary(v)) throw usage_error("eliminate_internal: node is not internal");
    if (!c.is_canonical()) throw usage_error("eliminate_internal: circuit is not canonical");

    RewriteStep<R> step;
    step.rule = RuleKind::star_mesh;
    step.center = v;
    step.before = measure(c);
    step.deleted_nodes.push_back(v);

    std::vector<Arm<R>> arms;
    Circuit<R> out;
    out.dom = c.dom;
    out.cod = c.cod;
    out.ports = c.ports;
    out.nodes.reserve(c.nodes.size() - 1);
    for (NodeId id : c.nodes)
        if (id != v) out.nodes.push_back(id);
    for (const auto& e : c.edges) {
        if (e.u == v)
            arms.push_back({e.v, e.value});
        else if (e.v == v)
            arms.push_back({e.u, e.value});
        else
            out.edges.push_back(e);
        if (e.u == v || e.v == v) step.deleted_edges.push_back(e);
    }
    step.degree = static_cast<int>(arms.size());

    for (auto& m : star_to_mesh<R>(std::span<const Arm<R>>(arms))) {
        bool merged = false;
        for (auto& e : out.edges) {
            if (e.u == m.u && e.v == m.v) {
                step.deleted_edges.push_back(e);
                e.value = R::add(e.value, m.value);
                step.created_edges.push_back(e);
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.edges.push_back(m);
            step.created_edges.push_back(std::move(m));
        }
    }
    detail::sort_edges<R>(out.edges);

    step.after = measure(out);
    detail::check_step_decreases(step);
    return {std::move(out), std::move(step)};
}

/// Collapses all parallel edges between u and v into one edge carrying the
/// rig sum. Requires at least two such edges.
template <rig R>
std::pair<Circuit<R>, RewriteStep<R>> merge_parallel(const Circuit<R>& c, NodeId u, NodeId v) {
    if (u == v) throw usage_error("merge_parallel: endpoints must differ");
    NodeId a = std::min(u, v), b = std::max(u, v);

    RewriteStep<R> step;
    step.rule = RuleKind::parallel;
    step.before = measure(c);

    Circuit<R> out;
    out.dom = c.dom;
    out.cod = c.cod;
    out.ports = c.ports;
    out.nodes = c.nodes;
    std::optional<typename R::value_type> sum;
    for (const auto& e : c.edges) {
        if (std::min(e.u, e.v) == a && std::max(e.u, e.v) == b) {
            step.deleted_edges.push_back(e);
            sum = sum ? R::add(*sum, e.value) : e.value;
        } else {
            out.edges.push_back(e);
        }
    }
    if (step.deleted_edges.size() < 2)
        throw usage_error("merge_parallel: fewer than two parallel edges");
    out.edges.push_back({a, b, *sum});
    step.created_edges.push_back({a, b, *sum});
    detail::sort_edges<R>(out.edges);

    step.after = measure(out);
    detail::check_step_decreases(step);
    return {std::move(out), std::move(step)};
}

/// Deletes one self-loop edge (the short-circuit rule: a resistor whose
/// endpoints are identified carries no information).
template <rig R>
std::pair<Circuit<R>, RewriteStep<R>> remove_loop(const Circuit<R>& c, NodeId at) {
    RewriteStep<R> step;
    step.rule = RuleKind::short_circuit;
    step.before = measure(c);

    Circuit<R> out;
    out.dom = c.dom;
    out.cod = c.cod;
    out.ports = c.ports;
    out.nodes = c.nodes;
    bool removed = false;
    for (const auto& e : c.edges) {
        if (!removed && e.u == at && e.v == at) {
            step.deleted_edges.push_back(e);
            removed = true;
        } else {
            out.edges.push_back(e);
        }
    }
    if (!removed) throw usage_error("remove_loop: no self-loop at node");

    step.after = measure(out);
    detail::check_step_decreases(step);
    return {std::move(out), std::move(step)};
}

/// Canonicalization as traced rewrite steps: deletes every self-loop, then
/// merges every parallel family, appending one step per rewrite.
template <rig R>
Circuit<R> canonicalize_steps(Circuit<R> c, std::vector<RewriteStep<R>>& steps) {
    for (auto& e : c.edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    detail::sort_edges<R>(c.edges);

    for (;;) {
        auto loop = std::find_if(c.edges.begin(), c.edges.end(),
                                 [](const Edge<R>& e) { return e.u == e.v; });
        if (loop == c.edges.end()) break;
        auto [next, step] = remove_loop(c, loop->u);
        c = std::move(next);
        steps.push_back(std::move(step));
    }
    for (;;) {
        std::optional<std::pair<NodeId, NodeId>> dup;
        for (std::size_t i = 1; i < c.edges.size() && !dup; ++i)
            if (c.edges[i - 1].u == c.edges[i].u && c.edges[i - 1].v == c.edges[i].v)
                dup = {c.edges[i].u, c.edges[i].v};
        if (!dup) break;
        auto [next, step] = merge_parallel(c, dup->first, dup->second);
        c = std::move(next);
        steps.push_back(std::move(step));
    }
    return c;
}

namespace detail {

template <rig R>
bool erase_matching_edge(std::vector<Edge<R>>& edges, const Edge<R>& target) {
    NodeId tu = std::min(target.u, target.v), tv = std::max(target.u, target.v);
    for (auto it = edges.begin(); it != edges.end(); ++it) {
        if (std::min(it->u, it->v) == tu && std::max(it->u, it->v) == tv &&
            R::eq(it->value, target.value)) {
            edges.erase(it);
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Replays the recorded steps from the initial snapshot and checks the
/// outcome matches the final snapshot (including each step's measure).
template <rig R>
bool replay(const Trace<R>& trace) {
    Circuit<R> c = trace.initial;
    for (const auto& step : trace.steps) {
        for (const auto& e : step.deleted_edges)
            if (!detail::erase_matching_edge<R>(c.edges, e)) return false;
        for (NodeId n : step.deleted_nodes) {
            auto it = std::lower_bound(c.nodes.begin(), c.nodes.end(), n);
            if (it == c.nodes.end() || *it != n) return false;
            c.nodes.erase(it);
        }
        for (const auto& e : step.created_edges) c.edges.push_back(e);
        if (measure(c) != step.after) return false;
    }
    return same_structure(c, trace.result);
}

template <rig R>
std::string to_string(const RewriteStep<R>& step) {
    std::ostringstream os;
    os << rule_name(step.rule);
    if (step.rule == RuleKind::star_mesh) os << ' ' << step.center;
    os << " ->";
    for (const auto& e : step.created_edges)
        os << ' ' << e.u << '-' << e.v << ':' << R::format(e.value);
    os << ' ' << to_string(step.after);
    return os.str();
}

template <rig R>
std::string to_string(const Trace<R>& trace) {
    std::string out;
    for (const auto& step : trace.steps) {
        out += to_string(step);
        out += '\n';
    }
    return out;
}

} // namespace starmesh
