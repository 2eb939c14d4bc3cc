#pragma once

// Open resistor networks as quotiented multigraphs. Junctions are nodes,
// bare wires are node identifications, and a circuit n -> m carries an
// ordered list of n+m boundary ports. Conductance-weighted edges are
// undirected and always nonzero.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "rig.hpp"
#include "union_find.hpp"

namespace starmesh {

using NodeId = std::uint32_t;

template <rig R>
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    typename R::value_type value{};
};

template <rig R>
class Circuit {
public:
    using rig_type = R;
    using value_type = typename R::value_type;

    int dom = 0;
    int cod = 0;
    std::vector<NodeId> ports; // size dom+cod, dom entries first
    std::vector<NodeId> nodes; // ascending, unique
    std::vector<Edge<R>> edges;

    static Circuit empty() { return Circuit{}; }

    /// Single resistor of conductance y as a map 1 -> 1.
    static Circuit resistor(value_type y) {
        if (is_rig_zero<R>(y))
            throw invalid_conductance("resistor: conductance must be nonzero");
        Circuit c;
        c.dom = 1;
        c.cod = 1;
        c.nodes = {0, 1};
        c.ports = {0, 1};
        c.edges.push_back({0, 1, std::move(y)});
        return c;
    }

    /// Junction with m inputs and n outputs: a single node carrying all ports.
    static Circuit spider(int m, int n) {
        if (m < 0 || n < 0) throw usage_error("spider: negative arity");
        Circuit c;
        c.dom = m;
        c.cod = n;
        c.nodes = {0};
        c.ports.assign(static_cast<std::size_t>(m + n), 0);
        return c;
    }

    static Circuit identity_wire() { return spider(1, 1); }

    /// The symmetry 2 -> 2: output ports cross over the input ports.
    static Circuit swap_wires() {
        Circuit c;
        c.dom = 2;
        c.cod = 2;
        c.nodes = {0, 1};
        c.ports = {0, 1, 1, 0};
        return c;
    }

    bool has_node(NodeId id) const {
        return std::binary_search(nodes.begin(), nodes.end(), id);
    }

    /// A node is boundary iff some port maps to it.
    bool is_boundary(NodeId id) const {
        return std::find(ports.begin(), ports.end(), id) != ports.end();
    }

    bool is_internal(NodeId id) const { return has_node(id) && !is_boundary(id); }

    std::vector<NodeId> internal_nodes() const {
        std::vector<NodeId> out;
        for (NodeId id : nodes)
            if (!is_boundary(id)) out.push_back(id);
        return out;
    }

    int degree(NodeId id) const {
        int d = 0;
        for (const auto& e : edges)
            if (e.u == id || e.v == id) ++d;
        return d;
    }

    NodeId fresh_node() {
        NodeId id = nodes.empty() ? 0 : nodes.back() + 1;
        nodes.push_back(id);
        return id;
    }

    void add_port(NodeId id) {
        if (!has_node(id)) throw usage_error("add_port: unknown node");
        ports.push_back(id);
    }

    void add_edge(NodeId u, NodeId v, value_type y) {
        if (!has_node(u) || !has_node(v)) throw usage_error("add_edge: unknown node");
        if (is_rig_zero<R>(y))
            throw invalid_conductance("add_edge: conductance must be nonzero");
        edges.push_back({u, v, std::move(y)});
    }

    /// For each port index, the minimum port index mapped to the same node.
    std::vector<int> port_partition() const {
        std::vector<int> blocks(ports.size(), 0);
        std::map<NodeId, int> first_seen;
        for (std::size_t p = 0; p < ports.size(); ++p) {
            auto [it, fresh] = first_seen.emplace(ports[p], static_cast<int>(p));
            blocks[p] = it->second;
            (void)fresh;
        }
        return blocks;
    }

    /// Boundary node -> block id (the minimum port index on that node).
    std::map<NodeId, int> boundary_blocks() const {
        std::map<NodeId, int> out;
        for (std::size_t p = 0; p < ports.size(); ++p)
            out.emplace(ports[p], static_cast<int>(p));
        return out;
    }

    /// Throws usage_error when basic well-formedness is violated.
    void check() const {
        if (dom < 0 || cod < 0) throw usage_error("circuit: negative arity");
        if (ports.size() != static_cast<std::size_t>(dom + cod))
            throw usage_error("circuit: port count does not match signature");
        if (!std::is_sorted(nodes.begin(), nodes.end()) ||
            std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
            throw usage_error("circuit: node list must be sorted and unique");
        for (NodeId p : ports)
            if (!has_node(p)) throw usage_error("circuit: port maps to unknown node");
        for (const auto& e : edges) {
            if (!has_node(e.u) || !has_node(e.v))
                throw usage_error("circuit: edge endpoint unknown");
            if (is_rig_zero<R>(e.value))
                throw invalid_conductance("circuit: zero-conductance edge");
        }
    }

    /// Canonical: well-formed, loop-free, at most one edge per node pair,
    /// edges stored with u < v in ascending order.
    bool is_canonical() const {
        for (const auto& e : edges)
            if (e.u >= e.v) return false;
        for (std::size_t i = 1; i < edges.size(); ++i) {
            if (edges[i - 1].u > edges[i].u) return false;
            if (edges[i - 1].u == edges[i].u && edges[i - 1].v >= edges[i].v) return false;
        }
        return true;
    }
};

namespace detail {

template <rig R>
void sort_edges(std::vector<Edge<R>>& edges) {
    std::stable_sort(edges.begin(), edges.end(), [](const Edge<R>& a, const Edge<R>& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
}

} // namespace detail

/// Deletes self-loops, merges parallel edges by rig addition, and sorts
/// edge storage. Nodes, ports, and the signature are untouched. Idempotent.
template <rig R>
Circuit<R> canonicalize(Circuit<R> c) {
    for (auto& e : c.edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::erase_if(c.edges, [](const Edge<R>& e) { return e.u == e.v; });
    detail::sort_edges<R>(c.edges);
    std::vector<Edge<R>> merged;
    for (auto& e : c.edges) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
            merged.back().value = R::add(merged.back().value, e.value);
        else
            merged.push_back(std::move(e));
    }
    c.edges = std::move(merged);
    return c;
}

namespace detail {

// Disjoint union of two circuits with node ids renumbered to 0..k-1.
// `unions` pairs indices into the combined dense numbering (f first).
template <rig R>
Circuit<R> glue(const Circuit<R>& f, const Circuit<R>& g,
                const std::vector<std::pair<std::size_t, std::size_t>>& unions,
                std::vector<NodeId>&& new_ports, int dom, int cod) {
    std::unordered_map<NodeId, std::size_t> fi, gi;
    fi.reserve(f.nodes.size());
    gi.reserve(g.nodes.size());
    for (std::size_t i = 0; i < f.nodes.size(); ++i) fi[f.nodes[i]] = i;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) gi[g.nodes[i]] = f.nodes.size() + i;

    UnionFind uf(f.nodes.size() + g.nodes.size());
    for (auto [a, b] : unions) uf.unite(a, b);

    // Compact class representatives to 0..k-1 in ascending root order.
    std::vector<NodeId> root_to_id(uf.size(), 0);
    std::vector<bool> is_root(uf.size(), false);
    for (std::size_t i = 0; i < uf.size(); ++i) is_root[uf.find(i)] = true;
    NodeId next = 0;
    for (std::size_t i = 0; i < uf.size(); ++i)
        if (is_root[i]) root_to_id[i] = next++;

    auto map_f = [&](NodeId n) { return root_to_id[uf.find(fi.at(n))]; };
    auto map_g = [&](NodeId n) { return root_to_id[uf.find(gi.at(n))]; };

    Circuit<R> out;
    out.dom = dom;
    out.cod = cod;
    out.nodes.resize(next);
    for (NodeId i = 0; i < next; ++i) out.nodes[i] = i;
    out.edges.reserve(f.edges.size() + g.edges.size());
    for (const auto& e : f.edges) out.edges.push_back({map_f(e.u), map_f(e.v), e.value});
    for (const auto& e : g.edges) out.edges.push_back({map_g(e.u), map_g(e.v), e.value});
    out.ports.reserve(new_ports.size());
    // new_ports entries are combined dense indices, not NodeIds
    for (NodeId idx : new_ports) out.ports.push_back(root_to_id[uf.find(idx)]);
    return canonicalize(std::move(out));
}

template <rig R>
std::size_t dense_index(const Circuit<R>& c, NodeId id, std::size_t offset) {
    auto it = std::lower_bound(c.nodes.begin(), c.nodes.end(), id);
    return offset + static_cast<std::size_t>(it - c.nodes.begin());
}

} // namespace detail

/// Sequential composition: identifies the i-th output port node of f with
/// the i-th input port node of g, then re-canonicalizes.
template <rig R>
Circuit<R> compose(const Circuit<R>& f, const Circuit<R>& g) {
    if (f.cod != g.dom) throw usage_error("compose: arity mismatch");
    std::vector<std::pair<std::size_t, std::size_t>> unions;
    unions.reserve(static_cast<std::size_t>(f.cod));
    for (int i = 0; i < f.cod; ++i)
        unions.emplace_back(detail::dense_index(f, f.ports[f.dom + i], 0),
                            detail::dense_index(g, g.ports[i], f.nodes.size()));
    std::vector<NodeId> new_ports;
    new_ports.reserve(static_cast<std::size_t>(f.dom + g.cod));
    for (int i = 0; i < f.dom; ++i)
        new_ports.push_back(static_cast<NodeId>(detail::dense_index(f, f.ports[i], 0)));
    for (int i = 0; i < g.cod; ++i)
        new_ports.push_back(
            static_cast<NodeId>(detail::dense_index(g, g.ports[g.dom + i], f.nodes.size())));
    return detail::glue(f, g, unions, std::move(new_ports), f.dom, g.cod);
}

/// Monoidal product: disjoint union; input ports of f then g, output
/// ports of f then g.
template <rig R>
Circuit<R> tensor(const Circuit<R>& f, const Circuit<R>& g) {
    std::vector<NodeId> new_ports;
    new_ports.reserve(f.ports.size() + g.ports.size());
    for (int i = 0; i < f.dom; ++i)
        new_ports.push_back(static_cast<NodeId>(detail::dense_index(f, f.ports[i], 0)));
    for (int i = 0; i < g.dom; ++i)
        new_ports.push_back(
            static_cast<NodeId>(detail::dense_index(g, g.ports[i], f.nodes.size())));
    for (int i = 0; i < f.cod; ++i)
        new_ports.push_back(static_cast<NodeId>(detail::dense_index(f, f.ports[f.dom + i], 0)));
    for (int i = 0; i < g.cod; ++i)
        new_ports.push_back(
            static_cast<NodeId>(detail::dense_index(g, g.ports[g.dom + i], f.nodes.size())));
    return detail::glue(f, g, {}, std::move(new_ports), f.dom + g.dom, f.cod + g.cod);
}

/// Exact structural equality (same signature, ports, nodes, and edge
/// multiset with rig-equal values). Not quotiented: use decide_eq for
/// semantic equality.
template <rig R>
bool same_structure(const Circuit<R>& a, const Circuit<R>& b) {
    if (a.dom != b.dom || a.cod != b.cod) return false;
    if (a.ports != b.ports || a.nodes != b.nodes) return false;
    if (a.edges.size() != b.edges.size()) return false;
    auto norm = [](std::vector<Edge<R>> es) {
        for (auto& e : es)
            if (e.u > e.v) std::swap(e.u, e.v);
        std::sort(es.begin(), es.end(), [](const Edge<R>& x, const Edge<R>& y) {
            if (x.u != y.u) return x.u < y.u;
            if (x.v != y.v) return x.v < y.v;
            return R::format(x.value) < R::format(y.value);
        });
        return es;
    };
    auto ea = norm(a.edges), eb = norm(b.edges);
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].u != eb[i].u || ea[i].v != eb[i].v) return false;
        if (!R::eq(ea[i].value, eb[i].value)) return false;
    }
    return true;
}

} // namespace starmesh
