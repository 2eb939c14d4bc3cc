#pragma once

// Independent semantics for testing the rewrite engine. The response
// matrix is the boundary Laplacian obtained by Schur-complement (Kron)
// elimination of internal nodes over signed exact rationals; it never
// touches the star-mesh code path. Also holds the lattice reachability
// oracle and the seeded random-circuit generator.

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "normalize.hpp"

namespace starmesh {

/// Boundary Laplacian indexed by boundary blocks (ascending block id).
/// Symmetric, zero row sums, non-positive off-diagonals.
struct ResponseMatrix {
    std::vector<int> blocks;
    std::vector<std::vector<Rational>> entries;

    bool operator==(const ResponseMatrix& o) const = default;
};

namespace detail {

// In-place Schur step: eliminate row/column `w` of the Laplacian. A zero
// pivot means an isolated node (whole row is zero) and elimination is
// plain deletion; anything else with a zero pivot cannot occur for a
// network with positive conductances.
inline void schur_eliminate(std::vector<std::vector<Rational>>& m, std::size_t w) {
    const std::size_t n = m.size();
    if (m[w][w] == 0) {
        for (std::size_t j = 0; j < n; ++j)
            if (m[w][j] != 0)
                throw internal_error("schur_eliminate: singular internal block");
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == w) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == w) continue;
                m[i][j] -= m[i][w] * m[w][j] / m[w][w];
            }
        }
    }
    m.erase(m.begin() + static_cast<std::ptrdiff_t>(w));
    for (auto& row : m) row.erase(row.begin() + static_cast<std::ptrdiff_t>(w));
}

} // namespace detail

/// Weighted-Laplacian response matrix of a rational circuit: internal
/// nodes are eliminated in the given order (every internal node exactly
/// once). Self-loops contribute nothing; parallel edges add.
inline ResponseMatrix response_matrix(const Circuit<RationalRig>& c,
                                      std::span<const NodeId> elimination_order) {
    c.check();
    std::vector<NodeId> order(elimination_order.begin(), elimination_order.end());
    {
        auto internals = c.internal_nodes();
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != internals)
            throw usage_error("response_matrix: order must list each internal node once");
    }

    std::vector<NodeId> live = c.nodes;
    auto index_of = [&live](NodeId id) {
        return static_cast<std::size_t>(
            std::find(live.begin(), live.end(), id) - live.begin());
    };

    std::vector<std::vector<Rational>> m(live.size(), std::vector<Rational>(live.size(), Rational(0)));
    for (const auto& e : c.edges) {
        if (e.u == e.v) continue;
        std::size_t i = index_of(e.u), j = index_of(e.v);
        m[i][i] += e.value;
        m[j][j] += e.value;
        m[i][j] -= e.value;
        m[j][i] -= e.value;
    }

    for (NodeId w : order) {
        std::size_t k = index_of(w);
        detail::schur_eliminate(m, k);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
    }

    // Remaining nodes are boundary; order rows by block id.
    auto blocks = c.boundary_blocks();
    std::vector<std::pair<int, NodeId>> by_block;
    by_block.reserve(live.size());
    for (NodeId id : live) by_block.emplace_back(blocks.at(id), id);
    std::sort(by_block.begin(), by_block.end());

    ResponseMatrix out;
    out.blocks.reserve(by_block.size());
    for (auto& [blk, id] : by_block) out.blocks.push_back(blk);
    out.entries.assign(by_block.size(), std::vector<Rational>(by_block.size(), Rational(0)));
    for (std::size_t i = 0; i < by_block.size(); ++i)
        for (std::size_t j = 0; j < by_block.size(); ++j)
            out.entries[i][j] = m[index_of(by_block[i].second)][index_of(by_block[j].second)];
    return out;
}

inline ResponseMatrix response_matrix(const Circuit<RationalRig>& c) {
    auto internals = c.internal_nodes();
    return response_matrix(c, internals);
}

/// Laplacian of a normal form's mesh, indexed like a ResponseMatrix.
inline ResponseMatrix mesh_laplacian(const NormalForm<RationalRig>& nf) {
    ResponseMatrix out;
    for (std::size_t p = 0; p < nf.partition.size(); ++p)
        if (nf.partition[p] == static_cast<int>(p)) out.blocks.push_back(static_cast<int>(p));
    out.entries.assign(out.blocks.size(), std::vector<Rational>(out.blocks.size(), Rational(0)));
    auto index_of = [&out](int blk) {
        return static_cast<std::size_t>(
            std::find(out.blocks.begin(), out.blocks.end(), blk) - out.blocks.begin());
    };
    for (const auto& e : nf.mesh) {
        std::size_t i = index_of(e.a), j = index_of(e.b);
        out.entries[i][i] += e.value;
        out.entries[j][j] += e.value;
        out.entries[i][j] -= e.value;
        out.entries[j][i] -= e.value;
    }
    return out;
}

/// End-to-end agreement check: Kron reduction of the raw circuit equals
/// the Laplacian of its star-mesh normal form, exactly.
inline bool agrees_with_normal_form(const Circuit<RationalRig>& c) {
    return response_matrix(c) == mesh_laplacian(normalize(c).form);
}

/// Pairs of distinct boundary blocks joined by an edge once every internal
/// component is contracted: a direct edge, or a path whose interior nodes
/// are all internal. This is exactly where normalization places mesh edges
/// (boundary nodes are never eliminated, so connectivity through a
/// boundary node does not create one).
template <rig R>
std::set<std::pair<int, int>> internal_path_adjacency(const Circuit<R>& c) {
    auto index_of = [&c](NodeId id) {
        return static_cast<std::size_t>(
            std::lower_bound(c.nodes.begin(), c.nodes.end(), id) - c.nodes.begin());
    };
    auto blocks = c.boundary_blocks();
    auto internal = [&blocks](NodeId id) { return !blocks.count(id); };

    UnionFind uf(c.nodes.size());
    for (const auto& e : c.edges)
        if (internal(e.u) && internal(e.v)) uf.unite(index_of(e.u), index_of(e.v));

    // anchors[k] = boundary blocks with an edge into internal component k
    std::vector<std::set<int>> anchors(c.nodes.size());
    std::set<std::pair<int, int>> out;
    auto add_pair = [&out](int a, int b) {
        if (a != b) out.insert({std::min(a, b), std::max(a, b)});
    };
    for (const auto& e : c.edges) {
        bool iu = internal(e.u), iv = internal(e.v);
        if (!iu && !iv) {
            add_pair(blocks.at(e.u), blocks.at(e.v));
        } else if (iu != iv) {
            NodeId b = iu ? e.v : e.u;
            NodeId in = iu ? e.u : e.v;
            anchors[uf.find(index_of(in))].insert(blocks.at(b));
        }
    }
    for (const auto& seen : anchors)
        for (auto it = seen.begin(); it != seen.end(); ++it)
            for (auto jt = std::next(it); jt != seen.end(); ++jt) add_pair(*it, *jt);
    return out;
}

/// Pairs of distinct boundary blocks connected by some path of edges.
template <rig R>
std::set<std::pair<int, int>> reachability_closure(const Circuit<R>& c) {
    UnionFind uf(c.nodes.size());
    auto index_of = [&c](NodeId id) {
        return static_cast<std::size_t>(
            std::lower_bound(c.nodes.begin(), c.nodes.end(), id) - c.nodes.begin());
    };
    for (const auto& e : c.edges) uf.unite(index_of(e.u), index_of(e.v));

    auto blocks = c.boundary_blocks();
    std::set<std::pair<int, int>> out;
    for (auto it = blocks.begin(); it != blocks.end(); ++it)
        for (auto jt = std::next(it); jt != blocks.end(); ++jt)
            if (uf.same(index_of(it->first), index_of(jt->first))) {
                int a = it->second, b = jt->second;
                out.insert({std::min(a, b), std::max(a, b)});
            }
    return out;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic sub-seed for stream `stream` of a campaign seeded `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream));
}

/// Bounds for the random circuit generator. The generated circuit is a
/// deterministic function of the spec (including the seed).
struct CircuitGenSpec {
    int max_nodes = 8;
    int max_edges = 16;
    int ports = 2;
    std::uint64_t seed = 0;
};

/// Conductance samplers. Values are never the rig zero; the tropical
/// sampler sticks to eighth-integers so double arithmetic stays exact
/// under every elimination order.
template <rig R>
struct default_sampler;

template <>
struct default_sampler<RationalRig> {
    Rational operator()(std::mt19937_64& rng) const {
        return Rational(1 + rng() % 12, 1 + rng() % 12);
    }
};

template <>
struct default_sampler<Float64Rig> {
    double operator()(std::mt19937_64& rng) const {
        return static_cast<double>(100 + rng() % 9901) / 1000.0; // [0.1, 10.0]
    }
};

template <>
struct default_sampler<LatticeRig> {
    bool operator()(std::mt19937_64&) const { return true; }
};

template <>
struct default_sampler<TropicalRig> {
    double operator()(std::mt19937_64& rng) const {
        return (static_cast<double>(rng() % 1025) - 512.0) / 8.0; // eighths in [-64, 64]
    }
};

/// Seeded random open circuit: node count in [1, max_nodes], every port on
/// a random node, up to max_edges edges with sampled conductances. Parallel
/// edges, self-loops, pendant and isolated internal nodes, and multi-port
/// nodes all occur with positive probability.
template <rig R, typename Sampler>
Circuit<R> random_circuit(const CircuitGenSpec& spec, Sampler&& sample) {
    if (spec.max_nodes < 1 || spec.max_edges < 0 || spec.ports < 0)
        throw usage_error("random_circuit: bounds must be positive");
    std::mt19937_64 rng(spec.seed);
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(spec.max_nodes));

    Circuit<R> c;
    c.nodes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c.nodes[static_cast<std::size_t>(i)] = static_cast<NodeId>(i);
    c.dom = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.ports + 1));
    c.cod = spec.ports - c.dom;
    for (int p = 0; p < spec.ports; ++p)
        c.ports.push_back(static_cast<NodeId>(rng() % static_cast<std::uint64_t>(n)));

    const int m = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.max_edges + 1));
    for (int e = 0; e < m; ++e) {
        auto u = static_cast<NodeId>(rng() % static_cast<std::uint64_t>(n));
        auto v = static_cast<NodeId>(rng() % static_cast<std::uint64_t>(n));
        c.edges.push_back({u, v, sample(rng)});
    }
    return c;
}

template <rig R>
Circuit<R> random_circuit(const CircuitGenSpec& spec) {
    return random_circuit<R>(spec, default_sampler<R>{});
}

} // namespace starmesh
