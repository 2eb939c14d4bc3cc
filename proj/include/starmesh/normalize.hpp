#pragma once

// Full normalization to mesh normal form and the equality decision
// procedure. A normal form is the partition of boundary ports into nodes
// plus a loop-free, parallel-free weighted mesh on those nodes; rewriting
// is confluent, so the elimination order never changes the result.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rewrite.hpp"

namespace starmesh {

/// Which internal node to eliminate next. min_degree picks the smallest
/// current degree with smallest node id as tie-break; seeded_random picks
/// uniformly using a deterministic generator.
struct EliminationOrder {
    enum class Kind { min_degree, seeded_random };
    Kind kind = Kind::min_degree;
    std::uint64_t seed = 0;

    static EliminationOrder min_degree() { return {}; }
    static EliminationOrder random(std::uint64_t seed) {
        return {Kind::seeded_random, seed};
    }
};

template <rig R>
struct MeshEdge {
    int a = 0; // block ids, a < b
    int b = 0;
    typename R::value_type value{};
};

/// Canonical normal form: blocks are named by the minimum port index they
/// contain, and the mesh lists one edge per connected block pair, sorted.
template <rig R>
struct NormalForm {
    int dom = 0;
    int cod = 0;
    std::vector<int> partition;      // partition[p] = block id of port p
    std::vector<MeshEdge<R>> mesh;

    bool equals(const NormalForm& o) const {
        if (dom != o.dom || cod != o.cod || partition != o.partition) return false;
        if (mesh.size() != o.mesh.size()) return false;
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            if (mesh[i].a != o.mesh[i].a || mesh[i].b != o.mesh[i].b) return false;
            if (!R::eq(mesh[i].value, o.mesh[i].value)) return false;
        }
        return true;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "partition: [";
        std::vector<std::vector<int>> blocks;
        for (std::size_t p = 0; p < partition.size(); ++p) {
            if (partition[p] == static_cast<int>(p)) blocks.push_back({static_cast<int>(p)});
            else
                for (auto& blk : blocks)
                    if (blk.front() == partition[p]) { blk.push_back(static_cast<int>(p)); break; }
        }
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            os << (i ? ",{" : "{");
            for (std::size_t j = 0; j < blocks[i].size(); ++j)
                os << (j ? "," : "") << blocks[i][j];
            os << '}';
        }
        os << "] ; mesh:";
        for (std::size_t i = 0; i < mesh.size(); ++i)
            os << (i ? ", " : " ") << mesh[i].a << '-' << mesh[i].b << ':'
               << R::format(mesh[i].value);
        return os.str();
    }

    /// The circuit this normal form denotes; node ids are the block ids.
    Circuit<R> to_circuit() const {
        Circuit<R> c;
        c.dom = dom;
        c.cod = cod;
        for (int blk : partition) c.nodes.push_back(static_cast<NodeId>(blk));
        std::sort(c.nodes.begin(), c.nodes.end());
        c.nodes.erase(std::unique(c.nodes.begin(), c.nodes.end()), c.nodes.end());
        for (int blk : partition) c.ports.push_back(static_cast<NodeId>(blk));
        for (const auto& m : mesh)
            c.edges.push_back({static_cast<NodeId>(m.a), static_cast<NodeId>(m.b), m.value});
        detail::sort_edges<R>(c.edges);
        return c;
    }
};

template <rig R>
struct NormalizeResult {
    NormalForm<R> form;
    Trace<R> trace;
};

/// True iff c is canonical and every node carries a port.
template <rig R>
bool is_normal(const Circuit<R>& c) {
    return c.is_canonical() && c.internal_nodes().empty();
}

namespace detail {

template <rig R>
NormalForm<R> make_normal_form(const Circuit<R>& c) {
    NormalForm<R> nf;
    nf.dom = c.dom;
    nf.cod = c.cod;
    nf.partition = c.port_partition();
    auto blocks = c.boundary_blocks();
    nf.mesh.reserve(c.edges.size());
    for (const auto& e : c.edges) {
        int a = blocks.at(e.u), b = blocks.at(e.v);
        if (a > b) std::swap(a, b);
        nf.mesh.push_back({a, b, e.value});
    }
    std::sort(nf.mesh.begin(), nf.mesh.end(), [](const MeshEdge<R>& x, const MeshEdge<R>& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return nf;
}

template <rig R>
NodeId pick_next(const Circuit<R>& c, const std::vector<NodeId>& internals,
                 const EliminationOrder& order, std::mt19937_64& rng) {
    if (order.kind == EliminationOrder::Kind::seeded_random)
        return internals[static_cast<std::size_t>(rng() % internals.size())];
    NodeId best = internals.front();
    int best_deg = c.degree(best);
    for (NodeId id : internals) {
        int d = c.degree(id);
        if (d < best_deg) { // ids ascend, so ties keep the smallest id
            best = id;
            best_deg = d;
        }
    }
    return best;
}

} // namespace detail

/// Canonicalizes, then eliminates internal nodes one star-mesh step at a
/// time until none remain. The trace records every rewrite; the normal
/// form is independent of the elimination order.
template <rig R>
NormalizeResult<R> normalize(const Circuit<R>& c,
                             const EliminationOrder& order = EliminationOrder::min_degree()) {
    c.check();
    NormalizeResult<R> res;
    res.trace.initial = c;
    std::mt19937_64 rng(order.seed);
    Circuit<R> cur = canonicalize_steps(c, res.trace.steps);
    for (;;) {
        auto internals = cur.internal_nodes();
        if (internals.empty()) break;
        NodeId v = detail::pick_next(cur, internals, order, rng);
        auto [next, step] = eliminate_internal(cur, v);
        cur = std::move(next);
        res.trace.steps.push_back(std::move(step));
    }
    res.trace.result = cur;
    res.form = detail::make_normal_form(cur);
    return res;
}

/// Decides equality of two circuits in the same hom-set by comparing mesh
/// normal forms.
template <rig R>
bool decide_eq(const Circuit<R>& a, const Circuit<R>& b) {
    if (a.dom != b.dom || a.cod != b.cod)
        throw usage_error("decide_eq: circuits live in distinct hom-sets");
    return normalize(a).form.equals(normalize(b).form);
}

} // namespace starmesh
