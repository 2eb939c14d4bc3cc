#pragma once

// Shared helpers for the test suites: circuit builders for the shapes the
// rewrite rules overlap on, and value samplers that include the rig zero
// (the edge samplers in the library never produce zero).

#include <random>
#include <vector>

#include <starmesh/starmesh.hpp>

namespace smtest {

using namespace starmesh;

template <rig R>
typename R::value_type law_value(std::mt19937_64& rng);

template <>
inline Rational law_value<RationalRig>(std::mt19937_64& rng) {
    return Rational(rng() % 13, 1 + rng() % 12); // zero with probability 1/13
}

template <>
inline double law_value<Float64Rig>(std::mt19937_64& rng) {
    if (rng() % 13 == 0) return 0.0;
    return static_cast<double>(1 + rng() % 10000) / 1000.0;
}

template <>
inline bool law_value<LatticeRig>(std::mt19937_64& rng) {
    return rng() % 2 == 0;
}

template <>
inline double law_value<TropicalRig>(std::mt19937_64& rng) {
    if (rng() % 13 == 0) return TropicalRig::zero();
    return (static_cast<double>(rng() % 1025) - 512.0) / 8.0;
}

template <rig R>
typename R::value_type nonzero_value(std::mt19937_64& rng) {
    for (;;) {
        auto v = law_value<R>(rng);
        if (!is_rig_zero<R>(v)) return v;
    }
}

/// Randomized check of the commutative positive division rig laws:
/// commutativity, associativity, units, annihilation, distributivity,
/// positivity, and correctness of the inverse.
template <rig R>
bool rig_laws_hold(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        auto a = law_value<R>(rng);
        auto b = law_value<R>(rng);
        auto c = law_value<R>(rng);
        if (!R::eq(R::add(a, b), R::add(b, a))) return false;
        if (!R::eq(R::mul(a, b), R::mul(b, a))) return false;
        if (!R::eq(R::add(R::add(a, b), c), R::add(a, R::add(b, c)))) return false;
        if (!R::eq(R::mul(R::mul(a, b), c), R::mul(a, R::mul(b, c)))) return false;
        if (!R::eq(R::add(a, R::zero()), a)) return false;
        if (!R::eq(R::mul(a, R::one()), a)) return false;
        if (!R::eq(R::mul(a, R::zero()), R::zero())) return false;
        if (!R::eq(R::mul(c, R::add(a, b)), R::add(R::mul(c, a), R::mul(c, b)))) return false;
        if (is_rig_zero<R>(R::add(a, b)) && !(is_rig_zero<R>(a) && is_rig_zero<R>(b)))
            return false;
        if (!is_rig_zero<R>(a) && !R::eq(R::mul(a, R::inv(a)), R::one())) return false;
    }
    return true;
}

/// Star with one internal center and one boundary node (one port) per arm,
/// as a map 0 -> arms.size().
template <rig R>
Circuit<R> star(const std::vector<typename R::value_type>& arms) {
    Circuit<R> c;
    c.dom = 0;
    c.cod = static_cast<int>(arms.size());
    for (std::size_t i = 0; i < arms.size(); ++i) c.add_port(c.fresh_node());
    NodeId center = c.fresh_node();
    for (std::size_t i = 0; i < arms.size(); ++i) c.add_edge(c.ports[i], center, arms[i]);
    return c;
}

/// Star whose center additionally has a pendant internal neighbor attached
/// by conductance x. Returns the circuit plus the two internal nodes
/// (center, pendant).
template <rig R>
std::tuple<Circuit<R>, NodeId, NodeId> pendant_star(
    const std::vector<typename R::value_type>& arms, typename R::value_type x) {
    Circuit<R> c = star<R>(arms);
    NodeId center = c.nodes.back();
    NodeId pendant = c.fresh_node();
    c.add_edge(center, pendant, std::move(x));
    return {std::move(c), center, pendant};
}

/// Two internal star centers a and b joined by conductance x; a has arms
/// ys to its own boundary nodes, b has arms us to its own boundary nodes.
/// Signature 0 -> ys.size()+us.size(), a's boundary ports first.
template <rig R>
std::tuple<Circuit<R>, NodeId, NodeId> linked_stars(
    const std::vector<typename R::value_type>& ys,
    const std::vector<typename R::value_type>& us, typename R::value_type x) {
    Circuit<R> c;
    c.dom = 0;
    c.cod = static_cast<int>(ys.size() + us.size());
    for (std::size_t i = 0; i < ys.size() + us.size(); ++i) c.add_port(c.fresh_node());
    NodeId a = c.fresh_node();
    NodeId b = c.fresh_node();
    for (std::size_t i = 0; i < ys.size(); ++i) c.add_edge(c.ports[i], a, ys[i]);
    for (std::size_t j = 0; j < us.size(); ++j) c.add_edge(c.ports[ys.size() + j], b, us[j]);
    c.add_edge(a, b, std::move(x));
    return {std::move(c), a, b};
}

template <rig R>
Circuit<R> series(typename R::value_type y1, typename R::value_type y2) {
    return compose(Circuit<R>::resistor(std::move(y1)), Circuit<R>::resistor(std::move(y2)));
}

/// Compact-closed transpose of a 1 -> 1 map, built from the cup and cap.
template <rig R>
Circuit<R> transpose(const Circuit<R>& f) {
    auto id = Circuit<R>::identity_wire();
    auto cup = Circuit<R>::spider(0, 2);
    auto cap = Circuit<R>::spider(2, 0);
    auto bend_in = tensor(cup, id);                 // 1 -> 3
    auto act = tensor(id, tensor(f, id));           // 3 -> 3
    auto bend_out = tensor(id, cap);                // 3 -> 1
    return compose(compose(bend_in, act), bend_out);
}

/// The hypergraph-category equations plus the resistor identities, checked
/// by the decision procedure on circuits built from generators. y1 and y2
/// must be nonzero.
template <rig R>
bool hypergraph_axioms_hold(typename R::value_type y1, typename R::value_type y2) {
    auto mul = Circuit<R>::spider(2, 1);
    auto unit = Circuit<R>::spider(0, 1);
    auto comul = Circuit<R>::spider(1, 2);
    auto counit = Circuit<R>::spider(1, 0);
    auto id = Circuit<R>::identity_wire();
    auto sw = Circuit<R>::swap_wires();
    auto r1 = Circuit<R>::resistor(y1);
    auto r2 = Circuit<R>::resistor(y2);

    bool ok = true;
    // (a) associativity and its flip
    ok = ok && decide_eq(compose(tensor(mul, id), mul), compose(tensor(id, mul), mul));
    ok = ok && decide_eq(compose(comul, tensor(comul, id)), compose(comul, tensor(id, comul)));
    // (b) unit laws and the flip
    ok = ok && decide_eq(compose(tensor(unit, id), mul), id);
    ok = ok && decide_eq(compose(tensor(id, unit), mul), id);
    ok = ok && decide_eq(compose(comul, tensor(counit, id)), id);
    // (c) commutativity and the flip
    ok = ok && decide_eq(compose(sw, mul), mul);
    ok = ok && decide_eq(compose(comul, sw), comul);
    // (e) the Frobenius law, both forms
    ok = ok && decide_eq(compose(tensor(comul, id), tensor(id, mul)), compose(mul, comul));
    ok = ok && decide_eq(compose(tensor(id, comul), tensor(mul, id)), compose(mul, comul));
    // (f) the special law
    ok = ok && decide_eq(compose(comul, mul), id);
    // spider fusion and loop elimination
    ok = ok && decide_eq(compose(Circuit<R>::spider(2, 2), Circuit<R>::spider(2, 3)),
                         Circuit<R>::spider(2, 3));
    ok = ok && decide_eq(compose(comul, mul), Circuit<R>::spider(1, 1));
    // zig-zag of the self-duality
    ok = ok && decide_eq(compose(tensor(Circuit<R>::spider(0, 2), id),
                                 tensor(id, Circuit<R>::spider(2, 0))),
                         id);
    // resistors are self-adjoint
    ok = ok && decide_eq(transpose(r1), r1);
    // a resistor in parallel with a bare wire short-circuits away
    ok = ok && decide_eq(compose(compose(comul, tensor(r1, id)), mul), id);
    // parallel resistors add
    ok = ok && decide_eq(compose(compose(comul, tensor(r1, r2)), mul),
                         Circuit<R>::resistor(R::add(y1, y2)));
    return ok;
}

} // namespace smtest
