// Reduces a Wheatstone-style bridge to its equivalent single conductance,
// printing every rewrite step, and cross-checks the result against the
// Kron-reduced Laplacian.

#include <iostream>

#include <starmesh/starmesh.hpp>

using namespace starmesh;

int main() {
    Circuit<RationalRig> bridge;
    bridge.dom = 1;
    bridge.cod = 1;
    NodeId a = bridge.fresh_node();
    NodeId b = bridge.fresh_node();
    bridge.add_port(a);
    bridge.add_port(b);
    NodeId m = bridge.fresh_node();
    NodeId n = bridge.fresh_node();
    bridge.add_edge(a, m, Rational(1));
    bridge.add_edge(a, n, Rational(2));
    bridge.add_edge(m, n, Rational(5));
    bridge.add_edge(m, b, Rational(3));
    bridge.add_edge(n, b, Rational(4));

    auto res = normalize(bridge);
    std::cout << "steps:\n" << to_string(res.trace);
    std::cout << "normal form: " << res.form.to_string() << '\n';
    std::cout << "oracle: " << (agrees_with_normal_form(bridge) ? "agree" : "disagree") << '\n';
    return 0;
}
