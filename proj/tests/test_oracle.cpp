#include <catch2/catch.hpp>

#include <random>

#include "support.hpp"

using namespace starmesh;
using RC = Circuit<RationalRig>;

TEST_CASE("response matrix of a single resistor", "[oracle]") {
    auto rm = response_matrix(RC::resistor(Rational(3, 2)));
    REQUIRE(rm.blocks == std::vector<int>{0, 1});
    REQUIRE(rm.entries[0][0] == Rational(3, 2));
    REQUIRE(rm.entries[0][1] == Rational(-3, 2));
    REQUIRE(rm.entries[1][0] == Rational(-3, 2));
    REQUIRE(rm.entries[1][1] == Rational(3, 2));
}

TEST_CASE("response matrix of the unit 3-star has -1/3 off-diagonals", "[oracle]") {
    auto c = smtest::star<RationalRig>({Rational(1), Rational(1), Rational(1)});
    auto rm = response_matrix(c);
    REQUIRE(rm.blocks.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            REQUIRE(rm.entries[i][j] == (i == j ? Rational(2, 3) : Rational(-1, 3)));
}

TEST_CASE("a circuit without internal nodes is its own Laplacian", "[oracle]") {
    RC c;
    c.dom = 1;
    c.cod = 1;
    NodeId a = c.fresh_node();
    NodeId b = c.fresh_node();
    c.add_port(a);
    c.add_port(b);
    c.add_edge(a, b, Rational(5));
    auto rm = response_matrix(c);
    REQUIRE(rm.entries[0][0] == Rational(5));
    REQUIRE(rm.entries[0][1] == Rational(-5));
}

TEST_CASE("response matrix invariants on random circuits", "[oracle][laws]") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 60; ++i) {
        CircuitGenSpec gs{9, 18, 4, rng()};
        auto c = random_circuit<RationalRig>(gs);
        auto rm = response_matrix(c);
        const std::size_t n = rm.blocks.size();
        for (std::size_t r = 0; r < n; ++r) {
            Rational row_sum(0);
            for (std::size_t k = 0; k < n; ++k) {
                REQUIRE(rm.entries[r][k] == rm.entries[k][r]);
                if (r != k) REQUIRE(rm.entries[r][k] <= 0);
                row_sum += rm.entries[r][k];
            }
            REQUIRE(row_sum == 0);
        }
    }
}

TEST_CASE("elimination order does not change the Schur complement", "[oracle][laws]") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 40; ++i) {
        CircuitGenSpec gs{9, 18, 3, rng()};
        auto c = random_circuit<RationalRig>(gs);
        auto internals = c.internal_nodes();
        auto reversed = internals;
        std::reverse(reversed.begin(), reversed.end());
        std::shuffle(internals.begin(), internals.end(), rng);
        REQUIRE(response_matrix(c, internals) == response_matrix(c, reversed));
    }
    auto c = RC::resistor(Rational(1));
    std::vector<NodeId> bogus{0};
    REQUIRE_THROWS_AS(response_matrix(c, bogus), usage_error);
}

TEST_CASE("Kron reduction agrees with the star-mesh normal form", "[oracle][laws]") {
    REQUIRE(agrees_with_normal_form(
        smtest::star<RationalRig>({Rational(6), Rational(3), Rational(2)})));

    auto mesh = normalize(smtest::star<RationalRig>({Rational(1), Rational(2), Rational(3)}))
                    .trace.result;
    REQUIRE(agrees_with_normal_form(mesh)); // already normal

    std::mt19937_64 rng(53);
    for (int i = 0; i < 60; ++i) {
        CircuitGenSpec gs{9, 18, 4, rng()};
        REQUIRE(agrees_with_normal_form(random_circuit<RationalRig>(gs)));
    }
}

TEST_CASE("reachability closure over boundary blocks", "[oracle]") {
    REQUIRE(reachability_closure(Circuit<LatticeRig>::resistor(true)) ==
            std::set<std::pair<int, int>>{{0, 1}});

    auto two = tensor(Circuit<LatticeRig>::resistor(true), Circuit<LatticeRig>::resistor(true));
    REQUIRE(reachability_closure(two) == std::set<std::pair<int, int>>{{0, 2}, {1, 3}});

    // path of three edges: every pair of its four ports is connected
    Circuit<LatticeRig> path;
    path.dom = 0;
    path.cod = 4;
    for (int i = 0; i < 4; ++i) path.add_port(path.fresh_node());
    path.add_edge(path.ports[0], path.ports[1], true);
    path.add_edge(path.ports[1], path.ports[2], true);
    path.add_edge(path.ports[2], path.ports[3], true);
    REQUIRE(reachability_closure(path).size() == 6);
}

TEST_CASE("random circuits are reproducible and well-formed", "[oracle]") {
    CircuitGenSpec one{1, 0, 1, 99};
    auto single = random_circuit<RationalRig>(one);
    REQUIRE(single.nodes.size() == 1);
    REQUIRE(single.ports.size() == 1);

    CircuitGenSpec gs{12, 30, 6, 1234};
    auto a = random_circuit<RationalRig>(gs);
    auto b = random_circuit<RationalRig>(gs);
    REQUIRE(same_structure(a, b));

    bool saw_parallel = false, saw_pendant = false, saw_isolated = false, saw_multiport = false;
    for (int i = 0; i < 500; ++i) {
        CircuitGenSpec s{12, 30, 6, derive_seed(7, static_cast<std::uint64_t>(i))};
        auto c = random_circuit<RationalRig>(s);
        c.check();
        auto m = measure(c);
        saw_parallel = saw_parallel || m.parallel_surplus > 0;
        for (NodeId v : c.internal_nodes()) {
            int d = c.degree(v);
            saw_pendant = saw_pendant || d == 1;
            saw_isolated = saw_isolated || d == 0;
        }
        auto part = c.port_partition();
        for (std::size_t p = 0; p < part.size(); ++p)
            saw_multiport = saw_multiport || part[p] != static_cast<int>(p);
    }
    REQUIRE(saw_parallel);
    REQUIRE(saw_pendant);
    REQUIRE(saw_isolated);
    REQUIRE(saw_multiport);
}
