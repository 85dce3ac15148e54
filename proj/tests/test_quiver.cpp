#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "clusterlab/quiver.hpp"

using namespace clusterlab;

namespace {
Quiver a2() { return Quiver::from_arrows(2, {{0, 1, 1}}); }
Quiver a3() { return Quiver::from_arrows(3, {{0, 1, 1}, {1, 2, 1}}); }
} // namespace

TEST_CASE("rank-2 mutation reverses the arrow") {
    Quiver q = a2();
    Quiver m = mutate_quiver(q, 0);
    CHECK(m.b[0][1] == -1);
    CHECK(m.b[1][0] == 1);
    CHECK(mutate_quiver(m, 0) == q);
}

TEST_CASE("A3 mutation at the middle vertex") {
    Quiver q = a3();
    Quiver m = mutate_quiver(q, 1);
    // Expected arrows: 2->1, 3->2, 1->3.
    CHECK(m.b[1][0] == 1);
    CHECK(m.b[2][1] == 1);
    CHECK(m.b[0][2] == 1);
    m.validate();
}

TEST_CASE("mutation is an involution") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        std::vector<std::tuple<int, int, long long>> arrows;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) arrows.emplace_back(i, j, 1 + static_cast<long long>(rng() % 2));
        if (arrows.empty()) arrows.emplace_back(0, 1, 1);
        Quiver q = Quiver::from_arrows(n, arrows);
        // Random mutation walk, then undo one more step.
        Quiver cur = q;
        for (int s = 0; s < 4; ++s) cur = mutate_quiver(cur, static_cast<int>(rng() % n));
        int k = static_cast<int>(rng() % n);
        CHECK(mutate_quiver(mutate_quiver(cur, k), k) == cur);
        cur.validate();
    }
    CHECK_THROWS_AS(mutate_quiver(a2(), 2), ArgumentError);
    CHECK_THROWS_AS(mutate_quiver(a2(), -1), ArgumentError);
}

TEST_CASE("validation") {
    CHECK(a3().is_acyclic());
    CHECK_THROWS_AS(Quiver::from_arrows(2, {{0, 0, 1}}), ArgumentError);
    CHECK_THROWS_AS(Quiver::from_arrows(2, {{0, 1, 1}, {1, 0, 1}}), ArgumentError);
    // A mutated quiver may be cyclic.
    Quiver cyc = Quiver::from_arrows(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    Quiver m = mutate_quiver(cyc, 1);
    CHECK_FALSE(m.is_acyclic());
}

TEST_CASE("finite type recognition") {
    CHECK(a2().is_finite_type());
    CHECK(a3().is_finite_type());
    Quiver d4 = Quiver::from_arrows(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    CHECK(d4.is_finite_type());
    Quiver kron = Quiver::from_arrows(2, {{0, 1, 2}});
    CHECK_FALSE(kron.is_finite_type());
    Quiver wild3 = Quiver::from_arrows(3, {{0, 1, 2}, {1, 2, 1}});
    CHECK_FALSE(wild3.is_finite_type());
}

TEST_CASE("parser") {
    std::istringstream in("# a comment\n1 -> 2\n\n2 -> 3 *2\n");
    Quiver q = parse_quiver(in);
    CHECK(q.n == 3);
    CHECK(q.b[0][1] == 1);
    CHECK(q.b[1][2] == 2);

    std::istringstream bad("1 -> \n");
    CHECK_THROWS_AS(parse_quiver(bad), ParseError);
    std::istringstream bad2("1 => 2\n");
    CHECK_THROWS_AS(parse_quiver(bad2), ParseError);
    std::istringstream twocycle("1 -> 2\n2 -> 1\n");
    CHECK_THROWS_AS(parse_quiver(twocycle), ParseError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(parse_quiver(empty), ParseError);
    try {
        std::istringstream bad3("1 -> 2\n2 -> x\n");
        parse_quiver(bad3);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    // Round trip through the text format.
    Quiver q2 = parse_quiver_text(quiver_to_text(q));
    CHECK(q2 == q);
}

TEST_CASE("arrow lists") {
    ArrowList al = arrows_of_acyclic(a3());
    CHECK(al.arrows.size() == 2);
    CHECK(al.topo == std::vector<int>{0, 1, 2});
    Quiver kron = Quiver::from_arrows(2, {{0, 1, 2}});
    CHECK(arrows_of_acyclic(kron).arrows.size() == 2);
    Quiver cyc = mutate_quiver(Quiver::from_arrows(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}), 1);
    CHECK_THROWS_AS(arrows_of_acyclic(cyc), ArgumentError);
}
