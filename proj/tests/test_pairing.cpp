#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "wakeford/group.hpp"
#include "wakeford/pairing.hpp"
#include "wakeford/rng.hpp"

using namespace wakeford;

namespace {

GroupSet row_as_elements(const WakefordGraph& g, int i) {
    GroupSet out(g.group->order());
    g.rows[static_cast<std::size_t>(i)].for_each(
        [&](int j) { out.add(g.a_elems[static_cast<std::size_t>(j)]); });
    return out;
}

bool valid_pairing(const Group& g, const GroupSet& a,
                   const std::vector<std::pair<int, int>>& witness) {
    GroupSet used(g.order());
    for (auto [b_elem, a_elem] : witness) {
        if (!a.contains(a_elem) || used.contains(a_elem)) return false;
        used.add(a_elem);
        if (a.contains(g.mul(b_elem, a_elem))) return false;
    }
    return static_cast<int>(witness.size()) == a.size();
}

} // namespace

TEST_CASE("build_graph rows") {
    Group c5 = make_group("cyclic:5");
    WakefordGraph graph = build_graph(c5, GroupSet(5, {1, 2}), GroupSet(5, {1, 2}));
    CHECK(row_as_elements(graph, 0) == GroupSet(5, {2}));
    CHECK(row_as_elements(graph, 1) == GroupSet(5, {1, 2}));

    // a singleton away from the identity always gives a full row
    Group q8 = make_group("quaternion");
    WakefordGraph single = build_graph(q8, GroupSet(8, {3}), GroupSet(8, {5}));
    CHECK(single.rows[0].size() == 1);

    // the identity in B forces an empty row
    WakefordGraph with_id = build_graph(c5, GroupSet(5, {0, 1}), GroupSet(5, {2, 3}));
    CHECK(with_id.rows[0].empty());

    CHECK_THROWS_AS(build_graph(c5, GroupSet(5, {1}), GroupSet(5, {1, 2})), PreconditionError);
    CHECK_THROWS_AS(build_graph(c5, GroupSet(5), GroupSet(5)), PreconditionError);
}

TEST_CASE("analyze examples") {
    Group c5 = make_group("cyclic:5");
    MatchingReport r = analyze(build_graph(c5, GroupSet(5, {1, 2}), GroupSet(5, {1, 2})),
                               CountMode::exact);
    CHECK(r.exists);
    CHECK(r.mu == 1);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
    CHECK(r.max_degree == 2);
    CHECK(r.max_codegree == 2);

    Group c4 = make_group("cyclic:4");
    MatchingReport none = analyze(build_graph(c4, GroupSet(4, {1, 2}), GroupSet(4, {0, 2})),
                                  CountMode::exact);
    CHECK(!none.exists);
    CHECK(none.mu == 0);
    REQUIRE(none.hall_violator.has_value());
    CHECK(*none.hall_violator == GroupSet(4, {2}));
}

TEST_CASE("complete relation counts factorially") {
    // B*A misses A entirely, so every bijection is a pairing
    Group c12 = make_group("cyclic:12");
    GroupSet b(12, {4, 5, 6});
    GroupSet a(12, {0, 1, 2});
    // check all products leave A
    b.for_each([&](int x) { a.for_each([&](int y) { REQUIRE(!a.contains(c12.mul(x, y))); }); });
    CHECK(mu(c12, b, a) == 6);
    CHECK(mu_naive(c12, b, a) == 6);

    Group big = make_group("cyclic:40");
    GroupSet bb(40);
    GroupSet aa(40);
    for (int i = 0; i < 12; ++i) {
        bb.add(13 + i);
        aa.add(i);
    }
    bb.for_each([&](int x) { aa.for_each([&](int y) { REQUIRE(!aa.contains(big.mul(x, y))); }); });
    CHECK(mu(big, bb, aa) == BigInt(479001600));  // 12!
}

TEST_CASE("mu examples") {
    Group c10 = make_group("cyclic:10");
    CHECK(mu(c10, GroupSet(10, {1, 2, 3, 4}), GroupSet(10, {0, 1, 2, 3})) == 1);

    Group c4 = make_group("cyclic:4");
    CHECK(mu(c4, GroupSet(4, {1, 2}), GroupSet(4, {0, 2})) == 0);

    Group q8 = make_group("quaternion");
    CHECK(mu(q8, GroupSet(8, {2}), GroupSet(8, {4})) == 1);
}

TEST_CASE("mu_naive examples and cap") {
    Group c5 = make_group("cyclic:5");
    CHECK(mu_naive(c5, GroupSet(5, {1, 2}), GroupSet(5, {1, 2})) == 1);
    Group c4 = make_group("cyclic:4");
    CHECK(mu_naive(c4, GroupSet(4, {1, 2}), GroupSet(4, {0, 2})) == 0);

    Group c20 = make_group("cyclic:20");
    GroupSet bb(20), aa(20);
    for (int i = 0; i < 9; ++i) {
        bb.add(1 + i);
        aa.add(10 + i);
    }
    CHECK_THROWS_AS(mu_naive(c20, bb, aa), LimitError);
}

TEST_CASE("exact count cap") {
    Group g = make_group("cyclic:43");
    GroupSet b(43), a(43);
    for (int i = 0; i < 21; ++i) {
        b.add(1 + i);
        a.add(22 + i);
    }
    WakefordGraph graph = build_graph(g, b, a);
    CHECK_THROWS_AS(analyze(graph, CountMode::exact), LimitError);
    MatchingReport r = analyze(graph, CountMode::existence_only);
    CHECK(!r.mu_exact);
}

TEST_CASE("mu agrees with the naive oracle") {
    SplitMix64 rng(101);
    for (const char* spec : {"cyclic:8", "cyclic:11", "dihedral:4", "quaternion", "symmetric:3"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 150; ++trial) {
            int s = rng.range(1, std::min(6, n - 1));
            GroupSet b = rng.subset(n, s);
            GroupSet a = rng.subset(n, s);
            CHECK(mu(g, b, a) == mu_naive(g, b, a));
        }
    }
}

TEST_CASE("unique-matching decision agrees with the exact count") {
    SplitMix64 rng(103);
    for (const char* spec : {"cyclic:9", "cyclic:12", "dihedral:5", "quaternion"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 200; ++trial) {
            int s = rng.range(1, std::min(7, n - 1));
            GroupSet b = rng.subset(n, s);
            GroupSet a = rng.subset(n, s);
            WakefordGraph graph = build_graph(g, b, a);
            CHECK(has_unique_matching(graph) == (analyze(graph, CountMode::exact).mu == 1));
        }
    }
}

TEST_CASE("translation invariance") {
    SplitMix64 rng(107);
    for (const char* spec : {"cyclic:10", "dihedral:4", "symmetric:3"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 120; ++trial) {
            int s = rng.range(1, std::min(5, n - 1));
            GroupSet b = rng.subset(n, s);
            GroupSet a = rng.subset(n, s);
            BigInt base = mu(g, b, a);
            for (int k = 0; k < 3; ++k) {
                int t = rng.range(0, n - 1);
                CHECK(mu(g, b, translate(g, a, t, Side::right)) == base);
            }
        }
    }
}

TEST_CASE("row sizes equal the left Erdos-Heilbronn values") {
    SplitMix64 rng(109);
    for (const char* spec : {"cyclic:11", "dihedral:5", "quaternion"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 150; ++trial) {
            int s = rng.range(1, std::min(6, n - 1));
            GroupSet b = rng.subset(n, s);
            GroupSet a = rng.subset(n, s);
            WakefordGraph graph = build_graph(g, b, a);
            for (int i = 0; i < graph.size(); ++i) {
                CHECK(graph.rows[static_cast<std::size_t>(i)].size() ==
                      lambda(g, a, graph.b_elems[static_cast<std::size_t>(i)], Side::left));
            }
        }
    }
}

TEST_CASE("hall_form_check") {
    Group c5 = make_group("cyclic:5");
    GroupSet b(5, {1, 2}), a(5, {1, 2});
    CHECK(hall_form_check(c5, b, a, GroupSet(5, {1})) == std::pair<int, int>{1, 1});
    CHECK(hall_form_check(c5, b, a, GroupSet(5)) == std::pair<int, int>{0, 0});
    CHECK(hall_form_check(c5, b, a, GroupSet(5, {1, 2})) == std::pair<int, int>{2, 2});
    CHECK_THROWS_AS(hall_form_check(c5, b, a, GroupSet(5, {3})), PreconditionError);
}

TEST_CASE("hall form identity holds on random instances") {
    SplitMix64 rng(113);
    for (const char* spec : {"cyclic:9", "dihedral:4", "quaternion", "symmetric:3"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 60; ++trial) {
            int s = rng.range(1, std::min(5, n - 1));
            GroupSet b = rng.subset(n, s);
            GroupSet a = rng.subset(n, s);
            std::vector<int> be = b.elements();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << be.size()); ++mask) {
                GroupSet x(n);
                for (std::size_t i = 0; i < be.size(); ++i)
                    if (mask >> i & 1) x.add(be[i]);
                auto [lhs, rhs] = hall_form_check(g, b, a, x);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("certificates are sound") {
    SplitMix64 rng(127);
    for (const char* spec : {"cyclic:8", "cyclic:12", "dihedral:4", "quaternion"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 200; ++trial) {
            int s = rng.range(1, std::min(6, n - 1));
            GroupSet b = rng.subset(n, s);
            GroupSet a = rng.subset(n, s);
            MatchingReport r = analyze(build_graph(g, b, a), CountMode::existence_only);
            if (r.exists) {
                REQUIRE(r.witness.has_value());
                CHECK(valid_pairing(g, a, *r.witness));
            } else {
                REQUIRE(r.hall_violator.has_value());
                const GroupSet& x = *r.hall_violator;
                CHECK(!x.empty());
                CHECK(x.subset_of(b));
                GroupSet neighborhood(n);
                x.for_each([&](int e) {
                    a.for_each([&](int y) {
                        if (!a.contains(g.mul(e, y))) neighborhood.add(y);
                    });
                });
                CHECK(neighborhood.size() < x.size());
            }
        }
    }
}

TEST_CASE("strict Hall condition forces the Hetyei count bound") {
    SplitMix64 rng(131);
    int applicable = 0;
    for (const char* spec : {"cyclic:9", "cyclic:12", "dihedral:5", "quaternion"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 250; ++trial) {
            int s = rng.range(2, std::min(5, n - 1));
            GroupSet b = rng.subset(n, s);
            GroupSet a = rng.subset(n, s);
            WakefordGraph graph = build_graph(g, b, a);

            // strict Hall over non-empty proper subsets of B
            bool strict = true;
            std::vector<int> be = b.elements();
            for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << be.size()); ++mask) {
                GroupSet neighborhood(n);
                int xsize = 0;
                for (std::size_t i = 0; i < be.size(); ++i) {
                    if (!(mask >> i & 1)) continue;
                    ++xsize;
                    a.for_each([&](int y) {
                        if (!a.contains(g.mul(be[i], y))) neighborhood.add(y);
                    });
                }
                if (neighborhood.size() < xsize + 1) {
                    strict = false;
                    break;
                }
            }
            if (!strict) continue;
            ++applicable;
            MatchingReport r = analyze(graph, CountMode::exact);
            CHECK(r.mu >= std::max(r.max_degree, r.max_codegree));
        }
    }
    CHECK(applicable > 0);
}

TEST_CASE("max degree and codegree") {
    Group c5 = make_group("cyclic:5");
    WakefordGraph graph = build_graph(c5, GroupSet(5, {1, 2}), GroupSet(5, {1, 2}));
    MatchingReport r = analyze(graph, CountMode::existence_only);
    CHECK(r.max_degree == 2);   // row of 2 is {1,2}
    CHECK(r.max_codegree == 2); // column of 2 is hit by both rows
}
