#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "wakeford/group.hpp"
#include "wakeford/rng.hpp"
#include "wakeford/set_ops.hpp"

using namespace wakeford;

namespace {

// independent exhaustive progression search for cross-checking the witness
bool is_progression_brute(const Group& g, const GroupSet& s) {
    int k = s.size();
    if (k == 1) return true;
    for (int r = 0; r < g.order(); ++r) {
        for (int a = 0; a < g.order(); ++a) {
            for (Side side : {Side::right, Side::left}) {
                GroupSet built(g.order());
                int cur = a;
                bool ok = true;
                for (int i = 0; i < k; ++i) {
                    if (built.contains(cur)) {
                        ok = false;
                        break;
                    }
                    built.add(cur);
                    cur = side == Side::right ? g.mul(cur, r) : g.mul(r, cur);
                }
                if (ok && built == s) return true;
            }
        }
    }
    return false;
}

} // namespace

TEST_CASE("mul_sets") {
    Group c5 = make_group("cyclic:5");
    CHECK(mul_sets(c5, GroupSet(5, {0}), GroupSet(5, {0, 1, 2})) == GroupSet(5, {0, 1, 2}));
    CHECK(mul_sets(c5, GroupSet(5, {1, 2}), GroupSet(5, {0, 1, 2})) == GroupSet(5, {1, 2, 3, 4}));
    CHECK(mul_sets(c5, GroupSet(5), GroupSet(5, {1, 3})).empty());
    CHECK_THROWS_AS(mul_sets(c5, GroupSet(6, {1}), GroupSet(5, {1})), DomainError);
}

TEST_CASE("adjoin, invert, complement, translate") {
    Group c5 = make_group("cyclic:5");
    GroupSet s(5, {1, 2});
    CHECK(adjoin_identity(s) == GroupSet(5, {0, 1, 2}));
    CHECK(invert_set(c5, s) == GroupSet(5, {3, 4}));
    CHECK(complement(c5, s) == GroupSet(5, {0, 3, 4}));
    CHECK(translate(c5, s, 3, Side::right) == GroupSet(5, {4, 0}));
    CHECK(translate(c5, s, 3, Side::left) == GroupSet(5, {4, 0}));
}

TEST_CASE("set-algebra properties") {
    SplitMix64 rng(11);
    for (const char* spec : {"cyclic:12", "dihedral:5", "quaternion", "symmetric:3"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 200; ++trial) {
            GroupSet s = rng.subset(n, rng.range(1, n - 1));
            GroupSet x = rng.subset(n, rng.range(1, n - 1));
            CHECK(invert_set(g, invert_set(g, s)) == s);
            CHECK(complement(g, complement(g, s)) == s);
            int a = rng.range(0, n - 1);
            CHECK(translate(g, s, a, Side::right).size() == s.size());
            CHECK(translate(g, s, a, Side::left).size() == s.size());
            GroupSet prod = mul_sets(g, x, s);
            CHECK(prod.size() >= std::max(x.size(), s.size()));
            CHECK(mul_sets(g, x, GroupSet(n, {0})) == x);
        }
    }
}

TEST_CASE("is_chowla") {
    Group c10 = make_group("cyclic:10");
    CHECK(is_chowla(c10, GroupSet(10, {1, 3})));
    CHECK(!is_chowla(c10, GroupSet(10, {5, 1})));  // 5 has order 2 < 3
    CHECK(!is_chowla(c10, GroupSet(10, {0})));
    CHECK_THROWS_AS(is_chowla(c10, GroupSet(10)), PreconditionError);

    // explicit-threshold variant
    CHECK(is_chowla_with_min_order(c10, GroupSet(10, {2, 4}), 5));
    CHECK(!is_chowla_with_min_order(c10, GroupSet(10, {2, 4}), 6));
}

TEST_CASE("progression_witness examples") {
    Group c12 = make_group("cyclic:12");
    auto w = progression_witness(c12, GroupSet(12, {2, 5, 8}));
    REQUIRE(w.has_value());
    CHECK(w->ratio == 3);
    CHECK(w->start == 2);
    CHECK(w->length == 3);
    CHECK(w->side == Side::right);

    Group c7 = make_group("cyclic:7");
    GroupSet not_prog(7, {0, 1, 3});
    CHECK(!progression_witness(c7, not_prog).has_value());
    CHECK(!is_progression_brute(c7, not_prog));

    auto single = progression_witness(c7, GroupSet(7, {4}));
    REQUIRE(single.has_value());
    CHECK(single->length == 1);

    // any 2-set is a progression
    auto pair = progression_witness(c7, GroupSet(7, {2, 6}));
    CHECK(pair.has_value());
}

TEST_CASE("progression witness matches brute force") {
    SplitMix64 rng(23);
    for (const char* spec : {"cyclic:9", "dihedral:4", "quaternion"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 150; ++trial) {
            GroupSet s = rng.subset(n, rng.range(1, std::min(5, n)));
            CHECK(progression_witness(g, s).has_value() == is_progression_brute(g, s));
        }
    }
}

TEST_CASE("progression round-trip") {
    SplitMix64 rng(31);
    for (const char* spec : {"cyclic:11", "dihedral:6", "symmetric:3"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 200; ++trial) {
            int r = rng.range(1, n - 1);
            int a = rng.range(0, n - 1);
            int k = rng.range(1, std::min(4, g.order_of(r)));
            Side side = rng.range(0, 1) ? Side::left : Side::right;
            GroupSet s;
            try {
                s = progression_set(g, a, r, k, side);
            } catch (const PreconditionError&) {
                continue;  // repeated elements for this (a, r, k)
            }
            auto w = progression_witness(g, s);
            REQUIRE(w.has_value());
            // the witness itself rebuilds the same set
            CHECK(progression_set(g, w->start, w->ratio, w->length, w->side) == s);
        }
    }
}

TEST_CASE("lambda") {
    Group c6 = make_group("cyclic:6");
    GroupSet t(6, {0, 1});
    CHECK(lambda(c6, t, 2, Side::right) == 2);
    CHECK(lambda(c6, t, 1, Side::right) == 1);
    CHECK(lambda(c6, t, 0, Side::right) == 0);
    CHECK(lambda(c6, t, 0, Side::left) == 0);
}

TEST_CASE("lambda sides agree on abelian groups") {
    SplitMix64 rng(41);
    for (const char* spec : {"cyclic:12", "product:(cyclic:2,cyclic:6)"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 300; ++trial) {
            GroupSet t = rng.subset(n, rng.range(1, n));
            int x = rng.range(0, n - 1);
            CHECK(lambda(g, t, x, Side::left) == lambda(g, t, x, Side::right));
        }
    }
}

TEST_CASE("Olson subadditivity and averaging inequalities") {
    SplitMix64 rng(43);
    for (const char* spec : {"cyclic:12", "dihedral:5", "quaternion", "symmetric:3"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 400; ++trial) {
            GroupSet b = rng.subset(n, rng.range(1, n));
            int x = rng.range(0, n - 1);
            int y = rng.range(0, n - 1);
            for (Side side : {Side::right, Side::left}) {
                CHECK(lambda(g, b, x, side) + lambda(g, b, y, side) >=
                      lambda(g, b, g.mul(x, y), side));
            }

            GroupSet c = rng.subset(n, rng.range(1, n - 1));
            if (c.contains(0)) c.remove(0);
            if (c.empty()) continue;
            long long sum = 0;
            c.for_each([&](int e) { sum += lambda(g, b, e, Side::right); });
            CHECK(sum >= static_cast<long long>(b.size()) * (c.size() - b.size() + 1));
        }
    }
}
