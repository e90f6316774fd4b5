#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "wakeford/group.hpp"
#include "wakeford/isoperimetry.hpp"
#include "wakeford/rng.hpp"

using namespace wakeford;

namespace {

// direct |XS| sweep used as the independent side of the Cauchy/Vosper checks
bool cauchy_by_sumset_growth(const Group& g, const GroupSet& s) {
    GroupSet ambient = subgroup_generated(g, s);
    int q = ambient.size();
    std::vector<int> elems = ambient.elements();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << elems.size()); ++mask) {
        GroupSet x(g.order());
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (mask >> i & 1) x.add(elems[i]);
        int grown = mul_sets(g, x, s).size();
        if (grown < std::min(q, x.size() + s.size() - 1)) return false;
    }
    return true;
}

bool vosper_by_sumset_growth(const Group& g, const GroupSet& s) {
    GroupSet ambient = subgroup_generated(g, s);
    int q = ambient.size();
    std::vector<int> elems = ambient.elements();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << elems.size()); ++mask) {
        GroupSet x(g.order());
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (mask >> i & 1) x.add(elems[i]);
        if (x.size() < 2) continue;
        int grown = mul_sets(g, x, s).size();
        if (grown < std::min(q - 1, x.size() + s.size())) return false;
    }
    return true;
}

} // namespace

TEST_CASE("boundary and exterior") {
    Group c5 = make_group("cyclic:5");
    GroupSet s(5, {0, 1, 2});
    CHECK(boundary(c5, GroupSet(5, {0}), s, BoundaryDir::forward) == GroupSet(5, {1, 2}));
    CHECK(boundary(c5, GroupSet(5), s, BoundaryDir::forward).empty());
    CHECK(boundary(c5, GroupSet::full(5), s, BoundaryDir::forward).empty());
    CHECK(boundary(c5, GroupSet(5, {0}), s, BoundaryDir::backward) == GroupSet(5, {3, 4}));

    CHECK(exterior(c5, GroupSet(5, {0}), s) == GroupSet(5, {3, 4}));
    CHECK(exterior(c5, GroupSet::full(5), s).empty());
    CHECK(exterior(c5, GroupSet(5, {2}), GroupSet::full(5)).empty());

    CHECK_THROWS_AS(boundary(c5, GroupSet(5, {0}), GroupSet(5, {1, 2}), BoundaryDir::forward),
                    PreconditionError);
}

TEST_CASE("partition and duality identities") {
    SplitMix64 rng(211);
    for (const char* spec : {"cyclic:10", "dihedral:4", "quaternion", "symmetric:3"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 300; ++trial) {
            GroupSet s = rng.subset(n, rng.range(1, n));
            s.add(0);
            GroupSet t = rng.subset(n, rng.range(0, n));

            GroupSet bd = boundary(g, t, s, BoundaryDir::forward);
            GroupSet ext = exterior(g, t, s);
            CHECK((t | bd | ext) == GroupSet::full(n));
            CHECK(!t.intersects(bd));
            CHECK(!t.intersects(ext));
            CHECK(!bd.intersects(ext));

            // backward boundary of the exterior stays inside the boundary
            CHECK(boundary(g, ext, s, BoundaryDir::backward).subset_of(bd));
        }
    }
}

TEST_CASE("kappa examples") {
    Group c5 = make_group("cyclic:5");
    GroupSet s(5, {0, 1, 2});

    ConnectivityReport k1 = kappa(c5, s, 1);
    CHECK(k1.kappa == 2);
    CHECK(!k1.empty_range);
    CHECK(k1.ambient_order == 5);
    REQUIRE(k1.fragment.has_value());
    CHECK(*k1.fragment == GroupSet(5, {0}));

    ConnectivityReport k2 = kappa(c5, s, 2);
    CHECK(k2.empty_range);
    CHECK(k2.kappa == 4);  // 5 - 2 + 1
    CHECK(!k2.fragment.has_value());

    // a subgroup as S: nothing qualifies, kappa = q
    Group c8 = make_group("cyclic:8");
    ConnectivityReport sub = kappa(c8, GroupSet(8, {0, 4}), 1);
    CHECK(sub.empty_range);
    CHECK(sub.ambient_order == 2);
    CHECK(sub.kappa == 2);

    CHECK_THROWS_AS(kappa(c5, GroupSet(5, {1, 2}), 1), PreconditionError);
    Group big = make_group("cyclic:30");
    CHECK_THROWS_AS(kappa(big, GroupSet(30, {0, 1}), 1), LimitError);
}

TEST_CASE("fragment satisfies the reported constraints") {
    SplitMix64 rng(223);
    for (const char* spec : {"cyclic:11", "cyclic:12", "dihedral:6", "quaternion"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 100; ++trial) {
            GroupSet s = rng.subset(n, rng.range(1, std::min(5, n)));
            s.add(0);
            for (int k = 1; k <= 2; ++k) {
                ConnectivityReport r = kappa(g, s, k);
                GroupSet ambient = subgroup_generated(g, s);
                if (r.empty_range) {
                    CHECK(r.kappa == r.ambient_order - k + 1);
                    CHECK(!r.fragment.has_value());
                } else {
                    REQUIRE(r.fragment.has_value());
                    const GroupSet& x = *r.fragment;
                    CHECK(x.subset_of(ambient));
                    CHECK(x.size() >= k);
                    GroupSet xs = mul_sets(g, x, s);
                    CHECK(xs.size() <= r.ambient_order - k);
                    CHECK((xs - x).size() == r.kappa);
                }
            }
        }
    }
}

TEST_CASE("kappa is deterministic") {
    Group g = make_group("cyclic:12");
    GroupSet s(12, {0, 3, 7});
    ConnectivityReport a = kappa(g, s, 1);
    ConnectivityReport b = kappa(g, s, 1);
    CHECK(a.kappa == b.kappa);
    REQUIRE(a.fragment.has_value());
    REQUIRE(b.fragment.has_value());
    CHECK(*a.fragment == *b.fragment);
}

TEST_CASE("identity singleton bound") {
    // when X = {1} qualifies, kappa_1 <= |S| - 1
    SplitMix64 rng(227);
    for (const char* spec : {"cyclic:9", "dihedral:5"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 100; ++trial) {
            GroupSet s = rng.subset(n, rng.range(1, std::min(6, n)));
            s.add(0);
            GroupSet ambient = subgroup_generated(g, s);
            if (s.size() <= ambient.size() - 1) {
                ConnectivityReport r = kappa(g, s, 1);
                CHECK(r.kappa <= s.size() - 1);
            }
        }
    }
}

TEST_CASE("cauchy and vosper classification") {
    Group c5 = make_group("cyclic:5");
    GroupSet s(5, {0, 1, 2});
    CHECK(is_cauchy(c5, s));
    CHECK(is_vosper(c5, s));

    Group c8 = make_group("cyclic:8");
    CHECK(!is_cauchy(c8, GroupSet(8, {0, 4})));
}

TEST_CASE("cauchy and vosper match the sumset-growth forms") {
    SplitMix64 rng(229);
    for (const char* spec : {"cyclic:9", "cyclic:10", "dihedral:4", "quaternion"}) {
        Group g = make_group(spec);
        int n = g.order();
        for (int trial = 0; trial < 60; ++trial) {
            GroupSet s = rng.subset(n, rng.range(1, std::min(5, n)));
            s.add(0);
            // the growth forms presuppose S generating more than itself
            if (subgroup_generated(g, s) == s) continue;
            CHECK(is_cauchy(g, s) == cauchy_by_sumset_growth(g, s));
            CHECK(is_vosper(g, s) == vosper_by_sumset_growth(g, s));
        }
    }
}

TEST_CASE("cofinite expansion verdict on a worked instance") {
    // S = {0,2,4} inside Z8 generates {0,2,4,6}; T misses {1,3,5}
    Group c8 = make_group("cyclic:8");
    GroupSet s(8, {0, 2, 4});
    GroupSet t = GroupSet(8, {1, 3, 5}).complemented();
    CfVerdict v = verify_prop_cf(c8, s, t);
    CHECK(v.q == 4);
    CHECK(v.clause_a_holds);
    CHECK(v.boundary_set == GroupSet(8, {1, 3}));
    CHECK(v.exterior_set == GroupSet(8, {5}));
    CHECK(v.cf1_holds);
    CHECK(v.vosper_case);
    CHECK(v.cf2_holds);
    CHECK(v.cf3_holds);
    CHECK(v.all_pass());
}

TEST_CASE("cofinite expansion degenerate empty exterior") {
    // T's complement is a singleton; TS covers the group and clause (a) fails
    Group c5 = make_group("cyclic:5");
    GroupSet s(5, {0, 1, 2});
    GroupSet t = GroupSet(5, {4}).complemented();
    CfVerdict v = verify_prop_cf(c5, s, t);
    CHECK(v.exterior_empty);
    CHECK(v.boundary_set == GroupSet(5, {4}));
    CHECK(!v.clause_a_holds);
    CHECK(v.cf1_holds);  // vacuous
}

TEST_CASE("cofinite expansion preconditions") {
    Group c5 = make_group("cyclic:5");
    GroupSet s(5, {0, 1, 2});
    CHECK_THROWS_AS(verify_prop_cf(c5, s, GroupSet::full(5)), PreconditionError);
    CHECK_THROWS_AS(verify_prop_cf(c5, s, GroupSet(5)), PreconditionError);
    CHECK_THROWS_AS(verify_prop_cf(c5, GroupSet(5, {1, 2}), GroupSet(5, {0, 1})),
                    PreconditionError);
    // S must be Cauchy
    Group c8 = make_group("cyclic:8");
    CHECK_THROWS_AS(verify_prop_cf(c8, GroupSet(8, {0, 4}), GroupSet(8, {0})),
                    PreconditionError);
}
