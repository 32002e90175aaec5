#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "domany/automaton.hpp"
#include "domany/percolation.hpp"
#include "domany/rng.hpp"
#include "support/oracles.hpp"

using namespace domany;
using namespace domany::test;

namespace {

bool same_info(const ClusterInfo& a, const ClusterInfo& b) {
    return a.id == b.id && a.size == b.size && a.sign == b.sign && a.winds_u == b.winds_u &&
           a.winds_v == b.winds_v && a.touches_umin == b.touches_umin &&
           a.touches_umax == b.touches_umax && a.touches_vmin == b.touches_vmin &&
           a.touches_vmax == b.touches_vmax;
}

void compare_hex(const SpinConfiguration& cfg) {
    const BoxSpec& box = cfg.box();
    ClusterLabeling fast = label_clusters(cfg, GraphKind::hex);
    SlowClusters slow = slow_label_hex(cfg);
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u)
            for (Sub sub : {Sub::B, Sub::A}) {
                SiteRef x{u, v, sub};
                CHECK(fast.label(x) == slow.label[std::size_t(box.site_index(x))]);
            }
    REQUIRE(fast.clusters().size() == slow.clusters.size());
    for (std::size_t i = 0; i < slow.clusters.size(); ++i)
        CHECK(same_info(fast.clusters()[i], slow.clusters[i]));
}

void compare_tri(const TriConfiguration& cfg) {
    const BoxSpec& box = cfg.box();
    ClusterLabeling fast = label_clusters(cfg);
    SlowClusters slow = slow_label_tri(cfg);
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u)
            CHECK(fast.label_cell(u, v) == slow.label[std::size_t(box.cell_index(u, v))]);
    REQUIRE(fast.clusters().size() == slow.clusters.size());
    for (std::size_t i = 0; i < slow.clusters.size(); ++i)
        CHECK(same_info(fast.clusters()[i], slow.clusters[i]));
}

TriConfiguration uniform_tri(const BoxSpec& box, int sign) {
    TriConfiguration cfg(box, PairScheme::canonical());
    if (sign < 0)
        for (std::int32_t v = 0; v < box.lv; ++v)
            for (std::int32_t u = 0; u < box.lu; ++u) cfg.set_spin(u, v, -1);
    return cfg;
}

} // namespace

TEST_CASE("union-find labeling matches the BFS oracle") {
    SplitMix64 rng(808);
    for (const BoxSpec& box : {BoxSpec::square_periodic(6), BoxSpec::square_periodic(16),
                               BoxSpec::free_box(7, 5), BoxSpec::free_box(1, 1)}) {
        CAPTURE(box.lu);
        CAPTURE(box.is_periodic());
        for (double p : {0.2, 0.5, 0.8})
            for (int rep = 0; rep < 5; ++rep) {
                SpinConfiguration cfg = SpinConfiguration::random(box, p, rng.next());
                compare_hex(cfg);
                TriConfiguration tri =
                    TriConfiguration::random(box, PairScheme::canonical(), p, rng.next());
                compare_tri(tri);
            }
    }
}

TEST_CASE("hand-checked winding clusters") {
    const BoxSpec box = BoxSpec::square_periodic(6);

    SUBCASE("plus row winds in u only") {
        TriConfiguration cfg = uniform_tri(box, -1);
        for (std::int32_t u = 0; u < 6; ++u) cfg.set_spin(u, 3, +1);
        ClusterLabeling labels = label_clusters(cfg);
        const ClusterInfo& row = labels.cluster(labels.label_cell(0, 3));
        CHECK(row.size == 6);
        CHECK(row.sign == +1);
        CHECK(row.winds_u);
        CHECK_FALSE(row.winds_v);
        // The minus complement wraps around u but the solid plus row blocks
        // any v-winding path (no offset jumps two rows).
        const ClusterInfo& rest = labels.cluster(labels.label_cell(0, 0));
        CHECK(rest.size == 30);
        CHECK(rest.winds_u);
        CHECK_FALSE(rest.winds_v);
    }

    SUBCASE("plus column winds in v only") {
        TriConfiguration cfg = uniform_tri(box, -1);
        for (std::int32_t v = 0; v < 6; ++v) cfg.set_spin(2, v, +1);
        ClusterLabeling labels = label_clusters(cfg);
        const ClusterInfo& col = labels.cluster(labels.label_cell(2, 0));
        CHECK(col.winds_v);
        CHECK_FALSE(col.winds_u);
    }

    SUBCASE("diagonal staircase winds both ways") {
        TriConfiguration cfg = uniform_tri(box, -1);
        for (std::int32_t i = 0; i < 6; ++i) cfg.set_spin(i, (6 - i) % 6, +1);
        ClusterLabeling labels = label_clusters(cfg);
        const ClusterInfo& diag = labels.cluster(labels.label_cell(0, 0));
        CHECK(diag.size == 6);
        CHECK(diag.winds_u);
        CHECK(diag.winds_v);
    }

    SUBCASE("uniform configuration winds both ways") {
        ClusterLabeling labels = label_clusters(uniform_tri(box, +1));
        REQUIRE(labels.clusters().size() == 1);
        CHECK(labels.clusters()[0].size == 36);
        CHECK(labels.clusters()[0].winds_u);
        CHECK(labels.clusters()[0].winds_v);
    }
}

TEST_CASE("cluster membership semantics") {
    const BoxSpec box = BoxSpec::free_box(4, 4);
    TriConfiguration cfg = uniform_tri(box, -1);
    cfg.set_spin(0, 0, +1);
    cfg.set_spin(1, 0, +1);
    cfg.set_spin(3, 3, +1);
    ClusterLabeling labels = label_clusters(cfg);

    CHECK(labels.same_cluster({0, 0, Sub::B}, {1, 0, Sub::B}));
    CHECK_FALSE(labels.same_cluster({0, 0, Sub::B}, {3, 3, Sub::B})); // separate plus clusters
    CHECK_FALSE(labels.same_cluster({0, 0, Sub::B}, {2, 2, Sub::B})); // opposite signs
    CHECK(labels.same_cluster({2, 2, Sub::B}, {0, 3, Sub::B}));       // one minus sea
    CHECK(connected(labels, {0, 0, Sub::B}, {1, 0, Sub::B}));
    // Rim flags on the free box.
    const ClusterInfo& pair = labels.cluster(labels.label_cell(0, 0));
    CHECK(pair.touches_umin);
    CHECK(pair.touches_vmin);
    CHECK_FALSE(pair.touches_umax);
    CHECK_FALSE(pair.touches_vmax);

    CHECK_THROWS_AS(labels.label({0, 0, Sub::A}), std::domain_error);   // tri kind
    CHECK_THROWS_AS(labels.label({4, 0, Sub::B}), std::domain_error);   // outside
}

TEST_CASE("probe agrees with the full labeling") {
    SplitMix64 rng(515);
    ClusterScratch scratch;
    for (const BoxSpec& box : {BoxSpec::square_periodic(8), BoxSpec::free_box(9, 6)}) {
        CAPTURE(box.is_periodic());
        for (double p : {0.3, 0.5, 0.7}) {
            SpinConfiguration cfg = SpinConfiguration::random(box, p, rng.next());
            for (GraphKind kind : {GraphKind::hex, GraphKind::tri}) {
                ClusterLabeling labels = label_clusters(cfg, kind);
                for (std::int32_t v = 0; v < box.lv; ++v)
                    for (std::int32_t u = 0; u < box.lu; ++u) {
                        SiteRef x{u, v, Sub::B};
                        const ClusterInfo& info = labels.cluster(labels.label(x));
                        ClusterProbe full = probe_cluster(cfg, x, kind, 0.0, scratch);
                        CHECK(full.size == info.size);
                        CHECK(full.winds_u == info.winds_u);
                        CHECK(full.winds_v == info.winds_v);
                        CHECK_FALSE(full.reached_radius);
                        // Reach-or-wind matches the labeling truth.
                        const double radius = 3.0;
                        ClusterProbe probe = probe_cluster(cfg, x, kind, radius, scratch);
                        const bool hit = probe.reached_radius || probe.winds_u || probe.winds_v;
                        const bool want = connected_to_boundary(labels, x, radius) ||
                                          info.winds_u || info.winds_v;
                        CHECK(hit == want);
                    }
            }
        }
    }

    SUBCASE("scratch reuse does not leak state between probes") {
        const BoxSpec box = BoxSpec::square_periodic(8);
        SpinConfiguration cfg = SpinConfiguration::random(box, 0.5, 99);
        ClusterScratch reused;
        for (int rep = 0; rep < 3; ++rep)
            for (std::int32_t v = 0; v < box.lv; ++v)
                for (std::int32_t u = 0; u < box.lu; ++u) {
                    ClusterScratch fresh;
                    SiteRef x{u, v, Sub::A};
                    ClusterProbe a = probe_cluster(cfg, x, GraphKind::hex, 2.5, reused);
                    ClusterProbe b = probe_cluster(cfg, x, GraphKind::hex, 2.5, fresh);
                    CHECK(a.size == b.size);
                    CHECK(a.reached_radius == b.reached_radius);
                    CHECK(a.winds_u == b.winds_u);
                    CHECK(a.winds_v == b.winds_v);
                }
    }

    SUBCASE("periodic radius beyond the faithful range is rejected") {
        const BoxSpec box = BoxSpec::square_periodic(8);
        SpinConfiguration cfg(box);
        ClusterLabeling labels = label_clusters(cfg, GraphKind::hex);
        CHECK_THROWS_AS(connected_to_boundary(labels, {0, 0, Sub::B}, 6.5),
                        std::invalid_argument);
        CHECK_THROWS_AS(probe_cluster(cfg, {0, 0, Sub::B}, GraphKind::hex, 6.5, scratch),
                        std::invalid_argument);
    }
}

TEST_CASE("rhombus crossing") {
    const BoxSpec box = BoxSpec::square_periodic(6);

    SUBCASE("hand cases") {
        TriConfiguration cfg = uniform_tri(box, -1);
        for (std::int32_t u = 0; u < 6; ++u) cfg.set_spin(u, 2, +1);
        CHECK(rhombus_crossing(cfg, +1, CrossDir::u));
        CHECK_FALSE(rhombus_crossing(cfg, +1, CrossDir::v));
        CHECK_FALSE(rhombus_crossing(cfg, -1, CrossDir::v)); // blocked by the plus row
        CHECK(rhombus_crossing(cfg, -1, CrossDir::u));

        TriConfiguration plus = uniform_tri(box, +1);
        CHECK(rhombus_crossing(plus, +1, CrossDir::u));
        CHECK(rhombus_crossing(plus, +1, CrossDir::v));
        CHECK_FALSE(rhombus_crossing(plus, -1, CrossDir::u));
    }

    SUBCASE("self-matching duality: exactly one of +u and -v") {
        SplitMix64 rng(616);
        for (const BoxSpec& b : {BoxSpec::square_periodic(6), BoxSpec::free_box(9, 5)}) {
            for (double p : {0.2, 0.4, 0.5, 0.6, 0.8})
                for (int rep = 0; rep < 20; ++rep) {
                    TriConfiguration cfg =
                        TriConfiguration::random(b, PairScheme::canonical(), p, rng.next());
                    CHECK(rhombus_crossing(cfg, +1, CrossDir::u) !=
                          rhombus_crossing(cfg, -1, CrossDir::v));
                    CHECK(rhombus_crossing(cfg, +1, CrossDir::v) !=
                          rhombus_crossing(cfg, -1, CrossDir::u));
                }
        }
    }

    SUBCASE("the B-plane overload sees the same plane") {
        SplitMix64 rng(717);
        for (int rep = 0; rep < 10; ++rep) {
            const std::uint64_t seed = rng.next();
            SpinConfiguration hex = SpinConfiguration::random(box, 0.5, seed);
            TriConfiguration tri =
                TriConfiguration::random(box, PairScheme::canonical(), 0.5, seed);
            for (int sign : {+1, -1})
                for (CrossDir dir : {CrossDir::u, CrossDir::v})
                    CHECK(rhombus_crossing(hex, sign, dir) == rhombus_crossing(tri, sign, dir));
        }
    }
}

TEST_CASE("rectangle crossing on the embedding") {
    const double rt3 = std::sqrt(3.0);
    const BoxSpec box = BoxSpec::free_box(8, 4);

    SpinConfiguration cfg = SpinConfiguration::random(box, 0.0, 1); // all minus
    // A plus corridor along v=1: B(u,1) at y=1.5 and A(u,1) at y=2.0.
    for (std::int32_t u = 0; u < 8; ++u) {
        cfg.set_spin({u, 1, Sub::B}, +1);
        cfg.set_spin({u, 1, Sub::A}, +1);
    }
    // Rect rows: A(u,0) at y=0.5, the corridor, B(u,2) at y=3.0.  With the
    // default margin 1.0 the corridor sits clear of both y bands.
    const Rect rect{0.0, 0.25, 7.5 * rt3, 3.25};
    CHECK(rect_crossing(cfg, +1, rect, CrossDir::u));
    CHECK_FALSE(rect_crossing(cfg, +1, rect, CrossDir::v));
    // Minus sites inside the rect are the rows above and below the corridor;
    // every in-rect hex neighbor of theirs is a corridor site, so they are
    // isolated and span nothing.
    CHECK_FALSE(rect_crossing(cfg, -1, rect, CrossDir::u));
    CHECK_FALSE(rect_crossing(cfg, -1, rect, CrossDir::v));

    // Breaking the corridor kills the plus crossing and opens a minus path
    // through the hole: A(4,0) - B(4,1) - A(4,1) - B(4,2) spans the y bands.
    cfg.set_spin({4, 1, Sub::B}, -1);
    cfg.set_spin({4, 1, Sub::A}, -1);
    CHECK_FALSE(rect_crossing(cfg, +1, rect, CrossDir::u));
    CHECK(rect_crossing(cfg, -1, rect, CrossDir::v));
}

TEST_CASE("opposite-sign enclosure") {
    const BoxSpec box = BoxSpec::free_box(5, 5);
    TriConfiguration cfg = uniform_tri(box, -1);
    cfg.set_spin(2, 2, +1);
    CHECK(enclosed_by_opposite_loop(cfg, 2, 2));
    CHECK_FALSE(enclosed_by_opposite_loop(cfg, 0, 0)); // the minus sea reaches the rim

    // Open an escape path for the plus cluster.
    cfg.set_spin(2, 1, +1);
    cfg.set_spin(2, 0, +1);
    CHECK_FALSE(enclosed_by_opposite_loop(cfg, 2, 2));

    SUBCASE("periodic boxes are read as a cut-open rhombus") {
        const BoxSpec pbox = BoxSpec::square_periodic(6);
        TriConfiguration inner = uniform_tri(pbox, -1);
        inner.set_spin(3, 3, +1);
        CHECK(enclosed_by_opposite_loop(inner, 3, 3));
        SpinConfiguration hex = SpinConfiguration::random(pbox, 0.0, 1);
        hex.set_spin({3, 3, Sub::B}, +1);
        CHECK(enclosed_by_opposite_loop(hex, 3, 3));
    }
}
