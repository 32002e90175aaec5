#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "domany/lattice.hpp"
#include "support/oracles.hpp"

using namespace domany;
using domany::test::neighbors_by_distance;

namespace {

const double kRt3 = std::sqrt(3.0);

std::set<SiteRef> as_set(const SiteList& list) {
    return std::set<SiteRef>(list.begin(), list.end());
}

} // namespace

namespace domany { // set ordering for tests only; found via ADL
bool operator<(const SiteRef& a, const SiteRef& b) {
    return std::tuple(a.u, a.v, int(a.sub)) < std::tuple(b.u, b.v, int(b.sub));
}
} // namespace domany

TEST_CASE("box validation and index layout") {
    CHECK_NOTHROW(BoxSpec::square_periodic(4).validate());
    CHECK_NOTHROW(BoxSpec::periodic(8, 6).validate());
    CHECK_THROWS_AS(BoxSpec::periodic(5, 6).validate(), std::invalid_argument); // odd
    CHECK_THROWS_AS(BoxSpec::periodic(6, 7).validate(), std::invalid_argument);
    CHECK_THROWS_AS(BoxSpec::periodic(2, 4).validate(), std::invalid_argument); // too small
    CHECK_NOTHROW(BoxSpec::free_box(1, 1).validate());
    CHECK_NOTHROW(BoxSpec::free_box(5, 3).validate());
    CHECK_THROWS_AS(BoxSpec::free_box(0, 3).validate(), std::invalid_argument);

    const BoxSpec box = BoxSpec::periodic(6, 4);
    CHECK(box.num_cells() == 24);
    CHECK(box.num_hex_sites() == 48);
    CHECK(box.wrap_u(-1) == 5);
    CHECK(box.wrap_u(6) == 0);
    CHECK(box.wrap_v(-3) == 1);
    CHECK(box.cell_index(2, 3) == 3 * 6 + 2);
    // site_index: B plane first, then A, both in ascending cell order.
    CHECK(box.site_index({2, 3, Sub::B}) == 20);
    CHECK(box.site_index({2, 3, Sub::A}) == 24 + 20);
    CHECK(box.contains({5, 3, Sub::A}));
    CHECK_FALSE(box.contains({6, 0, Sub::A}));
    CHECK_FALSE(box.contains({0, -1, Sub::B}));
}

TEST_CASE("embedding positions") {
    const Vec2 b00 = position({0, 0, Sub::B});
    CHECK(b00.x == doctest::Approx(0.0));
    CHECK(b00.y == doctest::Approx(0.0));
    const Vec2 b10 = position({1, 0, Sub::B});
    CHECK(b10.x == doctest::Approx(kRt3));
    CHECK(b10.y == doctest::Approx(0.0));
    const Vec2 b01 = position({0, 1, Sub::B});
    CHECK(b01.x == doctest::Approx(kRt3 / 2));
    CHECK(b01.y == doctest::Approx(1.5));
    const Vec2 a00 = position({0, 0, Sub::A});
    CHECK(a00.x == doctest::Approx(kRt3 / 2));
    CHECK(a00.y == doctest::Approx(0.5));

    // Hexagon side length 1: every H edge is a unit segment.
    CHECK(euclidean_distance({0, 0, Sub::A}, {0, 0, Sub::B}) == doctest::Approx(1.0));
    CHECK(euclidean_distance({0, 0, Sub::A}, {1, 0, Sub::B}) == doctest::Approx(1.0));
    CHECK(euclidean_distance({0, 0, Sub::A}, {0, 1, Sub::B}) == doctest::Approx(1.0));
    // T neighbors sit at sqrt(3).
    for (const Offset& d : kTriOffsets)
        CHECK(euclidean_distance({0, 0, Sub::B}, {d.du, d.dv, Sub::B}) ==
              doctest::Approx(kRt3));
}

TEST_CASE("min-image distance") {
    const BoxSpec box = BoxSpec::square_periodic(6);
    // Wrapping beats the direct path across the box.
    CHECK(min_image_distance({0, 0, Sub::B}, {5, 0, Sub::B}, box) == doctest::Approx(kRt3));
    CHECK(min_image_distance({0, 0, Sub::B}, {0, 5, Sub::B}, box) == doctest::Approx(kRt3));
    CHECK(min_image_distance({0, 0, Sub::B}, {0, 0, Sub::B}, box) == doctest::Approx(0.0));
    for (std::int32_t u = 0; u < 6; ++u)
        for (std::int32_t v = 0; v < 6; ++v) {
            SiteRef x{1, 2, Sub::A}, y{u, v, Sub::B};
            CHECK(min_image_distance(x, y, box) == doctest::Approx(min_image_distance(y, x, box)));
            CHECK(min_image_distance(x, y, box) <= euclidean_distance(x, y) + 1e-12);
            CHECK(min_image_distance_sq(x, y, box) ==
                  doctest::Approx(std::pow(min_image_distance(x, y, box), 2)));
        }
    // Free boxes use the plain embedding.
    const BoxSpec free = BoxSpec::free_box(6, 6);
    CHECK(min_image_distance({0, 0, Sub::B}, {5, 0, Sub::B}, free) == doctest::Approx(5 * kRt3));
}

TEST_CASE("hex neighbors match the unit-distance oracle") {
    for (const BoxSpec& box : {BoxSpec::square_periodic(6), BoxSpec::free_box(5, 7),
                               BoxSpec::free_box(1, 1)}) {
        for (std::int32_t v = 0; v < box.lv; ++v)
            for (std::int32_t u = 0; u < box.lu; ++u)
                for (Sub sub : {Sub::A, Sub::B}) {
                    SiteRef x{u, v, sub};
                    auto got = as_set(hex_neighbors(x, box));
                    auto want = neighbors_by_distance(box, x, 1.0, false);
                    CHECK(got == std::set<SiteRef>(want.begin(), want.end()));
                    CHECK(got.size() <= 3);
                    if (box.is_periodic()) CHECK(got.size() == 3);
                    for (SiteRef y : got) CHECK(y.sub != sub); // H is bipartite
                }
    }
    CHECK_THROWS_AS(hex_neighbors({6, 0, Sub::A}, BoxSpec::square_periodic(6)),
                    std::domain_error);
}

TEST_CASE("tri neighbors match the sqrt(3)-distance oracle") {
    for (const BoxSpec& box : {BoxSpec::square_periodic(6), BoxSpec::free_box(5, 7)}) {
        for (std::int32_t v = 0; v < box.lv; ++v)
            for (std::int32_t u = 0; u < box.lu; ++u) {
                SiteRef x{u, v, Sub::B};
                auto got = as_set(tri_neighbors(x, box));
                auto want = neighbors_by_distance(box, x, kRt3, true);
                CHECK(got == std::set<SiteRef>(want.begin(), want.end()));
                if (box.is_periodic()) CHECK(got.size() == 6);
            }
    }
    // Free corner keeps only the two inward offsets.
    auto corner = as_set(tri_neighbors({0, 0, Sub::B}, BoxSpec::free_box(5, 7)));
    CHECK((corner == std::set<SiteRef>{{1, 0, Sub::B}, {0, 1, Sub::B}}));
    CHECK_THROWS_AS(tri_neighbors({0, 0, Sub::A}, BoxSpec::square_periodic(6)),
                    std::domain_error);
}

TEST_CASE("pair schemes partition the six offsets into adjacent pairs") {
    CHECK_NOTHROW(PairScheme::canonical().validate());
    CHECK_NOTHROW(PairScheme::mirrored().validate());
    CHECK(PairScheme::canonical().is_canonical());
    CHECK_FALSE(PairScheme::mirrored().is_canonical());
    // Mirrored = canonical with every offset negated.
    const PairScheme c = PairScheme::canonical(), m = PairScheme::mirrored();
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 2; ++j) {
            CHECK(m.pairs[k][j].du == -c.pairs[k][j].du);
            CHECK(m.pairs[k][j].dv == -c.pairs[k][j].dv);
        }

    PairScheme dup = c;
    dup.pairs[0][1] = dup.pairs[0][0];
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    PairScheme opposite = c; // pairs of opposite offsets are not T-adjacent
    opposite.pairs[0] = {{{+1, 0}, {-1, 0}}};
    opposite.pairs[1] = {{{0, +1}, {0, -1}}};
    opposite.pairs[2] = {{{-1, +1}, {+1, -1}}};
    CHECK_THROWS_AS(opposite.validate(), std::invalid_argument);

    PairScheme junk = c;
    junk.pairs[2][1] = {2, 0};
    CHECK_THROWS_AS(junk.validate(), std::invalid_argument);
}

TEST_CASE("star-triangle map geometry") {
    for (const PairScheme& scheme : {PairScheme::canonical(), PairScheme::mirrored()}) {
        for (const BoxSpec& box : {BoxSpec::periodic(6, 4), BoxSpec::free_box(5, 4)}) {
            CAPTURE(scheme.is_canonical());
            CAPTURE(box.is_periodic());
            const StarTriangleMap map(box, scheme);
            std::int64_t missing = 0;
            std::unordered_map<SiteRef, int> center_count;
            for (std::int32_t v = 0; v < box.lv; ++v)
                for (std::int32_t u = 0; u < box.lu; ++u) {
                    // T <-> B identification is a bijection.
                    const SiteRef b = map.b_site(u, v);
                    CHECK(b.sub == Sub::B);
                    CHECK((map.tri_site(b) == TriCell{u, v}));
                    for (int k = 0; k < 3; ++k) {
                        const auto center = map.center_site(u, v, k);
                        if (!center) {
                            ++missing;
                            continue;
                        }
                        CHECK(center->sub == Sub::A);
                        ++center_count[*center];
                        // The center is H-adjacent to exactly the b-images of
                        // the T site and its two pair partners.
                        std::set<SiteRef> expect{b};
                        for (const Offset& d : scheme.pairs[k]) {
                            std::int32_t pu = u + d.du, pv = v + d.dv;
                            if (box.is_periodic()) {
                                pu = box.wrap_u(pu);
                                pv = box.wrap_v(pv);
                            }
                            REQUIRE(box.contains({pu, pv, Sub::B}));
                            expect.insert(map.b_site(pu, pv));
                        }
                        CHECK(as_set(map.triangle_of_center(*center)) == expect);
                        CHECK(as_set(hex_neighbors(*center, box)) == expect);
                    }
                }
            // A triangle is generated once by each of its three T members.
            for (const auto& [site, count] : center_count) CHECK(count == 3);
            CHECK(missing == map.rim_triangles_without_center());
            if (box.is_periodic()) {
                CHECK(missing == 0);
                // Every A site is the center of exactly one triangle.
                CHECK(std::int64_t(center_count.size()) == box.num_cells());
            }
        }
    }
    CHECK_THROWS_AS(StarTriangleMap(BoxSpec::square_periodic(4), PairScheme{}),
                    std::invalid_argument);
}

TEST_CASE("site hashing works in unordered containers") {
    std::unordered_set<SiteRef> set;
    const BoxSpec box = BoxSpec::square_periodic(8);
    for (std::int32_t v = 0; v < 8; ++v)
        for (std::int32_t u = 0; u < 8; ++u)
            for (Sub sub : {Sub::A, Sub::B}) CHECK(set.insert({u, v, sub}).second);
    CHECK(set.size() == 128);
    CHECK(set.count({3, 4, Sub::A}) == 1);
    CHECK(set.count({3, 4, Sub::B}) == 1);
}
