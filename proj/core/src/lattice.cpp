#include "domany/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace domany {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Bravais vectors of the triangular lattice (hexagon side 1).
constexpr double kA1x = kSqrt3, kA1y = 0.0;
constexpr double kA2x = kSqrt3 / 2.0, kA2y = 1.5;
// A sites sit at the up-triangle centroid, offset (a1+a2)/3 from B(u,v).
constexpr double kAOffX = kSqrt3 / 2.0, kAOffY = 0.5;

void require_in_box(SiteRef x, const BoxSpec& box) {
    if (!box.contains(x))
        throw std::domain_error("site (" + std::to_string(x.u) + "," + std::to_string(x.v) +
                                ") outside box " + std::to_string(box.lu) + "x" +
                                std::to_string(box.lv));
}

} // namespace

bool SiteList::contains(SiteRef s) const {
    return std::find(begin(), end(), s) != end();
}

BoxSpec BoxSpec::periodic(std::int32_t lu, std::int32_t lv) {
    BoxSpec b{lu, lv, Boundary::periodic};
    b.validate();
    return b;
}

BoxSpec BoxSpec::free_box(std::int32_t lu, std::int32_t lv) {
    BoxSpec b{lu, lv, Boundary::free};
    b.validate();
    return b;
}

void BoxSpec::validate() const {
    if (lu < 1 || lv < 1) throw std::invalid_argument("box extents must be positive");
    if (boundary == Boundary::periodic) {
        if (lu % 2 != 0 || lv % 2 != 0)
            throw std::invalid_argument("periodic box extents must be even");
        if (lu < 4 || lv < 4)
            throw std::invalid_argument("periodic box extents must be >= 4");
    }
}

PairScheme PairScheme::canonical() {
    // Pair k of site x spans the up-triangle centered at the A site
    // A(u,v), A(u-1,v), A(u,v-1) respectively.
    PairScheme s;
    s.pairs = {{{{{+1, 0}, {0, +1}}}, {{{-1, 0}, {-1, +1}}}, {{{0, -1}, {+1, -1}}}}};
    return s;
}

PairScheme PairScheme::mirrored() {
    PairScheme s = canonical();
    for (auto& pair : s.pairs)
        for (auto& o : pair) {
            o.du = -o.du;
            o.dv = -o.dv;
        }
    return s;
}

void PairScheme::validate() const {
    std::array<bool, 6> used{};
    for (const auto& pair : pairs) {
        for (const auto& o : pair) {
            auto it = std::find(kTriOffsets.begin(), kTriOffsets.end(), o);
            if (it == kTriOffsets.end())
                throw std::invalid_argument("pair scheme offset is not a T-neighbor offset");
            std::size_t idx = std::size_t(it - kTriOffsets.begin());
            if (used[idx]) throw std::invalid_argument("pair scheme reuses an offset");
            used[idx] = true;
        }
        // The two paired offsets must themselves be T-adjacent so the pair
        // forms a triangle with the central site.
        Offset d{pair[0].du - pair[1].du, pair[0].dv - pair[1].dv};
        if (std::find(kTriOffsets.begin(), kTriOffsets.end(), d) == kTriOffsets.end())
            throw std::invalid_argument("paired offsets are not mutually T-adjacent");
    }
}

Vec2 position(SiteRef x) {
    Vec2 p{x.u * kA1x + x.v * kA2x, x.u * kA1y + x.v * kA2y};
    if (x.sub == Sub::A) {
        p.x += kAOffX;
        p.y += kAOffY;
    }
    return p;
}

double euclidean_distance(SiteRef x, SiteRef y) {
    Vec2 a = position(x), b = position(y);
    return std::hypot(a.x - b.x, a.y - b.y);
}

double min_image_distance_sq(SiteRef x, SiteRef y, const BoxSpec& box) {
    Vec2 a = position(x), b = position(y);
    double dx = b.x - a.x, dy = b.y - a.y;
    if (!box.is_periodic()) return dx * dx + dy * dy;
    // Torus translates: minimize over the 3x3 images of the displacement.
    const double tux = box.lu * kA1x, tuy = box.lu * kA1y;
    const double tvx = box.lv * kA2x, tvy = box.lv * kA2y;
    double best = std::numeric_limits<double>::max();
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            double ex = dx + i * tux + j * tvx;
            double ey = dy + i * tuy + j * tvy;
            best = std::min(best, ex * ex + ey * ey);
        }
    return best;
}

double min_image_distance(SiteRef x, SiteRef y, const BoxSpec& box) {
    return std::sqrt(min_image_distance_sq(x, y, box));
}

SiteList hex_neighbors(SiteRef x, const BoxSpec& box) {
    require_in_box(x, box);
    static constexpr std::array<Offset, 3> kFromA{{{0, 0}, {+1, 0}, {0, +1}}};
    static constexpr std::array<Offset, 3> kFromB{{{0, 0}, {-1, 0}, {0, -1}}};
    const auto& offsets = (x.sub == Sub::A) ? kFromA : kFromB;
    const Sub other = (x.sub == Sub::A) ? Sub::B : Sub::A;
    SiteList out;
    for (const auto& o : offsets) {
        std::int32_t u = x.u + o.du, v = x.v + o.dv;
        if (box.is_periodic()) {
            out.push_back({box.wrap_u(u), box.wrap_v(v), other});
        } else if (u >= 0 && u < box.lu && v >= 0 && v < box.lv) {
            out.push_back({u, v, other});
        }
    }
    return out;
}

SiteList tri_neighbors(SiteRef x, const BoxSpec& box) {
    if (x.sub != Sub::B)
        throw std::domain_error("tri_neighbors: site is not on sublattice B");
    require_in_box(x, box);
    SiteList out;
    for (const auto& o : kTriOffsets) {
        std::int32_t u = x.u + o.du, v = x.v + o.dv;
        if (box.is_periodic()) {
            out.push_back({box.wrap_u(u), box.wrap_v(v), Sub::B});
        } else if (u >= 0 && u < box.lu && v >= 0 && v < box.lv) {
            out.push_back({u, v, Sub::B});
        }
    }
    return out;
}

StarTriangleMap::StarTriangleMap(const BoxSpec& box, const PairScheme& scheme)
    : box_(box), scheme_(scheme) {
    box_.validate();
    scheme_.validate();
    if (scheme == PairScheme::canonical()) {
        reflect_ = false;
    } else if (scheme == PairScheme::mirrored()) {
        reflect_ = true;
    } else {
        throw std::invalid_argument("unsupported pair scheme");
    }
}

TriCell StarTriangleMap::map_cell(std::int32_t u, std::int32_t v) const {
    if (!reflect_) return {u, v};
    return {box_.lu - 1 - u, box_.lv - 1 - v};
}

SiteRef StarTriangleMap::b_site(std::int32_t u, std::int32_t v) const {
    TriCell c = map_cell(u, v);
    return {c.u, c.v, Sub::B};
}

TriCell StarTriangleMap::tri_site(SiteRef b) const {
    if (b.sub != Sub::B) throw std::domain_error("tri_site: not a B site");
    return map_cell(b.u, b.v); // the reflection is an involution
}

std::optional<SiteRef> StarTriangleMap::center_site(std::int32_t u, std::int32_t v, int k) const {
    if (k < 0 || k > 2) throw std::invalid_argument("pair index must be 0..2");
    // In the canonical frame, pair k of B(a,b) is centered at
    // A(a,b), A(a-1,b), A(a,b-1) respectively.
    TriCell c = map_cell(u, v);
    std::int32_t au = c.u - (k == 1 ? 1 : 0);
    std::int32_t av = c.v - (k == 2 ? 1 : 0);
    if (box_.is_periodic()) return SiteRef{box_.wrap_u(au), box_.wrap_v(av), Sub::A};
    if (au < 0 || av < 0) return std::nullopt;
    // Free box: the center exists only if the whole triangle is in-box.
    SiteRef a{au, av, Sub::A};
    if (hex_neighbors(a, box_).size() < 3) return std::nullopt;
    return a;
}

SiteList StarTriangleMap::triangle_of_center(SiteRef a) const {
    if (a.sub != Sub::A) throw std::domain_error("triangle_of_center: not an A site");
    return hex_neighbors(a, box_);
}

std::int64_t StarTriangleMap::rim_triangles_without_center() const {
    if (box_.is_periodic()) return 0;
    std::int64_t missing = 0;
    for (std::int32_t v = 0; v < box_.lv; ++v)
        for (std::int32_t u = 0; u < box_.lu; ++u)
            for (int k = 0; k < 3; ++k)
                if (!center_site(u, v, k)) ++missing;
    return missing;
}

} // namespace domany
