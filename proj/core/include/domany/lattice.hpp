#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <optional>

namespace domany {

// Hexagonal (honeycomb) lattice H, bipartite into sublattices A and B.  Both
// sublattices are triangular lattices; B is identified with the triangular
// lattice T throughout.  Sites are addressed by a cell coordinate (u, v) on
// the triangular Bravais lattice plus a sublattice tag:
//
//   B(u,v) sits at  u*a1 + v*a2,          a1 = (sqrt3, 0), a2 = (sqrt3/2, 3/2)
//   A(u,v) sits at  B(u,v) + (sqrt3/2, 1/2)   (the centroid of the "up"
//                                              triangle B(u,v),B(u+1,v),B(u,v+1))
//
// so every hexagon has side length 1 and every H-edge has length 1.
//
//        B(u,v+1)        B(u+1,v+1)
//            *               *
//                 A(u,v)
//            o      *        o          *  = B sites (the triangular lattice T)
//        A(u-1,v)        A(u+1,v)       o  = A sites (triangle centers)
//            *               *
//        B(u,v)          B(u+1,v)
//
// Neighbor offset tables (cell deltas):
//   H-neighbors of A(u,v):  B(u,v), B(u+1,v), B(u,v+1)
//   H-neighbors of B(u,v):  A(u,v), A(u-1,v), A(u,v-1)
//   T-neighbors of B(u,v):  (+1,0) (0,+1) (-1,+1) (-1,0) (0,-1) (+1,-1)

enum class Sub : std::uint8_t { A = 0, B = 1 };

struct SiteRef {
    std::int32_t u = 0;
    std::int32_t v = 0;
    Sub sub = Sub::B;

    friend bool operator==(const SiteRef&, const SiteRef&) = default;
};

enum class Boundary : std::uint8_t { periodic, free };

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// A finite box of cells [0,lu) x [0,lv), each cell holding one A and one B
// site.  Periodic boxes wrap cell coordinates modulo (lu, lv); they require
// even extents >= 4 so small-box neighbor wrap never aliases and the
// A/B bipartition survives translation identifications.  Free boxes simply
// truncate: sites outside the box are absent and rim degrees drop.
struct BoxSpec {
    std::int32_t lu = 0;
    std::int32_t lv = 0;
    Boundary boundary = Boundary::periodic;

    static BoxSpec periodic(std::int32_t lu, std::int32_t lv);
    static BoxSpec square_periodic(std::int32_t l) { return periodic(l, l); }
    static BoxSpec free_box(std::int32_t lu, std::int32_t lv);

    // Throws std::invalid_argument when extents violate the rules above.
    void validate() const;

    bool is_periodic() const { return boundary == Boundary::periodic; }
    std::int64_t num_cells() const { return std::int64_t(lu) * lv; }
    std::int64_t num_hex_sites() const { return 2 * num_cells(); }

    bool contains(SiteRef x) const {
        return x.u >= 0 && x.u < lu && x.v >= 0 && x.v < lv;
    }

    std::int32_t wrap_u(std::int32_t u) const {
        std::int32_t r = u % lu;
        return r < 0 ? r + lu : r;
    }
    std::int32_t wrap_v(std::int32_t v) const {
        std::int32_t r = v % lv;
        return r < 0 ? r + lv : r;
    }

    // Linear index of a cell; sites of one sublattice are stored in this
    // order, B plane first then A plane when both are present.
    std::int64_t cell_index(std::int32_t u, std::int32_t v) const {
        return std::int64_t(v) * lu + u;
    }
    std::int64_t site_index(SiteRef x) const {
        std::int64_t i = cell_index(x.u, x.v);
        return x.sub == Sub::B ? i : num_cells() + i;
    }

    friend bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

// Fixed-capacity neighbor list; avoids allocation in hot loops.
class SiteList {
  public:
    void push_back(SiteRef s) { sites_[count_++] = s; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    SiteRef operator[](std::size_t i) const { return sites_[i]; }
    const SiteRef* begin() const { return sites_.data(); }
    const SiteRef* end() const { return sites_.data() + count_; }
    bool contains(SiteRef s) const;

  private:
    std::array<SiteRef, 6> sites_{};
    std::size_t count_ = 0;
};

struct Offset {
    std::int32_t du = 0;
    std::int32_t dv = 0;
    friend bool operator==(const Offset&, const Offset&) = default;
};

// The six T-neighbor offsets in cyclic order.
inline constexpr std::array<Offset, 6> kTriOffsets{{
    {+1, 0}, {0, +1}, {-1, +1}, {-1, 0}, {0, -1}, {+1, -1},
}};

// Partition of the six T-neighbors of a site into three pairs, each pair
// forming a triangle with the site.  Translation invariant: the same offsets
// are used at every site.  Exactly two such partitions exist; `canonical()`
// pairs across the up-triangles of the embedding above (so that each pair's
// triangle carries an A site at its center), `mirrored()` is its point
// reflection.
struct PairScheme {
    std::array<std::array<Offset, 2>, 3> pairs{};

    static PairScheme canonical();
    static PairScheme mirrored();
    bool is_canonical() const { return *this == canonical(); }

    // Throws std::invalid_argument unless the pairs are disjoint, exhaust
    // the six T-offsets, and each pair is mutually T-adjacent.
    void validate() const;

    friend bool operator==(const PairScheme&, const PairScheme&) = default;
};

// R^2 embedding (hexagon side length 1).
Vec2 position(SiteRef x);
double euclidean_distance(SiteRef x, SiteRef y);

// Distance with periodic boxes resolved by minimum image over the 3x3
// translates; plain Euclidean distance for free boxes.
double min_image_distance(SiteRef x, SiteRef y, const BoxSpec& box);
double min_image_distance_sq(SiteRef x, SiteRef y, const BoxSpec& box);

// H-neighbors of x under the box's boundary rule.  Throws std::domain_error
// when x lies outside the box.
SiteList hex_neighbors(SiteRef x, const BoxSpec& box);

// The six T-neighbors of a B site (periodic) or the in-box subset (free).
// Throws std::domain_error for A sites or sites outside the box.
SiteList tri_neighbors(SiteRef x, const BoxSpec& box);

struct TriCell {
    std::int32_t u = 0;
    std::int32_t v = 0;
    friend bool operator==(const TriCell&, const TriCell&) = default;
};

// Star-triangle correspondence for one box and pairing: the triangular
// lattice T is identified with the B sublattice of H, and the triangle of
// each pair acquires the unique A site adjacent to exactly its three
// corners.  For the mirrored scheme the identification composes with the
// point reflection (u,v) -> (lu-1-u, lv-1-v), which maps down-triangles
// onto up-triangles; the map stays a bijection and all adjacency claims
// survive.
class StarTriangleMap {
  public:
    StarTriangleMap(const BoxSpec& box, const PairScheme& scheme);

    const BoxSpec& box() const { return box_; }
    const PairScheme& scheme() const { return scheme_; }

    // T site (u,v)  ->  corresponding B site of H.
    SiteRef b_site(std::int32_t u, std::int32_t v) const;
    // Inverse: B site of H -> T cell.
    TriCell tri_site(SiteRef b) const;
    // The A site at the center of pair `k` (0..2) of T site (u,v).  Empty
    // on free boxes when the triangle hangs over the rim; such triangles
    // are reported by rim_triangles_without_center().
    std::optional<SiteRef> center_site(std::int32_t u, std::int32_t v, int k) const;
    // The in-box B-site corners of the triangle owning A site a.
    SiteList triangle_of_center(SiteRef a) const;
    // Number of (site, pair) slots on a free box whose center is absent;
    // zero on periodic boxes.
    std::int64_t rim_triangles_without_center() const;

  private:
    TriCell map_cell(std::int32_t u, std::int32_t v) const;

    BoxSpec box_;
    PairScheme scheme_;
    bool reflect_ = false;
};

} // namespace domany

template <> struct std::hash<domany::SiteRef> {
    std::size_t operator()(const domany::SiteRef& s) const noexcept {
        std::uint64_t k = (std::uint64_t(std::uint32_t(s.u)) << 33) ^
                          (std::uint64_t(std::uint32_t(s.v)) << 1) ^
                          std::uint64_t(s.sub == domany::Sub::B);
        k *= 0x9e3779b97f4a7c15ULL;
        return std::size_t(k ^ (k >> 29));
    }
};
