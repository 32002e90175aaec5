#pragma once

#include <cstdint>
#include <vector>

#include "domany/automaton.hpp"
#include "domany/lattice.hpp"

namespace domany {

// Which graph the equal-spin clusters live on.
//   hex: all A and B sites, hexagonal (degree-3) adjacency.
//   tri: B sites only, triangular (degree-6) adjacency.
enum class GraphKind : std::uint8_t { hex, tri };

struct ClusterInfo {
    std::int64_t id = -1; // smallest member site index (canonical label)
    std::int64_t size = 0;
    int sign = 0; // common spin of the cluster, +1 or -1
    // Periodic boxes: the cluster closes around the torus in u / v.
    bool winds_u = false;
    bool winds_v = false;
    // Free boxes: the cluster has a cell on the named rim.
    bool touches_umin = false;
    bool touches_umax = false;
    bool touches_vmin = false;
    bool touches_vmax = false;
};

// Equal-spin cluster decomposition of one configuration.  Labels are
// canonical: every cluster is named by the smallest site index it contains
// (site_index order for hex, cell_index order for tri), so two correct
// implementations produce identical label arrays.
class ClusterLabeling {
  public:
    GraphKind kind() const { return kind_; }
    const BoxSpec& box() const { return box_; }

    // Canonical label of x.  Throws std::domain_error for an A site under
    // tri kind or a site outside the box.
    std::int64_t label(SiteRef x) const;
    std::int64_t label_cell(std::int32_t u, std::int32_t v) const; // tri kind

    const ClusterInfo& cluster(std::int64_t id) const; // lookup by label
    const std::vector<ClusterInfo>& clusters() const { return clusters_; }

    bool same_cluster(SiteRef x, SiteRef y) const {
        const std::int64_t lx = label(x);
        return lx >= 0 && lx == label(y);
    }

  private:
    friend ClusterLabeling label_clusters(const SpinConfiguration&, GraphKind);
    friend ClusterLabeling label_clusters(const TriConfiguration&);

    BoxSpec box_;
    GraphKind kind_ = GraphKind::hex;
    std::vector<std::int64_t> label_;
    std::vector<ClusterInfo> clusters_; // ascending id
};

ClusterLabeling label_clusters(const SpinConfiguration& cfg, GraphKind kind);
ClusterLabeling label_clusters(const TriConfiguration& cfg);

bool connected(const ClusterLabeling& labels, SiteRef x, SiteRef y);

// True iff some site of x's cluster lies at min-image distance >= radius
// from x.  Periodic boxes reject radii beyond 0.75 * min(lu, lv), where the
// min-image metric stops being faithful.
bool connected_to_boundary(const ClusterLabeling& labels, SiteRef x, double radius);

// Single-cluster exploration without a full labeling.  BFS over the
// equal-spin cluster of the start site; when radius > 0 the search stops as
// soon as a member at min-image distance >= radius from the start is found
// (size is then a lower bound; with radius <= 0 size is exact and
// reached_radius stays false).  Winding is detected by tracking unwrapped
// cell coordinates.
struct ClusterProbe {
    std::int64_t size = 0;
    bool reached_radius = false;
    bool winds_u = false;
    bool winds_v = false;
};

// Reusable buffers for probe_cluster; cheap to construct, resized on demand.
class ClusterScratch {
  public:
    ClusterScratch() = default;

  private:
    friend ClusterProbe probe_cluster(const SpinConfiguration&, SiteRef, GraphKind, double,
                                      ClusterScratch&);
    friend ClusterProbe probe_cluster(const TriConfiguration&, std::int32_t, std::int32_t, double,
                                      ClusterScratch&);

    void prepare(std::size_t n);

    std::vector<std::uint32_t> stamp_;
    std::vector<std::int32_t> off_u_, off_v_;
    std::vector<std::int64_t> queue_;
    std::uint32_t epoch_ = 0;
};

ClusterProbe probe_cluster(const SpinConfiguration& cfg, SiteRef start, GraphKind kind,
                           double radius, ClusterScratch& scratch);
ClusterProbe probe_cluster(const TriConfiguration& cfg, std::int32_t u, std::int32_t v,
                           double radius, ClusterScratch& scratch);

// Crossing direction: u connects the u=0 and u=lu-1 columns (left-right in
// the embedding), v the v=0 and v=lv-1 rows.
enum class CrossDir : std::uint8_t { u, v };

// Index-rhombus crossing of the triangular lattice: does a chain of
// sign-spin cells, adjacent under the six T-offsets *without wrap*, join the
// two opposite sides?  On periodic configurations the cell array is read as
// a cut-open rhombus.  Self-matching duality on T: exactly one of
// {sign crossing along u, -sign crossing along v} holds.
bool rhombus_crossing(const TriConfiguration& cfg, int sign, CrossDir dir);
bool rhombus_crossing(const SpinConfiguration& cfg, int sign, CrossDir dir); // B plane

// Euclidean-rectangle crossing on the hexagonal graph: sites of the given
// sign whose embedded position falls inside the rectangle, hex adjacency
// without wrap; a crossing chain must come within `margin` of both opposing
// rectangle edges (x-edges for dir u, y-edges for dir v).
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

bool rect_crossing(const SpinConfiguration& cfg, int sign, Rect rect, CrossDir dir,
                   double margin = 1.0);

// True iff the wrap-free T-cluster of cell (u,v) fails to reach the index
// rim; by planarity this is equivalent to a closed chain of opposite spins
// separating the cell from the rim.
bool enclosed_by_opposite_loop(const TriConfiguration& cfg, std::int32_t u, std::int32_t v);
bool enclosed_by_opposite_loop(const SpinConfiguration& cfg, std::int32_t u, std::int32_t v);

} // namespace domany
