#include "domany/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace domany {

namespace {

void check_sign(int sign) {
    if (sign != +1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
}

void check_radius(const BoxSpec& box, double radius) {
    if (radius <= 0.0) return;
    if (box.is_periodic() && radius > 0.75 * std::min(box.lu, box.lv))
        throw std::invalid_argument(
            "radius exceeds 0.75*min(lu,lv); min-image distances are not faithful that far");
}

// Union-find over site indices that carries, per node, its displacement
// from the root in unwrapped cell coordinates.  Joining two already-united
// sites through an edge whose displacement disagrees with the stored ones
// certifies a cycle winding around the torus.
class WindingDSU {
  public:
    explicit WindingDSU(std::int64_t n)
        : parent_(n), size_(n, 1), off_u_(n, 0), off_v_(n, 0), winds_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::int64_t(0));
    }

    std::int64_t find(std::int64_t i) {
        std::int64_t ou, ov;
        return find(i, ou, ov);
    }

    std::int64_t find(std::int64_t i, std::int64_t& ou, std::int64_t& ov) {
        std::int64_t root = i, su = 0, sv = 0;
        while (parent_[root] != root) {
            su += off_u_[root];
            sv += off_v_[root];
            root = parent_[root];
        }
        // Full path compression, rewriting offsets relative to the root.
        std::int64_t x = i, xu = su, xv = sv;
        while (parent_[x] != root) {
            std::int64_t next = parent_[x];
            std::int64_t nu = xu - off_u_[x], nv = xv - off_v_[x];
            parent_[x] = root;
            off_u_[x] = std::int32_t(xu);
            off_v_[x] = std::int32_t(xv);
            x = next;
            xu = nu;
            xv = nv;
        }
        ou = su;
        ov = sv;
        return root;
    }

    // Join along an edge x -> y whose raw cell displacement is (du, dv),
    // i.e. unwrapped(y) = unwrapped(x) + (du, dv).
    void unite(std::int64_t x, std::int64_t y, std::int32_t du, std::int32_t dv) {
        std::int64_t xu, xv, yu, yv;
        std::int64_t rx = find(x, xu, xv);
        std::int64_t ry = find(y, yu, yv);
        if (rx == ry) {
            std::int64_t wu = xu + du - yu, wv = xv + dv - yv;
            if (wu != 0) winds_[rx] |= 1;
            if (wv != 0) winds_[rx] |= 2;
            return;
        }
        if (size_[rx] < size_[ry]) {
            std::swap(rx, ry);
            std::swap(xu, yu);
            std::swap(xv, yv);
            du = -du;
            dv = -dv;
        }
        parent_[ry] = rx;
        off_u_[ry] = std::int32_t(xu + du - yu);
        off_v_[ry] = std::int32_t(xv + dv - yv);
        size_[rx] += size_[ry];
        winds_[rx] |= winds_[ry];
    }

    std::int64_t component_size(std::int64_t root) const { return size_[root]; }
    bool winds_u(std::int64_t root) const { return winds_[root] & 1; }
    bool winds_v(std::int64_t root) const { return winds_[root] & 2; }

  private:
    std::vector<std::int64_t> parent_;
    std::vector<std::int64_t> size_;
    std::vector<std::int32_t> off_u_, off_v_;
    std::vector<std::uint8_t> winds_;
};

// Raw (unwrapped) cell displacements to the three hex neighbors, by source
// sublattice.
constexpr std::array<Offset, 3> kHexDeltaFromA{{{0, 0}, {+1, 0}, {0, +1}}};
constexpr std::array<Offset, 3> kHexDeltaFromB{{{0, 0}, {-1, 0}, {0, -1}}};
// One representative per T edge (the other three offsets repeat them).
constexpr std::array<Offset, 3> kTriEdgeDeltas{{{+1, 0}, {0, +1}, {-1, +1}}};

struct RawLabeling {
    std::vector<std::int64_t> label;
    std::vector<ClusterInfo> clusters;
};

template <class SpinAt> // int(cell u, cell v)
RawLabeling label_tri_cells(const BoxSpec& box, SpinAt spin_at) {
    const std::int64_t n = box.num_cells();
    WindingDSU dsu(n);
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u) {
            int s = spin_at(u, v);
            for (const Offset& d : kTriEdgeDeltas) {
                std::int32_t nu = u + d.du, nv = v + d.dv;
                if (box.is_periodic()) {
                    nu = box.wrap_u(nu);
                    nv = box.wrap_v(nv);
                } else if (nu < 0 || nu >= box.lu || nv < 0 || nv >= box.lv) {
                    continue;
                }
                if (spin_at(nu, nv) == s)
                    dsu.unite(box.cell_index(u, v), box.cell_index(nu, nv), d.du, d.dv);
            }
        }

    RawLabeling out;
    out.label.assign(n, -1);
    std::vector<std::int64_t> cluster_of_root(n, -1);
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u) {
            std::int64_t i = box.cell_index(u, v);
            std::int64_t root = dsu.find(i);
            std::int64_t ci = cluster_of_root[root];
            if (ci < 0) {
                ci = std::int64_t(out.clusters.size());
                cluster_of_root[root] = ci;
                ClusterInfo info;
                info.id = i; // ascending scan => smallest member index
                info.size = dsu.component_size(root);
                info.sign = spin_at(u, v);
                info.winds_u = dsu.winds_u(root);
                info.winds_v = dsu.winds_v(root);
                out.clusters.push_back(info);
            }
            out.label[i] = out.clusters[ci].id;
            if (!box.is_periodic()) {
                ClusterInfo& info = out.clusters[ci];
                info.touches_umin |= (u == 0);
                info.touches_umax |= (u == box.lu - 1);
                info.touches_vmin |= (v == 0);
                info.touches_vmax |= (v == box.lv - 1);
            }
        }
    return out;
}

RawLabeling label_hex_sites(const SpinConfiguration& cfg) {
    const BoxSpec& box = cfg.box();
    const std::int64_t n = box.num_hex_sites();
    WindingDSU dsu(n);
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u) {
            SiteRef a{u, v, Sub::A};
            int s = cfg.spin(a);
            for (const Offset& d : kHexDeltaFromA) { // every H edge has one A end
                std::int32_t nu = u + d.du, nv = v + d.dv;
                if (box.is_periodic()) {
                    nu = box.wrap_u(nu);
                    nv = box.wrap_v(nv);
                } else if (nu < 0 || nu >= box.lu || nv < 0 || nv >= box.lv) {
                    continue;
                }
                SiteRef b{nu, nv, Sub::B};
                if (cfg.spin(b) == s)
                    dsu.unite(box.site_index(a), box.site_index(b), d.du, d.dv);
            }
        }

    RawLabeling out;
    out.label.assign(n, -1);
    std::vector<std::int64_t> cluster_of_root(n, -1);
    for (std::int64_t i = 0; i < n; ++i) {
        // site_index order: B plane first, then A plane.
        std::int64_t cell = i < box.num_cells() ? i : i - box.num_cells();
        std::int32_t u = std::int32_t(cell % box.lu);
        std::int32_t v = std::int32_t(cell / box.lu);
        Sub sub = i < box.num_cells() ? Sub::B : Sub::A;
        std::int64_t root = dsu.find(i);
        std::int64_t ci = cluster_of_root[root];
        if (ci < 0) {
            ci = std::int64_t(out.clusters.size());
            cluster_of_root[root] = ci;
            ClusterInfo info;
            info.id = i;
            info.size = dsu.component_size(root);
            info.sign = cfg.spin({u, v, sub});
            info.winds_u = dsu.winds_u(root);
            info.winds_v = dsu.winds_v(root);
            out.clusters.push_back(info);
        }
        out.label[i] = out.clusters[ci].id;
        if (!box.is_periodic()) {
            ClusterInfo& info = out.clusters[ci];
            info.touches_umin |= (u == 0);
            info.touches_umax |= (u == box.lu - 1);
            info.touches_vmin |= (v == 0);
            info.touches_vmax |= (v == box.lv - 1);
        }
    }
    return out;
}

} // namespace

std::int64_t ClusterLabeling::label(SiteRef x) const {
    if (!box_.contains(x)) throw std::domain_error("site outside box");
    if (kind_ == GraphKind::tri) {
        if (x.sub != Sub::B) throw std::domain_error("tri labeling covers B sites only");
        return label_[box_.cell_index(x.u, x.v)];
    }
    return label_[box_.site_index(x)];
}

std::int64_t ClusterLabeling::label_cell(std::int32_t u, std::int32_t v) const {
    return label({u, v, Sub::B});
}

const ClusterInfo& ClusterLabeling::cluster(std::int64_t id) const {
    auto it = std::lower_bound(clusters_.begin(), clusters_.end(), id,
                               [](const ClusterInfo& c, std::int64_t key) { return c.id < key; });
    if (it == clusters_.end() || it->id != id)
        throw std::invalid_argument("no cluster with that label");
    return *it;
}

ClusterLabeling label_clusters(const SpinConfiguration& cfg, GraphKind kind) {
    ClusterLabeling out;
    out.box_ = cfg.box();
    out.kind_ = kind;
    RawLabeling raw = (kind == GraphKind::hex)
                          ? label_hex_sites(cfg)
                          : label_tri_cells(cfg.box(), [&cfg](std::int32_t u, std::int32_t v) {
                                return cfg.spin({u, v, Sub::B});
                            });
    out.label_ = std::move(raw.label);
    out.clusters_ = std::move(raw.clusters);
    std::sort(out.clusters_.begin(), out.clusters_.end(),
              [](const ClusterInfo& a, const ClusterInfo& b) { return a.id < b.id; });
    return out;
}

ClusterLabeling label_clusters(const TriConfiguration& cfg) {
    ClusterLabeling out;
    out.box_ = cfg.box();
    out.kind_ = GraphKind::tri;
    RawLabeling raw = label_tri_cells(
        cfg.box(), [&cfg](std::int32_t u, std::int32_t v) { return cfg.spin(u, v); });
    out.label_ = std::move(raw.label);
    out.clusters_ = std::move(raw.clusters);
    std::sort(out.clusters_.begin(), out.clusters_.end(),
              [](const ClusterInfo& a, const ClusterInfo& b) { return a.id < b.id; });
    return out;
}

bool connected(const ClusterLabeling& labels, SiteRef x, SiteRef y) {
    return labels.same_cluster(x, y);
}

bool connected_to_boundary(const ClusterLabeling& labels, SiteRef x, double radius) {
    const BoxSpec& box = labels.box();
    check_radius(box, radius);
    const std::int64_t lab = labels.label(x);
    if (lab < 0) return false;
    const double r2 = radius * radius;
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u) {
            if (labels.kind() == GraphKind::tri) {
                SiteRef y{u, v, Sub::B};
                if (labels.label(y) == lab && min_image_distance_sq(x, y, box) >= r2) return true;
            } else {
                for (Sub sub : {Sub::B, Sub::A}) {
                    SiteRef y{u, v, sub};
                    if (labels.label(y) == lab && min_image_distance_sq(x, y, box) >= r2)
                        return true;
                }
            }
        }
    return false;
}

void ClusterScratch::prepare(std::size_t n) {
    if (stamp_.size() < n) {
        stamp_.assign(n, 0);
        off_u_.assign(n, 0);
        off_v_.assign(n, 0);
        epoch_ = 0;
    }
    if (++epoch_ == 0) { // stamp wrap-around: start a fresh era
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    queue_.clear();
}

namespace {

template <class SpinAt>
ClusterProbe probe_bfs(const BoxSpec& box, SiteRef start, GraphKind kind, double radius,
                       std::vector<std::uint32_t>& stamp, std::vector<std::int32_t>& off_u,
                       std::vector<std::int32_t>& off_v, std::vector<std::int64_t>& queue,
                       std::uint32_t epoch, SpinAt spin_at) {
    check_radius(box, radius);
    const bool tri = (kind == GraphKind::tri);
    const std::int64_t cells = box.num_cells();
    const double r2 = radius * radius;
    const int sign = spin_at(start);

    auto index_of = [&](SiteRef s) {
        std::int64_t i = box.cell_index(s.u, s.v);
        return (!tri && s.sub == Sub::A) ? cells + i : i;
    };
    auto site_of = [&](std::int64_t i) {
        std::int64_t cell = i < cells ? i : i - cells;
        return SiteRef{std::int32_t(cell % box.lu), std::int32_t(cell / box.lu),
                       (!tri && i >= cells) ? Sub::A : Sub::B};
    };

    ClusterProbe probe;
    std::int64_t start_idx = index_of(start);
    stamp[start_idx] = epoch;
    off_u[start_idx] = 0;
    off_v[start_idx] = 0;
    queue.push_back(start_idx);
    probe.size = 1;

    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::int64_t i = queue[head];
        SiteRef x = site_of(i);
        std::int32_t xu_off = off_u[i], xv_off = off_v[i];

        auto visit = [&](std::int32_t du, std::int32_t dv, Sub nsub) -> bool {
            std::int32_t nu = x.u + du, nv = x.v + dv;
            if (box.is_periodic()) {
                nu = box.wrap_u(nu);
                nv = box.wrap_v(nv);
            } else if (nu < 0 || nu >= box.lu || nv < 0 || nv >= box.lv) {
                return false;
            }
            SiteRef y{nu, nv, nsub};
            if (spin_at(y) != sign) return false;
            std::int64_t j = index_of(y);
            if (stamp[j] == epoch) {
                if (off_u[j] != xu_off + du) probe.winds_u = true;
                if (off_v[j] != xv_off + dv) probe.winds_v = true;
                return false;
            }
            stamp[j] = epoch;
            off_u[j] = xu_off + du;
            off_v[j] = xv_off + dv;
            queue.push_back(j);
            ++probe.size;
            if (radius > 0.0 && min_image_distance_sq(start, y, box) >= r2) {
                probe.reached_radius = true;
                return true;
            }
            return false;
        };

        bool stop = false;
        if (tri) {
            for (const Offset& d : kTriOffsets)
                if ((stop = visit(d.du, d.dv, Sub::B))) break;
        } else if (x.sub == Sub::A) {
            for (const Offset& d : kHexDeltaFromA)
                if ((stop = visit(d.du, d.dv, Sub::B))) break;
        } else {
            for (const Offset& d : kHexDeltaFromB)
                if ((stop = visit(d.du, d.dv, Sub::A))) break;
        }
        if (stop) break;
    }
    return probe;
}

} // namespace

ClusterProbe probe_cluster(const SpinConfiguration& cfg, SiteRef start, GraphKind kind,
                           double radius, ClusterScratch& scratch) {
    const BoxSpec& box = cfg.box();
    if (!box.contains(start)) throw std::domain_error("start site outside box");
    if (kind == GraphKind::tri && start.sub != Sub::B)
        throw std::domain_error("tri probe must start on a B site");
    std::size_t n = std::size_t(kind == GraphKind::tri ? box.num_cells() : box.num_hex_sites());
    scratch.prepare(n);
    return probe_bfs(box, start, kind, radius, scratch.stamp_, scratch.off_u_, scratch.off_v_,
                     scratch.queue_, scratch.epoch_, [&cfg](SiteRef s) { return cfg.spin(s); });
}

ClusterProbe probe_cluster(const TriConfiguration& cfg, std::int32_t u, std::int32_t v,
                           double radius, ClusterScratch& scratch) {
    const BoxSpec& box = cfg.box();
    SiteRef start{u, v, Sub::B};
    if (!box.contains(start)) throw std::domain_error("start cell outside box");
    scratch.prepare(std::size_t(box.num_cells()));
    return probe_bfs(box, start, GraphKind::tri, radius, scratch.stamp_, scratch.off_u_,
                     scratch.off_v_, scratch.queue_, scratch.epoch_,
                     [&cfg](SiteRef s) { return cfg.spin(s.u, s.v); });
}

namespace {

bool rhombus_crossing_impl(const BitPlane& plane, const BoxSpec& box, int sign, CrossDir dir) {
    check_sign(sign);
    const bool want = (sign > 0);
    const std::int32_t lu = box.lu, lv = box.lv;
    std::vector<std::uint8_t> seen(std::size_t(lu) * lv, 0);
    std::vector<std::int32_t> queue;
    queue.reserve(std::size_t(lu) * lv);

    auto idx = [lu](std::int32_t u, std::int32_t v) { return v * lu + u; };
    auto seed = [&](std::int32_t u, std::int32_t v) {
        if (plane.get(u, v) == want && !seen[idx(u, v)]) {
            seen[idx(u, v)] = 1;
            queue.push_back(idx(u, v));
        }
    };

    if (dir == CrossDir::u) {
        for (std::int32_t v = 0; v < lv; ++v) seed(0, v);
    } else {
        for (std::int32_t u = 0; u < lu; ++u) seed(u, 0);
    }

    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::int32_t u = queue[head] % lu, v = queue[head] / lu;
        if (dir == CrossDir::u ? (u == lu - 1) : (v == lv - 1)) return true;
        for (const Offset& d : kTriOffsets) {
            std::int32_t nu = u + d.du, nv = v + d.dv; // wrap-free by design
            if (nu < 0 || nu >= lu || nv < 0 || nv >= lv) continue;
            if (plane.get(nu, nv) == want && !seen[idx(nu, nv)]) {
                seen[idx(nu, nv)] = 1;
                queue.push_back(idx(nu, nv));
            }
        }
    }
    return false;
}

} // namespace

bool rhombus_crossing(const TriConfiguration& cfg, int sign, CrossDir dir) {
    return rhombus_crossing_impl(cfg.plane(), cfg.box(), sign, dir);
}

bool rhombus_crossing(const SpinConfiguration& cfg, int sign, CrossDir dir) {
    return rhombus_crossing_impl(cfg.plane(Sub::B), cfg.box(), sign, dir);
}

bool rect_crossing(const SpinConfiguration& cfg, int sign, Rect rect, CrossDir dir,
                   double margin) {
    check_sign(sign);
    const BoxSpec& box = cfg.box();
    const std::int64_t n = box.num_hex_sites();
    std::vector<std::uint8_t> member(std::size_t(n), 0);
    std::vector<std::uint8_t> seen(std::size_t(n), 0);
    std::vector<std::int64_t> queue;

    auto in_rect = [&rect](Vec2 p) {
        return p.x >= rect.x0 && p.x <= rect.x1 && p.y >= rect.y0 && p.y <= rect.y1;
    };
    auto near_low = [&](Vec2 p) {
        return dir == CrossDir::u ? (p.x <= rect.x0 + margin) : (p.y <= rect.y0 + margin);
    };
    auto near_high = [&](Vec2 p) {
        return dir == CrossDir::u ? (p.x >= rect.x1 - margin) : (p.y >= rect.y1 - margin);
    };

    // Membership uses the fundamental-domain embedding; adjacency below is
    // wrap-free, so periodic configurations are read as a cut-open patch.
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u)
            for (Sub sub : {Sub::B, Sub::A}) {
                SiteRef s{u, v, sub};
                if (cfg.spin(s) != sign) continue;
                if (!in_rect(position(s))) continue;
                std::int64_t i = box.site_index(s);
                member[i] = 1;
                if (near_low(position(s))) {
                    seen[i] = 1;
                    queue.push_back(i);
                }
            }

    const std::int64_t cells = box.num_cells();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::int64_t i = queue[head];
        std::int64_t cell = i < cells ? i : i - cells;
        SiteRef x{std::int32_t(cell % box.lu), std::int32_t(cell / box.lu),
                  i < cells ? Sub::B : Sub::A};
        if (near_high(position(x))) return true;
        const auto& deltas = (x.sub == Sub::A) ? kHexDeltaFromA : kHexDeltaFromB;
        const Sub nsub = (x.sub == Sub::A) ? Sub::B : Sub::A;
        for (const Offset& d : deltas) {
            std::int32_t nu = x.u + d.du, nv = x.v + d.dv; // wrap-free
            if (nu < 0 || nu >= box.lu || nv < 0 || nv >= box.lv) continue;
            std::int64_t j = box.cell_index(nu, nv) + (nsub == Sub::A ? cells : 0);
            if (member[j] && !seen[j]) {
                seen[j] = 1;
                queue.push_back(j);
            }
        }
    }
    return false;
}

namespace {

bool enclosed_impl(const BitPlane& plane, const BoxSpec& box, std::int32_t u0, std::int32_t v0) {
    if (u0 < 0 || u0 >= box.lu || v0 < 0 || v0 >= box.lv)
        throw std::domain_error("cell outside box");
    const bool want = plane.get(u0, v0);
    const std::int32_t lu = box.lu, lv = box.lv;
    std::vector<std::uint8_t> seen(std::size_t(lu) * lv, 0);
    std::vector<std::int32_t> queue;
    seen[v0 * lu + u0] = 1;
    queue.push_back(v0 * lu + u0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::int32_t u = queue[head] % lu, v = queue[head] / lu;
        if (u == 0 || u == lu - 1 || v == 0 || v == lv - 1) return false; // reached the rim
        for (const Offset& d : kTriOffsets) {
            std::int32_t nu = u + d.du, nv = v + d.dv; // wrap-free
            if (nu < 0 || nu >= lu || nv < 0 || nv >= lv) continue;
            if (plane.get(nu, nv) == want && !seen[nv * lu + nu]) {
                seen[nv * lu + nu] = 1;
                queue.push_back(nv * lu + nu);
            }
        }
    }
    return true;
}

} // namespace

bool enclosed_by_opposite_loop(const TriConfiguration& cfg, std::int32_t u, std::int32_t v) {
    return enclosed_impl(cfg.plane(), cfg.box(), u, v);
}

bool enclosed_by_opposite_loop(const SpinConfiguration& cfg, std::int32_t u, std::int32_t v) {
    return enclosed_impl(cfg.plane(Sub::B), cfg.box(), u, v);
}

} // namespace domany
