#include "domany/automaton.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <vector>

#include "domany/rng.hpp"

namespace domany {

namespace {

void fill_plane_random(BitPlane& plane, double p, SplitMix64& rng) {
    for (std::int32_t v = 0; v < plane.lv(); ++v)
        for (std::int32_t u = 0; u < plane.lu(); ++u)
            plane.set(u, v, rng.next_unit() < p);
}

} // namespace

SpinConfiguration::SpinConfiguration(const BoxSpec& box)
    : box_(box), a_(box.lu, box.lv), b_(box.lu, box.lv) {
    box_.validate();
    a_.fill(true);
    b_.fill(true);
}

SpinConfiguration SpinConfiguration::random(const BoxSpec& box, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    SpinConfiguration cfg(box);
    SplitMix64 rng(seed);
    fill_plane_random(cfg.b_, p, rng); // B plane first: shared prefix with
    fill_plane_random(cfg.a_, p, rng); // a triangular init at the same seed
    return cfg;
}

std::int64_t total_energy(const SpinConfiguration& cfg) {
    const BoxSpec& box = cfg.box();
    const BitPlane& a = cfg.plane(Sub::A);
    const BitPlane& b = cfg.plane(Sub::B);
    if (box.is_periodic()) {
        // Every edge has exactly one A endpoint; classify by the B corner of
        // A(u,v): same cell, (u+1,v), (u,v+1).  Unsat edges are xor bits.
        const std::int32_t W = a.words_per_row();
        std::vector<std::uint64_t> shifted(W);
        std::int64_t unsat = 0;
        for (std::int32_t v = 0; v < box.lv; ++v) {
            const std::uint64_t* av = a.row(v);
            const std::uint64_t* b0 = b.row(v);
            const std::uint64_t* b2 = b.row((v + 1) % box.lv);
            row_shift_plus(shifted.data(), b0, box.lu, W);
            for (std::int32_t i = 0; i < W; ++i) {
                unsat += std::popcount(av[i] ^ b0[i]);
                unsat += std::popcount(av[i] ^ shifted[i]);
                unsat += std::popcount(av[i] ^ b2[i]);
            }
        }
        const std::int64_t edges = 3 * box.num_cells();
        return 2 * unsat - edges;
    }
    std::int64_t energy = 0;
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u) {
            SiteRef x{u, v, Sub::A};
            int sx = cfg.spin(x);
            for (SiteRef y : hex_neighbors(x, box)) energy -= sx * cfg.spin(y);
        }
    return energy;
}

std::int64_t delta_H(const SpinConfiguration& cfg, SiteRef x) {
    int sx = cfg.spin(x);
    std::int64_t sum = 0;
    for (SiteRef y : hex_neighbors(x, cfg.box())) sum += sx * cfg.spin(y);
    return 2 * sum;
}

namespace {

StepStats step_periodic(SpinConfiguration& cfg, Sub target) {
    const BoxSpec& box = cfg.box();
    const std::int32_t lu = box.lu, lv = box.lv;
    const std::int32_t W = BitPlane::words_per_row(lu);
    BitPlane& dst = cfg.plane(target);
    const BitPlane& src = cfg.plane(target == Sub::A ? Sub::B : Sub::A);
    std::vector<std::uint64_t> shifted(W);

    StepStats st{target, 0, 0};
    for (std::int32_t v = 0; v < lv; ++v) {
        const std::uint64_t *n1, *n2, *n3;
        if (target == Sub::A) {
            // Neighbors of A(u,v): B(u,v), B(u+1,v), B(u,v+1).
            n1 = src.row(v);
            row_shift_plus(shifted.data(), n1, lu, W);
            n2 = shifted.data();
            n3 = src.row((v + 1) % lv);
        } else {
            // Neighbors of B(u,v): A(u,v), A(u-1,v), A(u,v-1).
            n1 = src.row(v);
            row_shift_minus(shifted.data(), n1, lu, W);
            n2 = shifted.data();
            n3 = src.row((v - 1 + lv) % lv);
        }
        std::uint64_t* out = dst.row(v);
        for (std::int32_t i = 0; i < W; ++i) {
            std::uint64_t old = out[i];
            std::uint64_t next = majority3(n1[i], n2[i], n3[i]);
            std::uint64_t flipped = old ^ next; // >= 2 of 3 disagreed
            std::uint64_t all3 = (old ^ n1[i]) & (old ^ n2[i]) & (old ^ n3[i]);
            st.flips += std::popcount(flipped);
            // Each 2-of-3 flip lowers H by 2, each 3-of-3 flip by 6.
            st.energy_delta -= 2 * std::popcount(flipped) + 4 * std::popcount(all3);
            out[i] = next;
        }
    }
    return st;
}

StepStats step_free(SpinConfiguration& cfg, Sub target) {
    const BoxSpec& box = cfg.box();
    StepStats st{target, 0, 0};
    // Sites of one sublattice share no edges, so updating in place is exact:
    // each site reads only the other plane and its own unwritten bit.
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u) {
            SiteRef x{u, v, target};
            int sx = cfg.spin(x);
            int agree = 0, disagree = 0;
            for (SiteRef y : hex_neighbors(x, box))
                (cfg.spin(y) == sx ? agree : disagree)++;
            if (disagree > agree) { // strict majority; ties hold
                cfg.set_spin(x, -sx);
                ++st.flips;
                st.energy_delta += 2 * (agree - disagree);
            }
        }
    return st;
}

} // namespace

StepStats step(SpinConfiguration& cfg) {
    cfg.set_time(cfg.time() + 1);
    Sub target = (cfg.time() % 2 == 1) ? Sub::A : Sub::B;
    return cfg.box().is_periodic() ? step_periodic(cfg, target) : step_free(cfg, target);
}

void advance_to(SpinConfiguration& cfg, std::int64_t n) {
    if (n < cfg.time()) throw std::invalid_argument("cannot step backwards in time");
    while (cfg.time() < n) step(cfg);
}

DynamicsTrace run_to_fixation(SpinConfiguration& cfg, std::int64_t max_steps) {
    // Every sweep with flips lowers H by at least 2 and |H| <= 3N/2, so at
    // most 3N/2 active sweeps occur; interleaving quiet sweeps at worst
    // doubles that before an (A quiet, B quiet) pair must appear.
    if (max_steps < 0) max_steps = 3 * cfg.box().num_hex_sites() + 2;
    DynamicsTrace trace;
    trace.initial_energy = total_energy(cfg);
    std::int64_t energy = trace.initial_energy;
    bool a_quiet = false;
    while (std::int64_t(trace.steps.size()) < max_steps) {
        StepStats st = step(cfg);
        energy += st.energy_delta;
        trace.steps.push_back({cfg.time(), st.updated, st.flips, energy});
        if (st.flips > 0) trace.fixation_time = cfg.time();
        if (st.updated == Sub::A) {
            a_quiet = (st.flips == 0);
        } else if (a_quiet && st.flips == 0) {
            trace.fixated = true;
            break;
        }
    }
    return trace;
}

TriConfiguration::TriConfiguration(const BoxSpec& box, const PairScheme& scheme)
    : box_(box), scheme_(scheme), spins_(box.lu, box.lv) {
    box_.validate();
    scheme_.validate();
    spins_.fill(true);
}

TriConfiguration TriConfiguration::random(const BoxSpec& box, const PairScheme& scheme, double p,
                                          std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    TriConfiguration cfg(box, scheme);
    SplitMix64 rng(seed);
    fill_plane_random(cfg.spins_, p, rng);
    return cfg;
}

namespace {

std::int64_t tri_step_periodic(TriConfiguration& cfg) {
    const BoxSpec& box = cfg.box();
    const std::int32_t lu = box.lu, lv = box.lv;
    const std::int32_t W = BitPlane::words_per_row(lu);
    const BitPlane old = cfg.plane(); // neighbors live on the same lattice
    BitPlane& cur = cfg.plane();

    std::array<std::array<std::vector<std::uint64_t>, 2>, 3> bufs;
    for (auto& pair : bufs)
        for (auto& b : pair) b.assign(W, 0);

    std::int64_t flips = 0;
    for (std::int32_t v = 0; v < lv; ++v) {
        const std::uint64_t* self = old.row(v);
        std::array<std::array<const std::uint64_t*, 2>, 3> nbr{};
        for (int p = 0; p < 3; ++p)
            for (int j = 0; j < 2; ++j) {
                Offset o = cfg.scheme().pairs[p][j];
                const std::uint64_t* base = old.row((v + o.dv + lv) % lv);
                if (o.du == 0) {
                    nbr[p][j] = base;
                } else {
                    std::uint64_t* buf = bufs[p][j].data();
                    if (o.du > 0)
                        row_shift_plus(buf, base, lu, W);
                    else
                        row_shift_minus(buf, base, lu, W);
                    nbr[p][j] = buf;
                }
            }
        std::uint64_t* out = cur.row(v);
        for (std::int32_t i = 0; i < W; ++i) {
            std::uint64_t s = self[i];
            std::uint64_t h0 = (s ^ nbr[0][0][i]) & (s ^ nbr[0][1][i]);
            std::uint64_t h1 = (s ^ nbr[1][0][i]) & (s ^ nbr[1][1][i]);
            std::uint64_t h2 = (s ^ nbr[2][0][i]) & (s ^ nbr[2][1][i]);
            std::uint64_t flip = majority3(h0, h1, h2);
            flips += std::popcount(flip);
            out[i] = s ^ flip;
        }
    }
    return flips;
}

std::int64_t tri_step_free(TriConfiguration& cfg) {
    const BoxSpec& box = cfg.box();
    const BitPlane old = cfg.plane();
    std::int64_t flips = 0;
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u) {
            int s = old.get(u, v) ? +1 : -1;
            int hostile_pairs = 0;
            for (const auto& pair : cfg.scheme().pairs) {
                bool hostile = true;
                for (const Offset& o : pair) {
                    std::int32_t nu = u + o.du, nv = v + o.dv;
                    if (nu < 0 || nu >= box.lu || nv < 0 || nv >= box.lv) {
                        hostile = false; // incomplete rim pair never counts
                        break;
                    }
                    if ((old.get(nu, nv) ? +1 : -1) != -s) {
                        hostile = false;
                        break;
                    }
                }
                if (hostile) ++hostile_pairs;
            }
            if (hostile_pairs >= 2) {
                cfg.set_spin(u, v, -s);
                ++flips;
            }
        }
    return flips;
}

} // namespace

std::int64_t tri_step(TriConfiguration& cfg) {
    std::int64_t flips =
        cfg.box().is_periodic() ? tri_step_periodic(cfg) : tri_step_free(cfg);
    cfg.set_time(cfg.time() + 1);
    return flips;
}

SpinConfiguration lift_to_hex(const TriConfiguration& tri) {
    const BoxSpec& box = tri.box();
    StarTriangleMap map(box, tri.scheme());
    SpinConfiguration hex(box); // A plane all +1
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u)
            hex.set_spin(map.b_site(u, v), tri.spin(u, v));
    return hex;
}

TriConfiguration restrict_to_tri(const SpinConfiguration& hex, const PairScheme& scheme) {
    const BoxSpec& box = hex.box();
    StarTriangleMap map(box, scheme);
    TriConfiguration tri(box, scheme);
    for (std::int32_t v = 0; v < box.lv; ++v)
        for (std::int32_t u = 0; u < box.lu; ++u)
            tri.set_spin(u, v, hex.spin(map.b_site(u, v)));
    return tri;
}

} // namespace domany
