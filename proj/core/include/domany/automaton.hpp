#pragma once

#include <cstdint>
#include <vector>

#include "domany/bitgrid.hpp"
#include "domany/lattice.hpp"

namespace domany {

// Spin field on the hexagonal lattice, sigma in {-1,+1}, stored as one bit
// plane per sublattice (bit 1 <=> +1).  Time counts synchronous sublattice
// sweeps: step n updates A when n is odd and B when n is even, starting
// from time 0.
class SpinConfiguration {
  public:
    explicit SpinConfiguration(const BoxSpec& box); // all spins +1

    // Product measure init: one uniform per site, +1 iff uniform < p.
    // Draw order is fixed: B plane in ascending cell index, then A plane in
    // ascending cell index.  Runs at different p but the same seed therefore
    // share uniforms site by site (monotone coupling), and the B-plane draws
    // alone reproduce a triangular-lattice init with the same seed.
    static SpinConfiguration random(const BoxSpec& box, double p, std::uint64_t seed);

    const BoxSpec& box() const { return box_; }
    std::int64_t time() const { return time_; }
    void set_time(std::int64_t t) { time_ = t; }

    int spin(SiteRef x) const {
        const BitPlane& pl = (x.sub == Sub::B) ? b_ : a_;
        return pl.get(x.u, x.v) ? +1 : -1;
    }
    void set_spin(SiteRef x, int s) {
        BitPlane& pl = (x.sub == Sub::B) ? b_ : a_;
        pl.set(x.u, x.v, s > 0);
    }

    const BitPlane& plane(Sub s) const { return s == Sub::B ? b_ : a_; }
    BitPlane& plane(Sub s) { return s == Sub::B ? b_ : a_; }

    std::int64_t num_plus() const { return a_.count_ones() + b_.count_ones(); }

    // Equality of the spin field (box and both planes); times may differ.
    friend bool operator==(const SpinConfiguration& lhs, const SpinConfiguration& rhs) {
        return lhs.box_ == rhs.box_ && lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
    }

  private:
    BoxSpec box_;
    BitPlane a_;
    BitPlane b_;
    std::int64_t time_ = 0;
};

// Energy H = -sum over hexagonal edges of sigma_x sigma_y, each edge once.
// Free boxes sum over existing edges only.
std::int64_t total_energy(const SpinConfiguration& cfg);

// Energy change if x alone flipped: 2 * sum over existing neighbors y of
// sigma_x sigma_y.
std::int64_t delta_H(const SpinConfiguration& cfg, SiteRef x);

struct StepStats {
    Sub updated = Sub::A;
    std::int64_t flips = 0;
    std::int64_t energy_delta = 0;
};

// Advance one synchronous sweep of the zero-temperature dynamics: every site
// of the scheduled sublattice flips iff its flip strictly lowers the energy
// (equivalently, iff a strict majority of its existing neighbors disagree;
// ties hold).  Periodic boxes run a bit-parallel kernel, free boxes a scalar
// sweep; both are exact and agree site for site.
StepStats step(SpinConfiguration& cfg);

// Run steps until time() == n.
void advance_to(SpinConfiguration& cfg, std::int64_t n);

struct TraceEntry {
    std::int64_t n = 0;
    Sub updated = Sub::A;
    std::int64_t flips = 0;
    std::int64_t energy = 0; // after the step
};

struct DynamicsTrace {
    std::vector<TraceEntry> steps;
    std::int64_t initial_energy = 0;
    std::int64_t fixation_time = 0; // last step with flips > 0; 0 if none
    bool fixated = false;
};

// Step until one flip-free A-sweep is followed by one flip-free B-sweep (the
// fixation criterion), or until max_steps sweeps have run.  Energy descent
// bounds the former by 3N sweeps plus two; max_steps < 0 selects that bound.
DynamicsTrace run_to_fixation(SpinConfiguration& cfg, std::int64_t max_steps = -1);

// Pair-rule automaton on the triangular lattice: site x flips iff at least
// two of its three neighbor pairs are entirely in state -sigma_x.  On free
// boxes only pairs with both members in the box count.  Synchronous; one
// tri_step corresponds to two sweeps (one A, one B) of the hexagonal
// dynamics through the star-triangle map.
class TriConfiguration {
  public:
    TriConfiguration(const BoxSpec& box, const PairScheme& scheme); // all +1

    // Same draw order as the B plane of SpinConfiguration::random: ascending
    // cell index, +1 iff uniform < p.
    static TriConfiguration random(const BoxSpec& box, const PairScheme& scheme, double p,
                                   std::uint64_t seed);

    const BoxSpec& box() const { return box_; }
    const PairScheme& scheme() const { return scheme_; }
    std::int64_t time() const { return time_; }
    void set_time(std::int64_t t) { time_ = t; }

    int spin(std::int32_t u, std::int32_t v) const { return spins_.get(u, v) ? +1 : -1; }
    void set_spin(std::int32_t u, std::int32_t v, int s) { spins_.set(u, v, s > 0); }

    const BitPlane& plane() const { return spins_; }
    BitPlane& plane() { return spins_; }

    // Equality of the spin field; times may differ.
    friend bool operator==(const TriConfiguration& lhs, const TriConfiguration& rhs) {
        return lhs.box_ == rhs.box_ && lhs.scheme_ == rhs.scheme_ && lhs.spins_ == rhs.spins_;
    }

  private:
    BoxSpec box_;
    PairScheme scheme_;
    BitPlane spins_;
    std::int64_t time_ = 0;
};

// One synchronous pair-rule sweep; returns the number of flips.
std::int64_t tri_step(TriConfiguration& cfg);

// Star-triangle transfer.  lift_to_hex copies the triangular spins onto the
// B sublattice through the configuration's scheme map and fills A with +1;
// restrict_to_tri reads the B sublattice back.  Both reset time to 0.
SpinConfiguration lift_to_hex(const TriConfiguration& tri);
TriConfiguration restrict_to_tri(const SpinConfiguration& hex, const PairScheme& scheme);

} // namespace domany
