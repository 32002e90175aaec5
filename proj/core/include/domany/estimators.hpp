#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "domany/automaton.hpp"
#include "domany/lattice.hpp"
#include "domany/percolation.hpp"

namespace domany {

// Raised when an estimator cannot produce a defensible number from the data
// it saw (e.g. every sample of a log-fit point is zero).
class insufficient_statistics : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Observation time: after a fixed number of sweeps, or once the dynamics has
// fixated (detected as a quiet A-sweep followed by a quiet B-sweep).
struct TimeSpec {
    static TimeSpec at(std::int64_t n) {
        if (n < 0) throw std::invalid_argument("time must be >= 0");
        return TimeSpec{n};
    }
    static TimeSpec fixation() { return TimeSpec{-1}; }

    bool is_fixation() const { return raw_ < 0; }
    std::int64_t n() const {
        if (is_fixation()) throw std::logic_error("no finite time: spec is fixation");
        return raw_;
    }
    std::string to_string() const { return is_fixation() ? "inf" : std::to_string(raw_); }

    friend bool operator==(const TimeSpec&, const TimeSpec&) = default;

  private:
    explicit TimeSpec(std::int64_t raw) : raw_(raw) {}
    std::int64_t raw_ = 1;
};

// Either the hexagonal-lattice dynamics observed at a given time, or
// independent site percolation on the triangular lattice (no dynamics; the
// time field is ignored).
enum class Model : std::uint8_t { domany, independent };

std::string to_string(Model m);

struct RunSpec {
    BoxSpec box;
    Model model = Model::domany;
    double p = 0.5;
    TimeSpec time = TimeSpec::at(1);
    std::int64_t replicates = 1000;
    std::uint64_t master_seed = 1;
    int workers = 1;

    void validate() const; // throws std::invalid_argument
};

// Seed derivation.  The context seed folds in model, time and box geometry
// but *not* p, so runs that differ only in p replay identical uniforms site
// by site (monotone coupling: raising p can only add plus spins at t=0).
// Replicate k then draws from an independent stream of that context.
std::uint64_t context_seed(const RunSpec& run);
std::uint64_t replicate_seed(const RunSpec& run, std::int64_t k);

// Build replicate k of a run: sample the initial condition and advance to
// the observation time (finite n or fixation).
SpinConfiguration make_domany_replicate(const RunSpec& run, std::int64_t k);
// Independent site percolation sample on T (canonical pairing, time 0).
TriConfiguration make_independent_replicate(const RunSpec& run, std::int64_t k);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t replicates = 0;
};

// Bernoulli mean with binomial standard error, floored at 1/replicates so a
// 0-or-all sample never reports certainty.
Estimate binomial_estimate(std::int64_t successes, std::int64_t replicates);

// ---- theta: order parameter surrogate ---------------------------------

// P(center is + and its cluster reaches min-image radius R or winds the
// torus).  radius <= 0 selects sqrt(3)/4 * min(lu, lv).  For the domany
// model `graph` picks the cluster graph (hex spans both sublattices, tri
// restricts to the B plane); the independent model is always triangular and
// requires a B center.
struct ThetaOptions {
    double radius = -1.0;
    Sub center_sub = Sub::B;
    GraphKind graph = GraphKind::hex;
};

// The radius substituted when ThetaOptions::radius <= 0.
double theta_default_radius(const BoxSpec& box);

Estimate estimate_theta(const RunSpec& run, const ThetaOptions& opt = {});

// ---- tau: two-point connectivity --------------------------------------

enum class PairKind : std::uint8_t { BB, AA, AB };

std::string to_string(PairKind k);

// Per-replicate connection indicators for a family of separations along the
// u axis (pair centered in the box; embedded distance r = sqrt(3)*k for
// BB/AA).  One cluster labeling per replicate serves every separation.  For
// the domany model `graph` picks the cluster graph; tri (B plane, triangular
// adjacency) requires BB pairs and makes the estimator coincide exactly with
// the independent-model pipeline.  The independent model is always tri.
struct TauSamples {
    std::vector<std::int64_t> separations;
    std::vector<double> r;
    std::vector<std::vector<std::uint8_t>> hit; // [replicate][separation]
};

TauSamples sample_tau(const RunSpec& run, const std::vector<std::int64_t>& separations,
                      PairKind pair = PairKind::BB, GraphKind graph = GraphKind::hex);

struct TauPoint {
    std::int64_t separation = 0;
    double r = 0.0;
    Estimate est;
};

std::vector<TauPoint> estimate_tau(const RunSpec& run,
                                   const std::vector<std::int64_t>& separations,
                                   PairKind pair = PairKind::BB,
                                   GraphKind graph = GraphKind::hex);

// ---- chi: mean cluster size -------------------------------------------

// E[size of the + cluster of the center site], zero when the center is -.
Estimate estimate_chi(const RunSpec& run, Sub center_sub = Sub::B);

// ---- xi: correlation length -------------------------------------------

struct FitPoint {
    double x = 0.0;
    double y = 0.0;
    double y_err = 0.0;
};

enum class FitMode : std::uint8_t { loglog, loglinear };

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

// Weighted least squares of log y against log x (loglog) or against x
// (loglinear); weights from y_err propagated into log space.  Points with
// y <= 0 are dropped; fewer than two usable points raises
// insufficient_statistics.
FitResult fit_exponent(const std::vector<FitPoint>& points, FitMode mode);

struct XiResult {
    double xi = 0.0;
    double std_error = 0.0; // jackknife over replicates
    FitResult fit;          // log tau vs r
    std::vector<TauPoint> tau;
    std::int64_t replicates = 0;
};

// xi = -1 / slope of log tau(r).  Separations whose empirical tau is zero
// are dropped before fitting; fewer than three surviving points raises
// insufficient_statistics.
XiResult estimate_xi(const RunSpec& run, const std::vector<std::int64_t>& separations,
                     PairKind pair = PairKind::BB, GraphKind graph = GraphKind::hex);

// ---- flip activity tail -----------------------------------------------

// Site-averaged probability that a site of the given sublattice still flips
// at or after sweep n, estimated from last-flip times of a run to fixation.
struct FlipTail {
    std::vector<std::int64_t> n; // 1..n_max
    std::vector<double> p_a, p_a_err;
    std::vector<double> p_b, p_b_err;
    std::int64_t replicates = 0;
};

FlipTail estimate_flip_tail(const RunSpec& run); // time spec ignored (runs to fixation)

// ---- ratio bound checks -----------------------------------------------

struct BoundCheck {
    double ratio = 0.0;
    double sigma = 0.0; // propagated std error of the ratio
    double lo = 0.0, hi = 0.0;
    double slack_sigmas = 3.0;
    bool ok = false;
};

// Verdict on lo <= num/den <= hi, allowing slack_sigmas of propagated
// statistical error on either side.
BoundCheck check_ratio_bound(const Estimate& num, const Estimate& den, double lo, double hi,
                             double slack_sigmas = 3.0);

// ---- exponent pipelines -----------------------------------------------

struct ExponentResult {
    double value = 0.0;
    double std_error = 0.0; // jackknife over replicates unless noted
    FitResult fit;
    std::vector<FitPoint> points;
    std::int64_t replicates = 0;
};

// eta: tau(r) ~ r^-eta at p = 1/2; value = -slope of the loglog fit.
ExponentResult estimate_eta(const RunSpec& run, const std::vector<std::int64_t>& separations,
                            PairKind pair = PairKind::BB, GraphKind graph = GraphKind::hex);

// beta: theta(p) ~ (p - 1/2)^beta above the transition; fitted over the
// supplied p grid (run.p is ignored), coupled across p by construction.
ExponentResult estimate_beta(const RunSpec& run, const std::vector<double>& ps,
                             const ThetaOptions& opt = {});

// nu: xi(p) ~ (1/2 - p)^-nu below the transition; each xi from its own
// estimate_xi, then a weighted loglog fit (std_error from the fit).
ExponentResult estimate_nu(const RunSpec& run, const std::vector<double>& ps,
                           const std::vector<std::int64_t>& separations,
                           PairKind pair = PairKind::BB, GraphKind graph = GraphKind::hex);

// ---- crossing probability ---------------------------------------------

// P(sign-spin chain joins the opposing sides of the cut-open index rhombus)
// on the B plane (domany) or the triangular sample (independent).
Estimate estimate_crossing(const RunSpec& run, CrossDir dir = CrossDir::u, int sign = +1);

} // namespace domany
