#include "domany/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "domany/parallel.hpp"
#include "domany/rng.hpp"

namespace domany {

std::string to_string(Model m) {
    return m == Model::domany ? "domany" : "independent";
}

std::string to_string(PairKind k) {
    switch (k) {
    case PairKind::BB: return "BB";
    case PairKind::AA: return "AA";
    default: return "AB";
    }
}

void RunSpec::validate() const {
    box.validate();
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

std::uint64_t context_seed(const RunSpec& run) {
    std::uint64_t s = run.master_seed;
    s = derive_context_seed(s, std::uint64_t(run.model) + 1);
    // Independent samples carry no dynamics, so their streams must not
    // depend on the (ignored) time field.
    std::uint64_t tkey = 0;
    if (run.model == Model::domany)
        tkey = run.time.is_fixation() ? ~std::uint64_t(0) : std::uint64_t(run.time.n()) + 1;
    s = derive_context_seed(s, tkey);
    s = derive_context_seed(s, (std::uint64_t(std::uint32_t(run.box.lu)) << 32) |
                                   std::uint32_t(run.box.lv));
    s = derive_context_seed(s, std::uint64_t(run.box.boundary));
    return s; // note: p is deliberately absent
}

std::uint64_t replicate_seed(const RunSpec& run, std::int64_t k) {
    return derive_stream_seed(context_seed(run), std::uint64_t(k));
}

SpinConfiguration make_domany_replicate(const RunSpec& run, std::int64_t k) {
    if (run.model != Model::domany)
        throw std::logic_error("make_domany_replicate: run.model is not domany");
    SpinConfiguration cfg = SpinConfiguration::random(run.box, run.p, replicate_seed(run, k));
    if (run.time.is_fixation())
        run_to_fixation(cfg);
    else
        advance_to(cfg, run.time.n());
    return cfg;
}

TriConfiguration make_independent_replicate(const RunSpec& run, std::int64_t k) {
    if (run.model != Model::independent)
        throw std::logic_error("make_independent_replicate: run.model is not independent");
    return TriConfiguration::random(run.box, PairScheme::canonical(), run.p,
                                    replicate_seed(run, k));
}

Estimate binomial_estimate(std::int64_t successes, std::int64_t replicates) {
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    double phat = double(successes) / double(replicates);
    double se = std::sqrt(std::max(phat * (1.0 - phat), 0.0) / double(replicates));
    se = std::max(se, 1.0 / double(replicates));
    return Estimate{phat, se, replicates};
}

double theta_default_radius(const BoxSpec& box) {
    return std::sqrt(3.0) / 4.0 * std::min(box.lu, box.lv);
}

namespace {

SiteRef center_site(const BoxSpec& box, Sub sub) {
    return SiteRef{box.lu / 2, box.lv / 2, sub};
}

double sample_std_error(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / double(n - 1) / double(n));
}

} // namespace

Estimate estimate_theta(const RunSpec& run, const ThetaOptions& opt) {
    run.validate();
    const BoxSpec& box = run.box;
    const double radius = opt.radius > 0.0 ? opt.radius : theta_default_radius(box);
    if (run.model == Model::independent) {
        if (opt.center_sub != Sub::B || opt.graph != GraphKind::tri)
            throw std::invalid_argument(
                "independent model lives on T: center_sub must be B, graph tri");
    }
    if (opt.graph == GraphKind::tri && opt.center_sub != Sub::B)
        throw std::invalid_argument("tri graph requires a B center");
    const SiteRef center = center_site(box, opt.center_sub);

    std::vector<std::uint8_t> hit(std::size_t(run.replicates), 0);
    std::vector<ClusterScratch> scratch(std::size_t(std::max(run.workers, 1)));
    parallel_replicates(run.replicates, run.workers, [&](std::int64_t k, int w) {
        ClusterProbe probe;
        if (run.model == Model::domany) {
            SpinConfiguration cfg = make_domany_replicate(run, k);
            if (cfg.spin(center) != +1) return;
            probe = probe_cluster(cfg, center, opt.graph, radius, scratch[std::size_t(w)]);
        } else {
            TriConfiguration cfg = make_independent_replicate(run, k);
            if (cfg.spin(center.u, center.v) != +1) return;
            probe = probe_cluster(cfg, center.u, center.v, radius, scratch[std::size_t(w)]);
        }
        hit[std::size_t(k)] = probe.reached_radius || probe.winds_u || probe.winds_v;
    });
    std::int64_t successes = std::accumulate(hit.begin(), hit.end(), std::int64_t(0));
    return binomial_estimate(successes, run.replicates);
}

namespace {

struct TauGeometry {
    std::vector<SiteRef> xs, ys;
    std::vector<double> r;
};

TauGeometry tau_geometry(const BoxSpec& box, const std::vector<std::int64_t>& separations,
                         PairKind pair) {
    if (separations.empty()) throw std::invalid_argument("need at least one separation");
    TauGeometry geo;
    for (std::int64_t k : separations) {
        if (k < 0) throw std::invalid_argument("separations must be >= 0");
        if (box.is_periodic() && k > box.lu / 2 - 1)
            throw std::invalid_argument("separation too large for the periodic box");
        if (!box.is_periodic() && k >= box.lu)
            throw std::invalid_argument("separation exceeds the free box");
        std::int32_t cu = std::int32_t((box.lu - k) / 2), cv = box.lv / 2;
        std::int32_t yu = std::int32_t(cu + k);
        if (box.is_periodic()) yu = box.wrap_u(yu);
        SiteRef x{cu, cv, pair == PairKind::BB ? Sub::B : Sub::A};
        SiteRef y{yu, cv, pair == PairKind::AA ? Sub::A : Sub::B};
        geo.xs.push_back(x);
        geo.ys.push_back(y);
        geo.r.push_back(min_image_distance(x, y, box));
    }
    return geo;
}

} // namespace

TauSamples sample_tau(const RunSpec& run, const std::vector<std::int64_t>& separations,
                      PairKind pair, GraphKind graph) {
    run.validate();
    if (run.model == Model::independent && pair != PairKind::BB)
        throw std::invalid_argument("independent model has only B sites");
    if (graph == GraphKind::tri && pair != PairKind::BB)
        throw std::invalid_argument("tri graph carries only BB pairs");
    TauGeometry geo = tau_geometry(run.box, separations, pair);
    const std::size_t K = separations.size();

    TauSamples out;
    out.separations = separations;
    out.r = geo.r;
    out.hit.assign(std::size_t(run.replicates), std::vector<std::uint8_t>(K, 0));

    parallel_replicates(run.replicates, run.workers, [&](std::int64_t k, int) {
        auto& row = out.hit[std::size_t(k)];
        if (run.model == Model::domany) {
            SpinConfiguration cfg = make_domany_replicate(run, k);
            ClusterLabeling labels = label_clusters(cfg, graph);
            for (std::size_t i = 0; i < K; ++i)
                row[i] = cfg.spin(geo.xs[i]) == +1 && labels.same_cluster(geo.xs[i], geo.ys[i]);
        } else {
            TriConfiguration cfg = make_independent_replicate(run, k);
            ClusterLabeling labels = label_clusters(cfg);
            for (std::size_t i = 0; i < K; ++i)
                row[i] = cfg.spin(geo.xs[i].u, geo.xs[i].v) == +1 &&
                         labels.same_cluster(geo.xs[i], geo.ys[i]);
        }
    });
    return out;
}

std::vector<TauPoint> estimate_tau(const RunSpec& run,
                                   const std::vector<std::int64_t>& separations, PairKind pair,
                                   GraphKind graph) {
    TauSamples s = sample_tau(run, separations, pair, graph);
    std::vector<TauPoint> out;
    for (std::size_t i = 0; i < s.separations.size(); ++i) {
        std::int64_t successes = 0;
        for (const auto& row : s.hit) successes += row[i];
        out.push_back({s.separations[i], s.r[i], binomial_estimate(successes, run.replicates)});
    }
    return out;
}

Estimate estimate_chi(const RunSpec& run, Sub center_sub) {
    run.validate();
    if (run.model == Model::independent && center_sub != Sub::B)
        throw std::invalid_argument("independent model has only B sites");
    const SiteRef center = center_site(run.box, center_sub);
    std::vector<double> sizes(std::size_t(run.replicates), 0.0);
    std::vector<ClusterScratch> scratch(std::size_t(std::max(run.workers, 1)));
    parallel_replicates(run.replicates, run.workers, [&](std::int64_t k, int w) {
        if (run.model == Model::domany) {
            SpinConfiguration cfg = make_domany_replicate(run, k);
            if (cfg.spin(center) != +1) return;
            sizes[std::size_t(k)] = double(
                probe_cluster(cfg, center, GraphKind::hex, 0.0, scratch[std::size_t(w)]).size);
        } else {
            TriConfiguration cfg = make_independent_replicate(run, k);
            if (cfg.spin(center.u, center.v) != +1) return;
            sizes[std::size_t(k)] = double(
                probe_cluster(cfg, center.u, center.v, 0.0, scratch[std::size_t(w)]).size);
        }
    });
    double mean = std::accumulate(sizes.begin(), sizes.end(), 0.0) / double(run.replicates);
    return Estimate{mean, sample_std_error(sizes), run.replicates};
}

FitResult fit_exponent(const std::vector<FitPoint>& points, FitMode mode) {
    std::vector<double> X, Y, W;
    for (const FitPoint& pt : points) {
        if (!(pt.y > 0.0)) continue;
        if (mode == FitMode::loglog && !(pt.x > 0.0)) continue;
        double x = mode == FitMode::loglog ? std::log(pt.x) : pt.x;
        double sigma = pt.y_err > 0.0 ? pt.y_err / pt.y : 1.0; // std error of log y
        X.push_back(x);
        Y.push_back(std::log(pt.y));
        W.push_back(1.0 / (sigma * sigma));
    }
    if (X.size() < 2) throw insufficient_statistics("fit needs at least two positive points");

    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        sw += W[i];
        swx += W[i] * X[i];
        swy += W[i] * Y[i];
        swxx += W[i] * X[i] * X[i];
        swxy += W[i] * X[i] * Y[i];
    }
    double denom = sw * swxx - swx * swx;
    if (!(denom > 0.0)) throw insufficient_statistics("degenerate abscissae in fit");

    FitResult fit;
    fit.points_used = int(X.size());
    fit.slope = (sw * swxy - swx * swy) / denom;
    fit.intercept = (swy - fit.slope * swx) / sw;
    fit.slope_stderr = std::sqrt(sw / denom);
    fit.intercept_stderr = std::sqrt(swxx / denom);
    double ybar = swy / sw, ss_tot = 0, ss_res = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double fitted = fit.intercept + fit.slope * X[i];
        ss_tot += W[i] * (Y[i] - ybar) * (Y[i] - ybar);
        ss_res += W[i] * (Y[i] - fitted) * (Y[i] - fitted);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

namespace {

// Leave-one-replicate-out spread of an estimator computed from per-
// separation success counts.  Subsamples where the estimator throws are
// skipped; fewer than half surviving raises insufficient_statistics.
template <class Est> // double(counts, replicates)
double jackknife_sigma(const TauSamples& s, const std::vector<std::int64_t>& counts, Est est) {
    const std::int64_t R = std::int64_t(s.hit.size());
    std::vector<double> values;
    values.reserve(std::size_t(R));
    std::vector<std::int64_t> sub(counts.size());
    for (std::int64_t r = 0; r < R; ++r) {
        for (std::size_t i = 0; i < counts.size(); ++i)
            sub[i] = counts[i] - s.hit[std::size_t(r)][i];
        try {
            values.push_back(est(sub, R - 1));
        } catch (const insufficient_statistics&) {
        }
    }
    if (std::int64_t(values.size()) * 2 < R)
        throw insufficient_statistics("too many degenerate jackknife subsamples");
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double n = double(values.size());
    return std::sqrt((n - 1.0) / n * ss);
}

std::vector<std::int64_t> column_counts(const TauSamples& s) {
    std::vector<std::int64_t> counts(s.separations.size(), 0);
    for (const auto& row : s.hit)
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += row[i];
    return counts;
}

std::vector<FitPoint> points_from_counts(const TauSamples& s,
                                         const std::vector<std::int64_t>& counts,
                                         std::int64_t replicates) {
    std::vector<FitPoint> pts;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] <= 0) continue; // window shrinks past dead separations
        Estimate e = binomial_estimate(counts[i], replicates);
        pts.push_back({s.r[i], e.value, e.std_error});
    }
    return pts;
}

} // namespace

XiResult estimate_xi(const RunSpec& run, const std::vector<std::int64_t>& separations,
                     PairKind pair, GraphKind graph) {
    TauSamples s = sample_tau(run, separations, pair, graph);
    std::vector<std::int64_t> counts = column_counts(s);

    auto xi_of = [&s](const std::vector<std::int64_t>& c, std::int64_t reps) {
        std::vector<FitPoint> pts = points_from_counts(s, c, reps);
        if (pts.size() < 3) throw insufficient_statistics("fewer than three live separations");
        FitResult fit = fit_exponent(pts, FitMode::loglinear);
        if (!(fit.slope < 0.0)) throw insufficient_statistics("no exponential decay detected");
        return -1.0 / fit.slope;
    };

    XiResult out;
    out.replicates = run.replicates;
    std::vector<FitPoint> pts = points_from_counts(s, counts, run.replicates);
    if (pts.size() < 3) throw insufficient_statistics("fewer than three live separations");
    out.fit = fit_exponent(pts, FitMode::loglinear);
    if (!(out.fit.slope < 0.0)) throw insufficient_statistics("no exponential decay detected");
    out.xi = -1.0 / out.fit.slope;
    out.std_error = jackknife_sigma(s, counts, xi_of);
    for (std::size_t i = 0; i < counts.size(); ++i)
        out.tau.push_back(
            {s.separations[i], s.r[i], binomial_estimate(counts[i], run.replicates)});
    return out;
}

FlipTail estimate_flip_tail(const RunSpec& run) {
    run.validate();
    if (run.model != Model::domany)
        throw std::invalid_argument("flip tails are defined for the domany model only");
    RunSpec norm = run;
    norm.time = TimeSpec::fixation(); // estimator always runs to fixation
    const BoxSpec& box = norm.box;
    const std::int64_t cells = box.num_cells();

    std::vector<std::vector<double>> tails_a(std::size_t(norm.replicates));
    std::vector<std::vector<double>> tails_b(std::size_t(norm.replicates));

    parallel_replicates(norm.replicates, norm.workers, [&](std::int64_t k, int) {
        SpinConfiguration cfg =
            SpinConfiguration::random(box, norm.p, replicate_seed(norm, k));
        std::vector<std::int32_t> last_a(std::size_t(cells), 0);
        std::vector<std::int32_t> last_b(std::size_t(cells), 0);
        const std::int32_t W = BitPlane::words_per_row(box.lu);
        BitPlane before(box.lu, box.lv);
        const std::int64_t cap = 3 * box.num_hex_sites() + 2;
        bool a_quiet = false;
        while (cfg.time() < cap) {
            Sub target = (cfg.time() % 2 == 0) ? Sub::A : Sub::B; // next step's plane
            before = cfg.plane(target);
            StepStats st = step(cfg);
            auto& last = (target == Sub::A) ? last_a : last_b;
            for (std::int32_t v = 0; v < box.lv; ++v) {
                const std::uint64_t* oldr = before.row(v);
                const std::uint64_t* newr = cfg.plane(target).row(v);
                for (std::int32_t i = 0; i < W; ++i) {
                    std::uint64_t diff = oldr[i] ^ newr[i];
                    while (diff) {
                        int bit = std::countr_zero(diff);
                        diff &= diff - 1;
                        // Record the full sweep, not the half-step: A flips at
                        // half-step 2n-1, B at 2n, and (h+1)/2 maps both to n.
                        last[std::size_t(box.cell_index(i * 64 + bit, v))] =
                            std::int32_t((cfg.time() + 1) / 2);
                    }
                }
            }
            if (st.updated == Sub::A) {
                a_quiet = (st.flips == 0);
            } else if (a_quiet && st.flips == 0) {
                break;
            }
        }
        // Histogram of last-flip times -> survival tail P(last flip >= n).
        auto tail_of = [cells](const std::vector<std::int32_t>& last) {
            std::int32_t n_max = 0;
            for (std::int32_t t : last) n_max = std::max(n_max, t);
            std::vector<double> tail(std::size_t(n_max) + 1, 0.0); // index n in 1..n_max
            std::vector<std::int64_t> hist(std::size_t(n_max) + 1, 0);
            for (std::int32_t t : last)
                if (t > 0) ++hist[std::size_t(t)];
            std::int64_t suffix = 0;
            for (std::int32_t n = n_max; n >= 1; --n) {
                suffix += hist[std::size_t(n)];
                tail[std::size_t(n)] = double(suffix) / double(cells);
            }
            tail.erase(tail.begin()); // drop unused index 0
            return tail;
        };
        tails_a[std::size_t(k)] = tail_of(last_a);
        tails_b[std::size_t(k)] = tail_of(last_b);
    });

    std::size_t n_max = 0;
    for (const auto& t : tails_a) n_max = std::max(n_max, t.size());
    for (const auto& t : tails_b) n_max = std::max(n_max, t.size());

    FlipTail out;
    out.replicates = norm.replicates;
    auto reduce = [&](const std::vector<std::vector<double>>& rows, std::vector<double>& mean,
                      std::vector<double>& err) {
        for (std::size_t i = 0; i < n_max; ++i) {
            std::vector<double> col;
            col.reserve(rows.size());
            for (const auto& row : rows) col.push_back(i < row.size() ? row[i] : 0.0);
            mean.push_back(std::accumulate(col.begin(), col.end(), 0.0) / double(col.size()));
            err.push_back(sample_std_error(col));
        }
    };
    for (std::size_t i = 0; i < n_max; ++i) out.n.push_back(std::int64_t(i) + 1);
    reduce(tails_a, out.p_a, out.p_a_err);
    reduce(tails_b, out.p_b, out.p_b_err);
    return out;
}

BoundCheck check_ratio_bound(const Estimate& num, const Estimate& den, double lo, double hi,
                             double slack_sigmas) {
    if (!(den.value > 0.0))
        throw insufficient_statistics("ratio denominator estimated as zero");
    BoundCheck out;
    out.lo = lo;
    out.hi = hi;
    out.slack_sigmas = slack_sigmas;
    out.ratio = num.value / den.value;
    double a = num.std_error / den.value;
    double b = num.value * den.std_error / (den.value * den.value);
    out.sigma = std::sqrt(a * a + b * b);
    out.ok = out.ratio >= lo - slack_sigmas * out.sigma &&
             out.ratio <= hi + slack_sigmas * out.sigma;
    return out;
}

ExponentResult estimate_eta(const RunSpec& run, const std::vector<std::int64_t>& separations,
                            PairKind pair, GraphKind graph) {
    TauSamples s = sample_tau(run, separations, pair, graph);
    std::vector<std::int64_t> counts = column_counts(s);

    auto eta_of = [&s](const std::vector<std::int64_t>& c, std::int64_t reps) {
        std::vector<FitPoint> pts = points_from_counts(s, c, reps);
        if (pts.size() < 3) throw insufficient_statistics("fewer than three live separations");
        return -fit_exponent(pts, FitMode::loglog).slope;
    };

    ExponentResult out;
    out.replicates = run.replicates;
    out.points = points_from_counts(s, counts, run.replicates);
    if (out.points.size() < 3)
        throw insufficient_statistics("fewer than three live separations");
    out.fit = fit_exponent(out.points, FitMode::loglog);
    out.value = -out.fit.slope;
    out.std_error = jackknife_sigma(s, counts, eta_of);
    return out;
}

ExponentResult estimate_beta(const RunSpec& run, const std::vector<double>& ps,
                             const ThetaOptions& opt) {
    run.validate();
    if (ps.size() < 3) throw std::invalid_argument("beta needs at least three p values");
    for (double p : ps)
        if (!(p > 0.5 && p <= 1.0))
            throw std::invalid_argument("beta window must lie in (1/2, 1]");
    if (run.model == Model::independent &&
        (opt.center_sub != Sub::B || opt.graph != GraphKind::tri))
        throw std::invalid_argument(
            "independent model lives on T: center_sub must be B, graph tri");

    const std::int64_t R = run.replicates;
    const std::size_t P = ps.size();
    // hits[r][i]: theta indicator of replicate r at ps[i].  The context seed
    // excludes p, so row r reuses one uniform field across the whole window.
    std::vector<std::vector<std::uint8_t>> hits(std::size_t(R),
                                                std::vector<std::uint8_t>(P, 0));
    const double radius = opt.radius > 0.0 ? opt.radius : theta_default_radius(run.box);
    const SiteRef center = center_site(run.box, opt.center_sub);
    std::vector<ClusterScratch> scratch(std::size_t(std::max(run.workers, 1)));

    for (std::size_t i = 0; i < P; ++i) {
        RunSpec rp = run;
        rp.p = ps[i];
        parallel_replicates(R, run.workers, [&](std::int64_t k, int w) {
            ClusterProbe probe;
            if (run.model == Model::domany) {
                SpinConfiguration cfg = make_domany_replicate(rp, k);
                if (cfg.spin(center) != +1) return;
                probe = probe_cluster(cfg, center, opt.graph, radius, scratch[std::size_t(w)]);
            } else {
                TriConfiguration cfg = make_independent_replicate(rp, k);
                if (cfg.spin(center.u, center.v) != +1) return;
                probe =
                    probe_cluster(cfg, center.u, center.v, radius, scratch[std::size_t(w)]);
            }
            hits[std::size_t(k)][i] = probe.reached_radius || probe.winds_u || probe.winds_v;
        });
    }

    TauSamples shim; // reuse the count/jackknife machinery: columns are ps
    shim.separations.assign(P, 0);
    shim.r.assign(ps.begin(), ps.end());
    for (double& x : shim.r) x -= 0.5; // abscissa p - pc
    shim.hit = std::move(hits);
    std::vector<std::int64_t> counts = column_counts(shim);

    auto beta_of = [&shim](const std::vector<std::int64_t>& c, std::int64_t reps) {
        std::vector<FitPoint> pts = points_from_counts(shim, c, reps);
        if (pts.size() < 3) throw insufficient_statistics("fewer than three live p points");
        return fit_exponent(pts, FitMode::loglog).slope;
    };

    ExponentResult out;
    out.replicates = R;
    out.points = points_from_counts(shim, counts, R);
    if (out.points.size() < 3) throw insufficient_statistics("fewer than three live p points");
    out.fit = fit_exponent(out.points, FitMode::loglog);
    out.value = out.fit.slope;
    out.std_error = jackknife_sigma(shim, counts, beta_of);
    return out;
}

ExponentResult estimate_nu(const RunSpec& run, const std::vector<double>& ps,
                           const std::vector<std::int64_t>& separations, PairKind pair,
                           GraphKind graph) {
    run.validate();
    if (ps.size() < 3) throw std::invalid_argument("nu needs at least three p values");
    for (double p : ps)
        if (!(p > 0.0 && p < 0.5))
            throw std::invalid_argument("nu window must lie in (0, 1/2)");

    ExponentResult out;
    out.replicates = run.replicates;
    for (double p : ps) {
        RunSpec rp = run;
        rp.p = p;
        XiResult xi = estimate_xi(rp, separations, pair, graph);
        out.points.push_back({0.5 - p, xi.xi, xi.std_error});
    }
    out.fit = fit_exponent(out.points, FitMode::loglog);
    out.value = -out.fit.slope;
    out.std_error = out.fit.slope_stderr;
    return out;
}

Estimate estimate_crossing(const RunSpec& run, CrossDir dir, int sign) {
    run.validate();
    std::vector<std::uint8_t> hit(std::size_t(run.replicates), 0);
    parallel_replicates(run.replicates, run.workers, [&](std::int64_t k, int) {
        bool crossed;
        if (run.model == Model::domany) {
            SpinConfiguration cfg = make_domany_replicate(run, k);
            crossed = rhombus_crossing(cfg, sign, dir);
        } else {
            TriConfiguration cfg = make_independent_replicate(run, k);
            crossed = rhombus_crossing(cfg, sign, dir);
        }
        hit[std::size_t(k)] = crossed;
    });
    std::int64_t successes = std::accumulate(hit.begin(), hit.end(), std::int64_t(0));
    return binomial_estimate(successes, run.replicates);
}

} // namespace domany
