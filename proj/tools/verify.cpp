#include "verify.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "domany/automaton.hpp"
#include "domany/estimators.hpp"
#include "domany/io.hpp"
#include "domany/percolation.hpp"
#include "domany/rng.hpp"

namespace domany::cli {

namespace {

std::string fraction(std::int64_t good, std::int64_t total) {
    return std::to_string(good) + "/" + std::to_string(total);
}

// Evolve the triangular config and the lifted hexagonal config in lockstep
// (one tri sweep per two hex sweeps) and report the first mismatch of the B
// restriction, or -1 if they agree through fixation plus two extra sweeps.
std::int64_t first_equivalence_mismatch(TriConfiguration tri, std::int64_t max_sweeps) {
    SpinConfiguration hex = lift_to_hex(tri);
    std::int64_t quiet = 0;
    for (std::int64_t m = 1; m <= max_sweeps; ++m) {
        const std::int64_t flips = tri_step(tri);
        step(hex);
        step(hex);
        if (!(restrict_to_tri(hex, tri.scheme()) == tri)) return m;
        quiet = (flips == 0) ? quiet + 1 : 0;
        if (quiet >= 2) return -1;
    }
    return max_sweeps + 1; // never settled: treat as failure
}

CheckResult check_equivalence_exhaustive(int /*workers*/) {
    const BoxSpec box = BoxSpec::square_periodic(4);
    const PairScheme scheme = PairScheme::canonical();
    std::int64_t good = 0;
    const std::int64_t total = 1 << 16;
    for (std::int64_t code = 0; code < total; ++code) {
        TriConfiguration tri(box, scheme);
        for (int j = 0; j < 16; ++j)
            tri.set_spin(j % 4, j / 4, (code >> j) & 1 ? +1 : -1);
        if (first_equivalence_mismatch(tri, 64) < 0) ++good;
    }
    return {"star_triangle_exhaustive_4x4", "star-triangle equivalence of the two automata",
            good == total, fraction(good, total) + " configurations agree at every sweep"};
}

CheckResult check_equivalence_mirrored(std::uint64_t seed) {
    const BoxSpec box = BoxSpec::square_periodic(8);
    const PairScheme scheme = PairScheme::mirrored();
    SplitMix64 rng(derive_context_seed(seed, 101));
    std::int64_t good = 0;
    const std::int64_t total = 200;
    for (std::int64_t i = 0; i < total; ++i) {
        TriConfiguration tri = TriConfiguration::random(box, scheme, 0.5, rng.next());
        if (first_equivalence_mismatch(tri, 200) < 0) ++good;
    }
    return {"star_triangle_mirrored_random_8x8",
            "star-triangle equivalence under the mirrored pairing", good == total,
            fraction(good, total) + " random configurations agree at every sweep"};
}

CheckResult check_b_plane_preserved(std::uint64_t seed) {
    SplitMix64 rng(derive_context_seed(seed, 102));
    std::int64_t good = 0, total = 0;
    for (double p : {0.3, 0.5, 0.7})
        for (int i = 0; i < 50; ++i) {
            SpinConfiguration cfg = SpinConfiguration::random(BoxSpec::square_periodic(16), p,
                                                              rng.next());
            const BitPlane before = cfg.plane(Sub::B);
            step(cfg);
            ++total;
            if (cfg.plane(Sub::B) == before) ++good;
        }
    return {"b_sublattice_unchanged_at_n1",
            "first sweep updates sublattice A only, so the B marginal at n=1 is the "
            "initial product measure",
            good == total, fraction(good, total) + " runs leave B untouched"};
}

CheckResult check_path_promotion(std::uint64_t seed) {
    const BoxSpec box = BoxSpec::square_periodic(16);
    SplitMix64 rng(derive_context_seed(seed, 103));
    std::int64_t good = 0, total = 0;
    for (int i = 0; i < 100; ++i) {
        SpinConfiguration cfg = SpinConfiguration::random(box, 0.5, rng.next());
        ClusterLabeling tri0 = label_clusters(cfg, GraphKind::tri);
        step(cfg);
        ClusterLabeling hex1 = label_clusters(cfg, GraphKind::hex);
        SplitMix64 pick(rng.next());
        for (int s = 0; s < 30; ++s) {
            SiteRef x{std::int32_t(pick.next() % 16), std::int32_t(pick.next() % 16), Sub::B};
            SiteRef y{std::int32_t(pick.next() % 16), std::int32_t(pick.next() % 16), Sub::B};
            if (!tri0.same_cluster(x, y)) continue;
            ++total;
            if (hex1.same_cluster(x, y)) ++good;
        }
    }
    return {"plus_path_promotion_n0_to_n1",
            "a constant-sign triangular path at n=0 yields a hexagonal path at n=1",
            good == total, fraction(good, total) + " sampled connected pairs stay connected"};
}

CheckResult check_energy_descent(std::uint64_t seed) {
    SplitMix64 rng(derive_context_seed(seed, 201));
    std::int64_t good = 0, total = 0;
    for (double p : {0.3, 0.5, 0.7})
        for (const BoxSpec& box : {BoxSpec::square_periodic(32), BoxSpec::free_box(31, 17)})
            for (int i = 0; i < 20; ++i) {
                SpinConfiguration cfg = SpinConfiguration::random(box, p, rng.next());
                DynamicsTrace trace = run_to_fixation(cfg);
                bool ok = trace.fixated;
                std::int64_t energy = trace.initial_energy, active = 0;
                for (const TraceEntry& e : trace.steps) {
                    if (e.flips > 0) {
                        ++active;
                        ok = ok && e.energy <= energy - 2 * e.flips;
                    } else {
                        ok = ok && e.energy == energy;
                    }
                    energy = e.energy;
                }
                ok = ok && energy == total_energy(cfg);
                ok = ok && 2 * active <= 3 * box.num_hex_sites();
                ++total;
                if (ok) ++good;
            }
    return {"energy_descent_and_fixation",
            "each flip strictly lowers the energy, forcing fixation within 3N/2 active sweeps",
            good == total, fraction(good, total) + " traces monotone, consistent and fixated"};
}

CheckResult check_determinism(std::uint64_t seed) {
    const BoxSpec box = BoxSpec::square_periodic(32);
    std::int64_t good = 0, total = 0;
    SplitMix64 rng(derive_context_seed(seed, 202));
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t s = rng.next();
        SpinConfiguration c1 = SpinConfiguration::random(box, 0.5, s);
        SpinConfiguration c2 = SpinConfiguration::random(box, 0.5, s);
        DynamicsTrace t1 = run_to_fixation(c1);
        DynamicsTrace t2 = run_to_fixation(c2);
        std::ostringstream o1, o2;
        write_trace_csv(o1, t1);
        write_trace_csv(o2, t2);
        ++total;
        if (c1 == c2 && o1.str() == o2.str()) ++good;
    }
    return {"repeat_run_determinism", "identical seeds reproduce identical trajectories",
            good == total, fraction(good, total) + " repeated runs byte-identical"};
}

CheckResult check_worker_independence(std::uint64_t seed) {
    RunSpec run{BoxSpec::square_periodic(32), Model::domany, 0.5, TimeSpec::at(1), 200, seed, 1};
    Estimate serial = estimate_theta(run);
    run.workers = 3;
    Estimate threaded = estimate_theta(run);
    const bool ok = serial.value == threaded.value && serial.std_error == threaded.std_error;
    return {"worker_count_independence", "results are a function of the plan and seed alone", ok,
            ok ? "1 and 3 workers agree bitwise" : "worker count changed the estimate"};
}

CheckResult check_monotone_coupling(std::uint64_t seed) {
    const BoxSpec box = BoxSpec::square_periodic(16);
    SplitMix64 rng(derive_context_seed(seed, 203));
    std::int64_t good = 0, total = 0;
    for (int i = 0; i < 30; ++i) {
        const std::uint64_t s = rng.next();
        SpinConfiguration lo = SpinConfiguration::random(box, 0.3, s);
        SpinConfiguration mid = SpinConfiguration::random(box, 0.5, s);
        SpinConfiguration hi = SpinConfiguration::random(box, 0.7, s);
        bool nested = true;
        for (std::int32_t v = 0; v < box.lv && nested; ++v)
            for (std::int32_t u = 0; u < box.lu && nested; ++u)
                for (Sub sub : {Sub::A, Sub::B}) {
                    SiteRef x{u, v, sub};
                    if (lo.spin(x) == +1 && mid.spin(x) != +1) nested = false;
                    if (mid.spin(x) == +1 && hi.spin(x) != +1) nested = false;
                }
        ++total;
        if (nested) ++good;
    }
    return {"shared_uniform_monotone_coupling",
            "raising p with shared uniforms only adds plus spins at n=0", good == total,
            fraction(good, total) + " seed-matched initial states nested in p"};
}

CheckResult check_csv_round_trip() {
    std::vector<ObservationRecord> records;
    records.push_back({"theta", "domany", 1.0 / 3.0, TimeSpec::at(2), 64, "periodic",
                       "sub=B;graph=hex;r=27.712812921102035", 0.1234567890123456789, 0.01, 1000,
                       42});
    records.push_back({"tau", "independent", 0.5, TimeSpec::at(0), 128, "free", "k=8;pair=BB",
                       1e-12, 3.3e-5, 2000, 0xFFFFFFFFFFFFFFFFULL});
    records.push_back({"fliptail", "domany", 0.5, TimeSpec::fixation(), 256, "periodic", "sub=A",
                       0.0, 0.0005, 500, 7});
    std::ostringstream os;
    write_observations_csv(os, records);
    std::istringstream is(os.str());
    std::vector<ObservationRecord> back = read_observations_csv(is);
    std::ostringstream os2;
    write_observations_csv(os2, back);
    const bool ok = os.str() == os2.str() && back.size() == records.size();
    return {"observation_csv_round_trip", "records survive serialization unchanged", ok,
            ok ? "write -> read -> write byte-identical" : "round trip altered the records"};
}

CheckResult ratio_check(std::string name, std::string claim, const Estimate& num,
                        const Estimate& den, double lo, double hi) {
    BoundCheck bc = check_ratio_bound(num, den, lo, hi);
    std::ostringstream detail;
    detail << "ratio " << format_double(bc.ratio) << " +/- " << format_double(bc.sigma)
           << " vs [" << format_double(lo) << ", " << format_double(hi) << "]";
    return {std::move(name), std::move(claim), bc.ok, detail.str()};
}

std::vector<CheckResult> bounds_suite(std::uint64_t seed, int workers) {
    std::vector<CheckResult> out;
    const std::int64_t reps = 800;
    const BoxSpec box = BoxSpec::square_periodic(64);

    {
        const double p = 0.6;
        RunSpec dom{box, Model::domany, p, TimeSpec::at(1), reps, seed, workers};
        RunSpec ind{box, Model::independent, p, TimeSpec::at(0), reps, seed, workers};
        Estimate num = estimate_theta(dom, {-1.0, Sub::B, GraphKind::hex});
        Estimate den = estimate_theta(ind, {-1.0, Sub::B, GraphKind::tri});
        out.push_back(ratio_check("theta_sandwich_B_p0.6_n1",
                                  "long-range order comparison, B site: p^6 theta <= "
                                  "theta_hex <= theta / p",
                                  num, den, std::pow(p, 6.0), 1.0 / p));
    }
    {
        const double p = 0.75;
        RunSpec dom{box, Model::domany, p, TimeSpec::at(2), reps, seed, workers};
        RunSpec ind{box, Model::independent, p, TimeSpec::at(0), reps, seed, workers};
        Estimate num = estimate_theta(dom, {-1.0, Sub::A, GraphKind::hex});
        Estimate den = estimate_theta(ind, {-1.0, Sub::B, GraphKind::tri});
        out.push_back(ratio_check("theta_sandwich_A_p0.75_n2",
                                  "long-range order comparison, A site: p^6 theta <= "
                                  "theta_hex <= theta / p^3",
                                  num, den, std::pow(p, 6.0), std::pow(p, -3.0)));
    }
    {
        const double p = 0.5;
        const std::vector<std::int64_t> ks = {8};
        RunSpec dom{box, Model::domany, p, TimeSpec::at(1), reps, seed, workers};
        RunSpec ind{box, Model::independent, p, TimeSpec::at(0), reps, seed, workers};
        std::vector<TauPoint> den = estimate_tau(ind, ks);
        std::vector<TauPoint> bb = estimate_tau(dom, ks, PairKind::BB, GraphKind::hex);
        std::vector<TauPoint> aa = estimate_tau(dom, ks, PairKind::AA, GraphKind::hex);
        out.push_back(ratio_check("tau_sandwich_BB_p0.5_k8",
                                  "two-point comparison, B endpoints: p^12 tau <= tau_hex "
                                  "<= tau / p^2",
                                  bb[0].est, den[0].est, std::pow(p, 12.0), std::pow(p, -2.0)));
        out.push_back(ratio_check("tau_sandwich_AA_p0.5_k8",
                                  "two-point comparison, A endpoints: p^12 tau <= tau_hex "
                                  "<= tau / p^6",
                                  aa[0].est, den[0].est, std::pow(p, 12.0), std::pow(p, -6.0)));
    }
    return out;
}

} // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed,
                                          int workers) {
    if (suite == "equivalence")
        return {check_equivalence_exhaustive(workers), check_equivalence_mirrored(seed),
                check_b_plane_preserved(seed), check_path_promotion(seed)};
    if (suite == "invariants")
        return {check_energy_descent(seed), check_determinism(seed),
                check_worker_independence(seed), check_monotone_coupling(seed),
                check_csv_round_trip()};
    if (suite == "bounds") return bounds_suite(seed, workers);
    throw std::invalid_argument("unknown verify suite '" + suite +
                                "' (expected equivalence, invariants or bounds)");
}

} // namespace domany::cli
