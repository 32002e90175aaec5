#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "domany/estimators.hpp"
#include "domany/io.hpp"
#include "verify.hpp"

namespace domany::cli {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
    return os;
}

// trace_007.csv style sibling names for multi-replicate output.
std::string replicate_path(const std::string& base, std::int64_t k, std::int64_t total) {
    std::filesystem::path p(base);
    std::string digits = std::to_string(total - 1);
    std::string index = std::to_string(k);
    index.insert(0, digits.size() - index.size(), '0');
    p.replace_filename(p.stem().string() + "_" + index + p.extension().string());
    return p.string();
}

std::string plot_path(const std::string& base) {
    std::filesystem::path p(base);
    p.replace_extension(".dat");
    return p.string();
}

BoxSpec make_box(std::int32_t size, Boundary boundary) {
    if (size < 1) throw std::invalid_argument("L must be >= 1");
    return boundary == Boundary::periodic ? BoxSpec::square_periodic(size)
                                          : BoxSpec::free_box(size, size);
}

std::string sign_string(int sign) { return sign > 0 ? "+1" : "-1"; }

// One gnuplot block: a comment line of key=value context, a commented column
// header, numeric rows, then a blank separator.
struct PlotBlock {
    std::string context;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_plot_blocks(std::ostream& os, const std::vector<PlotBlock>& blocks) {
    bool first = true;
    for (const PlotBlock& b : blocks) {
        if (b.rows.empty()) continue;
        if (!first) os << "\n\n";
        first = false;
        os << "# " << b.context << "\n";
        write_plot_table(os, b.columns, b.rows);
    }
}

} // namespace

int cmd_simulate(const SimulateOptions& opt, const OutputOptions& out) {
    if (!(opt.p >= 0.0 && opt.p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    if (opt.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (opt.replicates > 1 && out.out.empty())
        throw std::invalid_argument("more than one replicate needs --out; one file per replicate");
    if (out.emit_plot_data && out.out.empty())
        throw std::invalid_argument("--emit-plot-data needs --out");

    const BoxSpec box = make_box(opt.size, opt.boundary);
    RunSpec run{box, Model::domany, opt.p, opt.time, opt.replicates, opt.seed, 1};
    run.validate();

    std::int64_t fixated = 0, max_fixation = 0;
    for (std::int64_t k = 0; k < opt.replicates; ++k) {
        SpinConfiguration cfg = SpinConfiguration::random(box, opt.p, replicate_seed(run, k));
        DynamicsTrace trace =
            run_to_fixation(cfg, opt.time.is_fixation() ? -1 : opt.time.n());
        if (trace.fixated) {
            ++fixated;
            max_fixation = std::max(max_fixation, trace.fixation_time);
        }
        if (out.out.empty()) {
            write_trace_csv(std::cout, trace);
        } else {
            const std::string path = opt.replicates == 1
                                         ? out.out
                                         : replicate_path(out.out, k, opt.replicates);
            std::ofstream os = open_out(path);
            write_trace_csv(os, trace);
            if (out.emit_plot_data) {
                PlotBlock block{"replicate=" + std::to_string(k) +
                                    " p=" + format_double(opt.p) +
                                    " L=" + std::to_string(opt.size),
                                {"n", "flips", "energy"},
                                {}};
                block.rows.push_back({0.0, 0.0, double(trace.initial_energy)});
                for (const TraceEntry& e : trace.steps)
                    block.rows.push_back({double(e.n), double(e.flips), double(e.energy)});
                std::ofstream ps = open_out(plot_path(path));
                write_plot_blocks(ps, {block});
            }
        }
    }
    if (!out.out.empty())
        std::cout << "replicates=" << opt.replicates << " fixated=" << fixated
                  << " max_fixation_time=" << max_fixation << "\n";
    return kExitOk;
}

int cmd_measure(const MeasureOptions& opt, const OutputOptions& out) {
    static const std::set<std::string> known{"theta", "tau", "chi", "xi", "fliptail", "crossing"};
    if (!known.count(opt.observable))
        throw std::invalid_argument("unknown observable '" + opt.observable + "'");
    if (opt.ps.empty() || opt.times.empty() || opt.sizes.empty())
        throw std::invalid_argument("p, n and L grids must be non-empty");
    if (out.emit_plot_data && out.out.empty())
        throw std::invalid_argument("--emit-plot-data needs --out");

    // The independent model lives on the triangular lattice: B sites only,
    // triangular adjacency, no dynamics.
    const bool indep = opt.model == Model::independent;
    const Sub sub = indep ? Sub::B : opt.center_sub;
    const GraphKind graph = indep ? GraphKind::tri : opt.graph;
    const PairKind pair = indep ? PairKind::BB : opt.pair;
    const std::string model_name = to_string(opt.model);
    const std::string boundary_name = to_string(opt.boundary);

    std::vector<ObservationRecord> records;
    std::vector<PlotBlock> blocks;

    auto base_record = [&](double p, TimeSpec n, std::int32_t L) {
        ObservationRecord rec;
        rec.observable = opt.observable;
        rec.model = model_name;
        rec.p = p;
        rec.n = n;
        rec.L = L;
        rec.boundary = boundary_name;
        rec.replicates = opt.replicates;
        rec.seed = opt.seed;
        return rec;
    };
    auto context = [&](const double* p, const TimeSpec* n, std::int32_t L) {
        std::ostringstream os;
        os << "observable=" << opt.observable << " model=" << model_name
           << " boundary=" << boundary_name;
        if (p) os << " p=" << format_double(*p);
        if (n) os << " n=" << n->to_string();
        os << " L=" << L << " replicates=" << opt.replicates << " seed=" << opt.seed;
        return os.str();
    };

    if (opt.observable == "fliptail") {
        for (std::int32_t L : opt.sizes) {
            const BoxSpec box = make_box(L, opt.boundary);
            for (double p : opt.ps) {
                RunSpec run{box, opt.model, p, TimeSpec::fixation(), opt.replicates, opt.seed,
                            opt.workers};
                FlipTail ft = estimate_flip_tail(run);
                PlotBlock block{context(&p, nullptr, L),
                                {"n", "p_a", "p_a_err", "p_b", "p_b_err"},
                                {}};
                for (std::size_t i = 0; i < ft.n.size(); ++i) {
                    ObservationRecord rec = base_record(p, TimeSpec::at(ft.n[i]), L);
                    rec.param = "sub=A";
                    rec.value = ft.p_a[i];
                    rec.std_error = ft.p_a_err[i];
                    records.push_back(rec);
                    rec.param = "sub=B";
                    rec.value = ft.p_b[i];
                    rec.std_error = ft.p_b_err[i];
                    records.push_back(rec);
                    block.rows.push_back({double(ft.n[i]), ft.p_a[i], ft.p_a_err[i], ft.p_b[i],
                                          ft.p_b_err[i]});
                }
                blocks.push_back(std::move(block));
            }
        }
    } else {
        for (std::int32_t L : opt.sizes) {
            const BoxSpec box = make_box(L, opt.boundary);
            for (const TimeSpec& n : opt.times) {
                PlotBlock sweep{context(nullptr, &n, L), {"p", "value", "stderr"}, {}};
                const bool p_sweep = opt.observable != "tau";
                for (double p : opt.ps) {
                    RunSpec run{box, opt.model, p, n, opt.replicates, opt.seed, opt.workers};
                    if (opt.observable == "theta") {
                        const double radius =
                            opt.radius > 0.0 ? opt.radius : theta_default_radius(box);
                        Estimate est = estimate_theta(run, {radius, sub, graph});
                        ObservationRecord rec = base_record(p, n, L);
                        rec.param = "sub=" + to_string(sub) + ";graph=" + to_string(graph) +
                                    ";r=" + format_double(radius);
                        rec.value = est.value;
                        rec.std_error = est.std_error;
                        records.push_back(rec);
                        sweep.rows.push_back({p, est.value, est.std_error});
                    } else if (opt.observable == "chi") {
                        Estimate est = estimate_chi(run, sub);
                        ObservationRecord rec = base_record(p, n, L);
                        rec.param = "sub=" + to_string(sub);
                        rec.value = est.value;
                        rec.std_error = est.std_error;
                        records.push_back(rec);
                        sweep.rows.push_back({p, est.value, est.std_error});
                    } else if (opt.observable == "crossing") {
                        Estimate est = estimate_crossing(run, opt.dir, opt.sign);
                        ObservationRecord rec = base_record(p, n, L);
                        rec.param = "dir=" + to_string(opt.dir) + ";sign=" + sign_string(opt.sign);
                        rec.value = est.value;
                        rec.std_error = est.std_error;
                        records.push_back(rec);
                        sweep.rows.push_back({p, est.value, est.std_error});
                    } else if (opt.observable == "xi") {
                        XiResult xr = estimate_xi(run, opt.separations, pair, graph);
                        ObservationRecord rec = base_record(p, n, L);
                        const auto [kmin, kmax] = std::minmax_element(opt.separations.begin(),
                                                                      opt.separations.end());
                        rec.param = "pair=" + to_string(pair) + ";graph=" + to_string(graph) +
                                    ";kmin=" + std::to_string(*kmin) +
                                    ";kmax=" + std::to_string(*kmax);
                        rec.value = xr.xi;
                        rec.std_error = xr.std_error;
                        records.push_back(rec);
                        sweep.rows.push_back({p, xr.xi, xr.std_error});
                    } else { // tau
                        std::vector<TauPoint> pts = estimate_tau(run, opt.separations, pair, graph);
                        PlotBlock block{context(&p, &n, L), {"r", "value", "stderr"}, {}};
                        for (const TauPoint& pt : pts) {
                            ObservationRecord rec = base_record(p, n, L);
                            rec.param = "k=" + std::to_string(pt.separation) +
                                        ";pair=" + to_string(pair) +
                                        ";graph=" + to_string(graph);
                            rec.value = pt.est.value;
                            rec.std_error = pt.est.std_error;
                            records.push_back(rec);
                            block.rows.push_back({pt.r, pt.est.value, pt.est.std_error});
                        }
                        blocks.push_back(std::move(block));
                    }
                }
                if (p_sweep) blocks.push_back(std::move(sweep));
            }
        }
    }

    if (out.out.empty()) {
        write_observations_csv(std::cout, std::move(records));
    } else {
        std::ofstream os = open_out(out.out);
        write_observations_csv(os, std::move(records));
    }
    if (out.emit_plot_data) {
        std::ofstream ps = open_out(plot_path(out.out));
        write_plot_blocks(ps, blocks);
    }
    return kExitOk;
}

int cmd_verify(const VerifyOptions& opt, const OutputOptions& out) {
    std::vector<std::string> suites = opt.suites;
    if (suites.empty()) suites = {"equivalence", "invariants", "bounds"};

    nlohmann::json report = nlohmann::json::array();
    std::int64_t failures = 0, total = 0;
    for (const std::string& suite : suites) {
        for (const CheckResult& r : run_verify_suite(suite, opt.seed, opt.workers)) {
            report.push_back({{"check", r.check},
                              {"paper_ref", r.paper_ref},
                              {"status", r.pass ? "pass" : "fail"},
                              {"detail", r.detail}});
            ++total;
            if (!r.pass) ++failures;
        }
    }
    if (out.out.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream os = open_out(out.out);
        os << report.dump(2) << "\n";
    }
    std::cerr << (total - failures) << "/" << total << " checks passed\n";
    return failures == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_exponents(const ExponentsOptions& opt, const OutputOptions& out) {
    static const std::set<std::string> known{"beta", "eta", "nu", "all"};
    if (!known.count(opt.which))
        throw std::invalid_argument("unknown exponent '" + opt.which + "'");
    if (opt.times.empty()) throw std::invalid_argument("n grid must be non-empty");
    const bool want_beta = opt.which == "beta" || opt.which == "all";
    const bool want_eta = opt.which == "eta" || opt.which == "all";
    const bool want_nu = opt.which == "nu" || opt.which == "all";

    const BoxSpec box = make_box(opt.size, Boundary::periodic);

    // Fit windows; chosen once here so both models see identical pipelines.
    const std::vector<double> beta_ps = {0.52, 0.54, 0.56, 0.58, 0.60};
    const std::vector<double> nu_ps = {0.35, 0.375, 0.40, 0.425, 0.45};
    // Geometric separation ladder from ~L/64 up to L/8, at least four rungs.
    std::vector<std::int64_t> eta_ks;
    const std::int64_t eta_hi = std::max<std::int64_t>(8, opt.size / 8);
    for (std::int64_t k = std::max<std::int64_t>(2, opt.size / 64); k <= eta_hi;
         k = std::max<std::int64_t>(k + 1, (k * 3) / 2))
        eta_ks.push_back(k);
    if (eta_ks.back() < eta_hi) eta_ks.push_back(eta_hi);
    const std::vector<std::int64_t> xi_ks = {1, 2, 3, 4, 6, 8};

    nlohmann::json doc;
    doc["L"] = opt.size;
    doc["replicates"] = opt.replicates;
    doc["seed"] = opt.seed;
    doc["boundary"] = "periodic";
    doc["windows"] = {{"beta_p", beta_ps}, {"eta_k", eta_ks}, {"nu_p", nu_ps}, {"xi_k", xi_ks}};
    nlohmann::json insufficient = nlohmann::json::array();

    auto fit_json = [](const FitResult& f) {
        return nlohmann::json{{"slope", f.slope},
                              {"intercept", f.intercept},
                              {"slope_stderr", f.slope_stderr},
                              {"r_squared", f.r_squared},
                              {"points_used", f.points_used}};
    };
    auto result_json = [&](const ExponentResult& r) {
        return nlohmann::json{{"value", r.value},
                              {"std_error", r.std_error},
                              {"replicates", r.replicates},
                              {"fit", fit_json(r.fit)}};
    };

    // Runs one estimator and stores it under doc[exponent][label]; a thrown
    // insufficient_statistics is recorded instead of propagated so the rest
    // of the summary still appears (exit code 3 signals the gap).
    auto attempt = [&](const std::string& exponent, const std::string& label, auto&& compute) {
        try {
            doc["estimates"][exponent][label] = result_json(compute());
        } catch (const insufficient_statistics& e) {
            doc["estimates"][exponent][label] = {{"status", "insufficient_statistics"},
                                                 {"error", e.what()}};
            insufficient.push_back(exponent + "/" + label);
        }
    };

    auto run_for = [&](Model model, double p, TimeSpec n) {
        return RunSpec{box, model, p, n, opt.replicates, opt.seed, opt.workers};
    };

    std::vector<std::pair<std::string, TimeSpec>> domany_times;
    for (const TimeSpec& n : opt.times) domany_times.emplace_back("n=" + n.to_string(), n);

    if (want_beta) {
        attempt("beta", "independent", [&] {
            return estimate_beta(run_for(Model::independent, 0.5, TimeSpec::at(0)), beta_ps,
                                 {-1.0, Sub::B, GraphKind::tri});
        });
        for (const auto& [label, n] : domany_times)
            attempt("beta", label, [&] {
                return estimate_beta(run_for(Model::domany, 0.5, n), beta_ps,
                                     {-1.0, Sub::B, GraphKind::tri});
            });
    }
    if (want_eta) {
        attempt("eta", "independent", [&] {
            return estimate_eta(run_for(Model::independent, 0.5, TimeSpec::at(0)), eta_ks);
        });
        for (const auto& [label, n] : domany_times)
            attempt("eta", label, [&] {
                return estimate_eta(run_for(Model::domany, 0.5, n), eta_ks, PairKind::BB,
                                    GraphKind::tri);
            });
    }
    if (want_nu) {
        attempt("nu", "independent", [&] {
            return estimate_nu(run_for(Model::independent, 0.5, TimeSpec::at(0)), nu_ps, xi_ks);
        });
        for (const auto& [label, n] : domany_times)
            attempt("nu", label, [&] {
                return estimate_nu(run_for(Model::domany, 0.5, n), nu_ps, xi_ks, PairKind::BB,
                                   GraphKind::tri);
            });
    }

    // Pairwise difference of each domany estimate against the independent
    // reference, in combined-sigma units.
    for (auto& [exponent, entries] : doc["estimates"].items()) {
        if (!entries.contains("independent") || !entries["independent"].contains("value"))
            continue;
        const double ref = entries["independent"]["value"];
        const double ref_err = entries["independent"]["std_error"];
        for (auto& [label, est] : entries.items()) {
            if (label == "independent" || !est.contains("value")) continue;
            const double delta = double(est["value"]) - ref;
            const double sigma =
                std::sqrt(double(est["std_error"]) * double(est["std_error"]) +
                          ref_err * ref_err);
            doc["differences"][exponent][label] = {
                {"delta", delta},
                {"combined_sigma", sigma},
                {"within_3_sigma", sigma > 0.0 && std::abs(delta) <= 3.0 * sigma}};
        }
    }

    doc["insufficient"] = insufficient;
    if (out.out.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream os = open_out(out.out);
        os << doc.dump(2) << "\n";
    }
    return insufficient.empty() ? kExitOk : kExitInsufficient;
}

} // namespace domany::cli
