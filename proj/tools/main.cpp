#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "commands.hpp"
#include "domany/estimators.hpp"
#include "domany/io.hpp"
#include "plan.hpp"

namespace {

using namespace domany;
using namespace domany::cli;

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read plan file '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<TimeSpec> parse_times(const std::vector<std::string>& texts) {
    std::vector<TimeSpec> out;
    for (const std::string& t : texts) out.push_back(parse_time(t));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-temperature majority dynamics on the hexagonal lattice: "
                 "simulation, percolation measurements and verification suites"};
    app.require_subcommand(1);

    // Global flags, shared by every subcommand.
    std::uint64_t seed = 1;
    int workers = 1;
    OutputOptions output;
    app.add_option("--seed", seed, "master seed; every emitted number derives from it")
        ->capture_default_str();
    app.add_option("--workers", workers, "worker threads over replicates")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out", output.out, "output file (default: stdout)");
    app.add_flag("--emit-plot-data", output.emit_plot_data,
                 "also write a gnuplot-ready .dat next to --out");
    app.fallthrough();

    // simulate ----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "run the dynamics and write per-sweep traces");
    SimulateOptions sim_opt;
    std::string sim_time = "inf";
    sim->add_option("--p", sim_opt.p, "initial plus density")->capture_default_str();
    sim->add_option("--L", sim_opt.size, "box side in cells")->capture_default_str();
    std::string sim_boundary = "periodic";
    sim->add_option("--boundary", sim_boundary, "periodic|free")->capture_default_str();
    sim->add_option("--n", sim_time, "sweeps to run, or inf for fixation")
        ->capture_default_str();
    sim->add_option("--replicates", sim_opt.replicates, "independent runs")
        ->capture_default_str();

    // measure -----------------------------------------------------------
    auto* mea = app.add_subcommand("measure", "estimate an observable over a (p, n, L) grid");
    std::string plan_path;
    mea->add_option("--plan", plan_path, "JSON plan file; explicit flags override it");
    std::string mea_observable, mea_model, mea_boundary, mea_pair, mea_graph, mea_sub, mea_dir;
    std::vector<double> mea_ps;
    std::vector<std::string> mea_times;
    std::vector<std::int32_t> mea_sizes;
    std::vector<std::int64_t> mea_seps;
    std::int64_t mea_replicates = 0;
    double mea_radius = 0.0;
    int mea_sign = 0;
    auto* o_obs = mea->add_option("--observable", mea_observable,
                                  "theta|tau|chi|xi|fliptail|crossing");
    auto* o_model = mea->add_option("--model", mea_model, "domany|independent");
    auto* o_bnd = mea->add_option("--boundary", mea_boundary, "periodic|free");
    auto* o_p = mea->add_option("--p", mea_ps, "initial plus densities")->delimiter(',');
    auto* o_n = mea->add_option("--n", mea_times, "observation sweeps (integers or inf)")
                    ->delimiter(',');
    auto* o_L = mea->add_option("--L", mea_sizes, "box sides in cells")->delimiter(',');
    auto* o_rep = mea->add_option("--replicates", mea_replicates, "replicates per grid point");
    auto* o_sep = mea->add_option("--separations", mea_seps, "tau/xi separations in steps")
                      ->delimiter(',');
    auto* o_pair = mea->add_option("--pair", mea_pair, "BB|AA|AB endpoints for tau/xi");
    auto* o_graph = mea->add_option("--graph", mea_graph, "hex|tri cluster graph");
    auto* o_sub = mea->add_option("--sub", mea_sub, "A|B center sublattice");
    auto* o_rad = mea->add_option("--radius", mea_radius,
                                  "theta reach radius; <= 0 selects the default");
    auto* o_dir = mea->add_option("--dir", mea_dir, "u|v crossing direction");
    auto* o_sign = mea->add_option("--sign", mea_sign, "+1|-1 crossing spin sign");

    // verify ------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run verification suites, report JSON");
    VerifyOptions ver_opt;
    ver->add_option("--suite", ver_opt.suites,
                    "equivalence|invariants|bounds (repeatable; default: all)")
        ->delimiter(',');

    // exponents ---------------------------------------------------------
    auto* expo = app.add_subcommand("exponents", "fit beta, eta, nu for both models");
    ExponentsOptions exp_opt;
    std::vector<std::string> exp_times = {"1"};
    expo->add_option("--which", exp_opt.which, "beta|eta|nu|all")->capture_default_str();
    expo->add_option("--n", exp_times, "domany observation sweeps (integers or inf)")
        ->delimiter(',')
        ->capture_default_str();
    expo->add_option("--L", exp_opt.size, "box side in cells")->capture_default_str();
    expo->add_option("--replicates", exp_opt.replicates, "replicates per grid point")
        ->capture_default_str();

    try {
        app.parse(argc, argv);

        if (sim->parsed()) {
            sim_opt.boundary = parse_boundary(sim_boundary);
            sim_opt.time = parse_time(sim_time);
            sim_opt.seed = seed;
            return cmd_simulate(sim_opt, output);
        }
        if (mea->parsed()) {
            MeasureOptions opt;
            if (!plan_path.empty()) apply_overlay(parse_plan(slurp(plan_path)), opt);
            if (o_obs->count()) opt.observable = mea_observable;
            if (o_model->count()) opt.model = parse_model(mea_model);
            if (o_bnd->count()) opt.boundary = parse_boundary(mea_boundary);
            if (o_p->count()) opt.ps = mea_ps;
            if (o_n->count()) opt.times = parse_times(mea_times);
            if (o_L->count()) opt.sizes = mea_sizes;
            if (o_rep->count()) opt.replicates = mea_replicates;
            if (o_sep->count()) opt.separations = mea_seps;
            if (o_pair->count()) opt.pair = parse_pair(mea_pair);
            if (o_graph->count()) opt.graph = parse_graph(mea_graph);
            if (o_sub->count()) opt.center_sub = parse_sub(mea_sub);
            if (o_rad->count()) opt.radius = mea_radius;
            if (o_dir->count()) opt.dir = parse_dir(mea_dir);
            if (o_sign->count()) opt.sign = mea_sign;
            opt.seed = seed;
            opt.workers = workers;
            return cmd_measure(opt, output);
        }
        if (ver->parsed()) {
            ver_opt.seed = seed;
            ver_opt.workers = workers;
            return cmd_verify(ver_opt, output);
        }
        if (expo->parsed()) {
            exp_opt.times = parse_times(exp_times);
            exp_opt.seed = seed;
            exp_opt.workers = workers;
            return cmd_exponents(exp_opt, output);
        }
        return kExitUsage; // unreachable: require_subcommand(1)
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return kExitUsage;
    } catch (const domany::insufficient_statistics& e) {
        std::cerr << "insufficient statistics: " << e.what() << "\n";
        return kExitInsufficient;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
