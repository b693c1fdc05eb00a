// kerrsim: run atom-field decoherence scenarios and write discord / Fisher information series.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kerrsim/errors.hpp"
#include "kerrsim/runner.hpp"
#include "kerrsim/selftest.hpp"

namespace {

struct SimulateFlags {
    std::string config;
    std::string out;
    int n_atoms = 0;
    int n_cutoff = 0;
    double chi = 0, kappa = 0, gamma = 0, g = 0, omega = 0, omega0 = 0;
    double p = 0, theta = 0, t_max = 0, dt = 0, qfi_theta = 0;
    std::string observables;
    std::uint64_t seed = 0;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Atom-field simulator with Kerr medium, parametric pump and intrinsic decoherence"};
    app.require_subcommand(1);

    SimulateFlags f;
    auto* sim = app.add_subcommand("simulate", "Run one scenario and write a CSV time series");
    sim->add_option("--config", f.config, "JSON scenario file; flags override its values")->check(CLI::ExistingFile);
    auto* o_atoms = sim->add_option("--n-atoms", f.n_atoms, "Number of two-level atoms (1-4)");
    auto* o_cutoff = sim->add_option("--n-cutoff", f.n_cutoff, "Photon cutoff");
    auto* o_chi = sim->add_option("--chi", f.chi, "Kerr strength");
    auto* o_kappa = sim->add_option("--kappa", f.kappa, "Parametric pump amplitude");
    auto* o_gamma = sim->add_option("--gamma", f.gamma, "Intrinsic decoherence rate");
    auto* o_g = sim->add_option("--g", f.g, "Atom-field coupling");
    auto* o_omega = sim->add_option("--omega", f.omega, "Field frequency");
    auto* o_omega0 = sim->add_option("--omega0", f.omega0, "Atomic transition frequency");
    auto* o_p = sim->add_option("--p", f.p, "Initial mixedness");
    auto* o_theta = sim->add_option("--theta", f.theta, "Initial superposition angle");
    auto* o_tmax = sim->add_option("--t-max", f.t_max, "Last output time");
    auto* o_dt = sim->add_option("--dt", f.dt, "Output sampling step");
    auto* o_obs = sim->add_option("--observables", f.observables, "Comma list from gqd,qfi,purity,atomic_entropy");
    auto* o_qfi = sim->add_option("--qfi-theta", f.qfi_theta, "Theta at which the QFI is evaluated");
    auto* o_seed = sim->add_option("--seed", f.seed, "Discord optimizer seed");
    sim->add_option("--out", f.out, "Output CSV path")->required();

    std::string figure, outdir;
    std::uint64_t rep_seed = 42;
    double rep_tmax = 0, rep_dt = 0;
    auto* rep = app.add_subcommand("reproduce", "Run every variant of a figure preset");
    rep->add_option("--figure", figure, "fig1 .. fig5")->required()->check(CLI::IsMember(kerrsim::preset_names()));
    rep->add_option("--outdir", outdir, "Directory for <figure>_<variant>.csv")->required();
    auto* r_seed = rep->add_option("--seed", rep_seed, "Discord optimizer seed");
    auto* r_tmax = rep->add_option("--t-max", rep_tmax, "Override the preset's last output time");
    auto* r_dt = rep->add_option("--dt", rep_dt, "Override the preset's sampling step");

    auto* self = app.add_subcommand("selftest", "Run the built-in oracle checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            kerrsim::ScenarioConfig cfg;
            if (!f.config.empty()) cfg = kerrsim::load_scenario(f.config);
            auto set = [](CLI::Option* opt, auto& field, const auto& value) {
                if (opt->count() > 0) field = value;
            };
            set(o_atoms, cfg.system.n_atoms, f.n_atoms);
            set(o_cutoff, cfg.system.n_cutoff, f.n_cutoff);
            set(o_chi, cfg.system.chi, f.chi);
            set(o_kappa, cfg.system.kappa, f.kappa);
            set(o_gamma, cfg.system.gamma, f.gamma);
            set(o_g, cfg.system.g, f.g);
            set(o_omega, cfg.system.omega, f.omega);
            set(o_omega0, cfg.system.omega0, f.omega0);
            set(o_p, cfg.initial.p, f.p);
            set(o_theta, cfg.initial.theta, f.theta);
            set(o_tmax, cfg.t_max, f.t_max);
            set(o_dt, cfg.dt, f.dt);
            set(o_seed, cfg.seed, f.seed);
            if (o_qfi->count() > 0) cfg.qfi_theta_point = f.qfi_theta;
            if (o_obs->count() > 0) cfg.observables = kerrsim::parse_observables(f.observables);

            const auto records = kerrsim::run_scenario(cfg);
            kerrsim::write_csv(records, cfg, f.out);
            std::cerr << "wrote " << records.size() << " records to " << f.out << '\n';
        } else if (rep->parsed()) {
            kerrsim::ReproduceOptions opts;
            if (r_seed->count() > 0) opts.seed = rep_seed;
            if (r_tmax->count() > 0) opts.t_max = rep_tmax;
            if (r_dt->count() > 0) opts.dt = rep_dt;
            for (const auto& path : kerrsim::reproduce_figure(figure, outdir, opts)) {
                std::cerr << "wrote " << path.string() << '\n';
            }
        } else if (self->parsed()) {
            return kerrsim::run_selftest(std::cout) ? EXIT_SUCCESS : EXIT_FAILURE;
        }
    } catch (const kerrsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const kerrsim::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return EXIT_SUCCESS;
}
