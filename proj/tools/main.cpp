#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pairbec/config.hpp"
#include "pairbec/errors.hpp"
#include "pairbec/experiments.hpp"
#include "pairbec/lobpcg.hpp"
#include "pairbec/mesh.hpp"
#include "pairbec/table.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

struct Override {
    std::string key;
    std::string value;
};

// Writes the strip mesh for every configured L; with several L values the
// box size is appended to the file name.
void dump_meshes(const pairbec::RunConfig& config, const std::string& path) {
    for (double L : config.L) {
        std::string target = path;
        if (config.L.size() > 1)
            target += "_L" + pairbec::format_number(L);
        const pairbec::StripMesh mesh =
            pairbec::build_mesh({config.d, L}, config.m, config.node_budget);
        std::ofstream os(target);
        if (!os) throw pairbec::InputError("cannot open mesh dump file: " + target);
        pairbec::dump_mesh(mesh, os);
    }
}

int run(int argc, char** argv) {
    CLI::App app{
        "Spectrum and condensation toolkit for bound electron pairs on a "
        "half-line: reduced 1D spectra, strip FEM eigenvalues, and "
        "grand-canonical condensate statistics."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, dump_mesh_path;
    std::vector<Override> overrides;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--dump-mesh", dump_mesh_path,
                   "write the strip mesh(es) to this path and continue");
    const auto add_override = [&](const std::string& flag, const char* key,
                                  const std::string& desc) {
        app.add_option_function<std::string>(
            flag,
            [&overrides, key](const std::string& v) {
                overrides.push_back({key, v});
            },
            desc);
    };
    add_override("--d", "d", "pair size d > 0");
    add_override("--alpha", "alpha", "comma-separated couplings; inf allowed");
    add_override("--L", "L", "comma-separated box sizes, each > d");
    add_override("--m", "m", "mesh subdivisions of d (>= 2)");
    add_override("--beta", "beta", "inverse temperature > 0");
    add_override("--rho", "rho", "comma-separated pair densities");
    add_override("--k", "k", "eigenpairs / levels per spectrum");
    add_override("--tol", "tol", "eigensolver tolerance");
    add_override("--out", "out", "output CSV path (JSONL twin written beside)");
    add_override("--seed", "seed", "seed for the eigensolver initial block");
    add_override("--threads", "threads", "OpenMP thread count (0 = default)");
    add_override("--node-budget", "node-budget", "mesh node budget");
    add_override("--max-iterations", "max-iterations",
                 "eigensolver iteration budget");

    CLI::App* sc_spectrum1d = app.add_subcommand(
        "spectrum1d", "Reduced 1D interval spectra (Dirichlet/Neumann far end)");
    CLI::App* sc_bounds = app.add_subcommand(
        "bounds", "Ground-state sandwich 2 eps_N_0 <= E_0 <= eps_D_0");
    CLI::App* sc_alpha_sweep = app.add_subcommand(
        "alpha-sweep", "Spectral gap and bound-state count over a coupling grid");
    CLI::App* sc_count_vs_l = app.add_subcommand(
        "count-vs-L", "Eigenvalue count below the essential spectrum vs box size");
    CLI::App* sc_condensate = app.add_subcommand(
        "condensate", "Chemical potential, condensate fraction, density split");
    CLI::App* sc_trace_probe = app.add_subcommand(
        "trace-probe", "Diagonal trace ratio over computed eigenvectors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    pairbec::RunConfig config;
    if (!config_path.empty()) config = pairbec::parse_config_file(config_path);
    for (const Override& o : overrides)
        pairbec::apply_config_key(config, o.key, o.value);

    const bool alpha_given =
        std::find(config.provided_keys.begin(), config.provided_keys.end(),
                  "alpha") != config.provided_keys.end();
    if (sc_alpha_sweep->parsed() && !alpha_given)
        config.alpha = {0.0,   0.01,  0.1,  1.0, 10.0, 100.0, 1000.0,
                        std::numeric_limits<double>::infinity()};

    pairbec::finalize_config(config);
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#endif

    if (!dump_mesh_path.empty()) dump_meshes(config, dump_mesh_path);

    pairbec::ExperimentResult result = [&] {
        if (sc_spectrum1d->parsed()) return pairbec::run_spectrum1d(config);
        if (sc_bounds->parsed()) return pairbec::run_bounds(config);
        if (sc_alpha_sweep->parsed()) return pairbec::run_alpha_sweep(config);
        if (sc_count_vs_l->parsed()) return pairbec::run_count_vs_L(config);
        if (sc_condensate->parsed()) return pairbec::run_condensate(config);
        return pairbec::run_trace_probe(config);
    }();

    if (config.out.empty())
        result.table.write_csv(std::cout);
    else
        result.table.write_files(config.out);

    if (!result.check_failures.empty()) {
        for (const std::string& failure : result.check_failures)
            std::cerr << "check failed: " << failure << "\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pairbec::CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 4;
    } catch (const pairbec::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pairbec::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pairbec::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        const pairbec::EigenResult& partial = e.partial();
        if (!partial.eigenvalues.empty())
            std::cerr << "partial result: " << partial.converged
                      << " converged eigenvalue(s), lowest "
                      << pairbec::format_number(partial.eigenvalues.front())
                      << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
