// Command-line harness: synthetic data, exact curves, training runs and the
// with/without intermediate-measurement comparison.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hqnn/config.hpp"
#include "hqnn/error.hpp"
#include "hqnn/experiment.hpp"
#include "hqnn/optimize.hpp"
#include "hqnn/text.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

int cmd_gen_synthetic(const std::string& dir, std::size_t n_qubits, const std::vector<double>& bond_lengths) {
    for (const auto& p : hqnn::gen_synthetic(dir, n_qubits, bond_lengths)) std::cout << p.string() << "\n";
    return kOk;
}

int cmd_diag(const std::string& dir, const std::vector<double>& bond_lengths, bool all,
             const std::string& output) {
    const auto dataset = all ? hqnn::load_dataset(dir) : hqnn::load_dataset(dir, bond_lengths);
    const std::string csv = hqnn::run_diag(dataset);
    if (output.empty()) {
        std::cout << csv;
    } else {
        hqnn::write_text_file(output, csv);
    }
    return kOk;
}

int cmd_train(const std::string& config_path) {
    const auto config = hqnn::read_config_file(config_path);
    for (const auto& run : hqnn::run_train(config)) {
        for (const auto& s : run.seeds) {
            std::cout << hqnn::short_name(run.variant) << " seed " << s.seed
                      << ": cost " << hqnn::text::format_double(s.model.final_cost) << ", "
                      << s.model.iterations_used << " iterations, "
                      << (s.model.converged ? "converged" : s.model.message) << "\n";
        }
    }
    return kOk;
}

int cmd_curve(const std::string& config_path) {
    const auto config = hqnn::read_config_file(config_path);
    const auto run = hqnn::run_curve(config);
    for (const auto& s : run.seeds) {
        std::cout << "seed " << s.seed << ": sum train error " << hqnn::text::format_double(s.train_error_sum)
                  << ", sum test error " << hqnn::text::format_double(s.test_error_sum) << "\n";
    }
    std::cout << "wrote " << (config.output_dir / "results.csv").string() << "\n";
    return kOk;
}

int cmd_compare(const std::string& config_path) {
    const auto config = hqnn::read_config_file(config_path);
    const auto table = hqnn::run_compare(config);
    std::cout << table.format();
    return kOk;
}

int cmd_gradcheck(const std::string& config_path, std::uint64_t seed, double threshold) {
    const auto config = hqnn::read_config_file(config_path);
    const auto train_set = hqnn::load_dataset(config.dataset_dir, config.train_bond_lengths);
    std::vector<hqnn::TrainingPoint> points;
    for (const auto& e : train_set.entries()) points.push_back({e.bond_length, e.hamiltonian});
    int status = kOk;
    for (const auto variant : config.variants) {
        const hqnn::TrainingProblem problem(hqnn::NetworkSpec(train_set.n_qubits(), variant), points);
        const auto params = hqnn::init_params(problem.network().param_count(), seed);
        const auto check =
            hqnn::step_halving_check(params, problem, config.optimizer.finite_difference_step);
        std::cout << hqnn::short_name(variant) << ": h = " << hqnn::text::format_double(check.step)
                  << ", max relative deviation " << hqnn::text::format_double(check.relative_deviation)
                  << " (|g|_inf " << hqnn::text::format_double(check.gradient_inf_norm) << ")\n";
        if (!(check.relative_deviation <= threshold)) status = kNumerical;
    }
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid quantum-classical network for potential energy curves"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hqnn::software_version());

    std::string dir;
    std::size_t n_qubits = 4;
    std::vector<double> bond_lengths;
    auto* gen = app.add_subcommand("gen-synthetic", "Write transverse-field Ising .ham files");
    gen->add_option("--dir", dir, "Output directory")->required();
    gen->add_option("--qubits", n_qubits, "Chain length")->check(CLI::Range(1, 20));
    gen->add_option("--bond-lengths", bond_lengths, "Field strengths a (used as bond lengths)")
        ->required()
        ->delimiter(',');

    std::string output;
    bool all = false;
    auto* diag = app.add_subcommand("diag", "Exact ground-state energy curve of a dataset");
    diag->add_option("--dataset", dir, "Directory of .ham files")->required();
    auto* diag_bonds = diag->add_option("--bond-lengths", bond_lengths, "Bond lengths to include")->delimiter(',');
    diag->add_flag("--all", all, "Use every .ham file in the directory")->excludes(diag_bonds);
    diag->add_option("--output", output, "CSV path (default: stdout)");

    std::string config_path;
    auto* train = app.add_subcommand("train", "Train every configured variant and seed");
    train->add_option("--config", config_path, "Experiment config file")->required();
    auto* curve = app.add_subcommand("curve", "Train, then evaluate train and test bond lengths");
    curve->add_option("--config", config_path, "Experiment config file")->required();
    auto* compare = app.add_subcommand("compare", "Ablation: with vs without intermediate measurements");
    compare->add_option("--config", config_path, "Experiment config file")->required();

    std::uint64_t seed = 0;
    double threshold = 1e-4;
    auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference step-halving check");
    gradcheck->add_option("--config", config_path, "Experiment config file")->required();
    gradcheck->add_option("--seed", seed, "Seed for the probe parameters");
    gradcheck->add_option("--threshold", threshold, "Maximum accepted relative deviation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_gen_synthetic(dir, n_qubits, bond_lengths);
        if (*diag) return cmd_diag(dir, bond_lengths, all, output);
        if (*train) return cmd_train(config_path);
        if (*curve) return cmd_curve(config_path);
        if (*compare) return cmd_compare(config_path);
        if (*gradcheck) return cmd_gradcheck(config_path, seed, threshold);
    } catch (const hqnn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const hqnn::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const hqnn::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
