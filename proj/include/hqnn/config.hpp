#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hqnn/bfgs.hpp"
#include "hqnn/network.hpp"

namespace hqnn {

/// Experiment description read from a flat `key: value` file:
///
///     # comments and blank lines are ignored
///     dataset_dir: data/tfim4          # relative to the config file
///     train_bond_lengths: 0.2, 0.6, 1.0, 1.4, 1.8
///     test_bond_lengths: 0.4, 0.8, 1.2, 1.6, 2.0
///     variants: with, without          # `variant` is accepted as an alias
///     seeds: 0, 1, 2, 3
///     max_iterations: 500
///     gradient_norm_tolerance: 1e-5
///     finite_difference_step: 1e-6
///     output_dir: out/tfim4
///     label: TFIM-4
///     timestamp: 2024-01-01T00:00:00Z  # optional, echoed into manifests
///
/// List values are separated by commas and/or whitespace. Every key may
/// appear at most once; unknown keys are rejected.
struct ExperimentConfig {
    std::filesystem::path dataset_dir;
    std::vector<double> train_bond_lengths;
    std::vector<double> test_bond_lengths;
    std::vector<Variant> variants{Variant::WithIntermediateMeasurements};
    std::vector<std::uint64_t> seeds{0};
    OptimizerSettings optimizer;
    std::filesystem::path output_dir = "out";
    std::string label = "dataset";
    std::string timestamp;

    /// Throws ConfigError: empty training set, overlapping train/test
    /// lists, duplicate bond lengths, no seeds, bad optimizer settings.
    void validate() const;
};

/// Relative paths in the text are resolved against base_dir.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
ExperimentConfig read_config_file(const std::filesystem::path& path);

} // namespace hqnn
