#include "hqnn/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hqnn/error.hpp"
#include "hqnn/text.hpp"

namespace hqnn {

namespace {

constexpr double kBondTolerance = 1e-9;

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::vector<double> parse_reals(std::size_t line, std::string_view key, std::string_view value) {
    std::vector<double> out;
    for (auto token : text::split(value, ", \t")) {
        const auto v = text::parse_double(token);
        if (!v) fail(line, std::string(key) + ": '" + std::string(token) + "' is not a finite real");
        out.push_back(*v);
    }
    return out;
}

std::uint64_t parse_count(std::size_t line, std::string_view key, std::string_view value) {
    const auto v = text::parse_integer(value);
    if (!v || *v < 0) fail(line, std::string(key) + ": expected a non-negative integer, got '" + std::string(value) + "'");
    return static_cast<std::uint64_t>(*v);
}

double parse_real(std::size_t line, std::string_view key, std::string_view value) {
    const auto v = text::parse_double(value);
    if (!v) fail(line, std::string(key) + ": '" + std::string(value) + "' is not a finite real");
    return *v;
}

void check_unique(const std::vector<double>& values, const char* name) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (std::abs(values[i] - values[j]) <= kBondTolerance) {
                throw ConfigError(std::string(name) + " lists bond length " +
                                  text::format_double(values[i]) + " twice");
            }
        }
    }
}

} // namespace

void ExperimentConfig::validate() const {
    if (dataset_dir.empty()) throw ConfigError("dataset_dir is required");
    if (train_bond_lengths.empty()) throw ConfigError("train_bond_lengths is empty");
    if (seeds.empty()) throw ConfigError("seeds is empty");
    if (variants.empty()) throw ConfigError("variants is empty");
    check_unique(train_bond_lengths, "train_bond_lengths");
    check_unique(test_bond_lengths, "test_bond_lengths");
    for (double a : train_bond_lengths) {
        for (double b : test_bond_lengths) {
            if (std::abs(a - b) <= kBondTolerance) {
                throw ConfigError("bond length " + text::format_double(a) +
                                  " is in both the training and the test list");
            }
        }
    }
    std::set<std::uint64_t> unique_seeds(seeds.begin(), seeds.end());
    if (unique_seeds.size() != seeds.size()) throw ConfigError("seeds contains duplicates");
    std::set<Variant> unique_variants(variants.begin(), variants.end());
    if (unique_variants.size() != variants.size()) throw ConfigError("variants contains duplicates");
    optimizer.validate();
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    std::set<std::string, std::less<>> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (line.empty()) continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) fail(line_no, "expected '<key>: <value>'");
        std::string key(text::trim(line.substr(0, colon)));
        const std::string_view value = text::trim(line.substr(colon + 1));
        if (key == "variant") key = "variants";
        if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");

        if (key == "dataset_dir") {
            cfg.dataset_dir = base_dir / std::filesystem::path(std::string(value));
        } else if (key == "output_dir") {
            cfg.output_dir = base_dir / std::filesystem::path(std::string(value));
        } else if (key == "train_bond_lengths") {
            cfg.train_bond_lengths = parse_reals(line_no, key, value);
        } else if (key == "test_bond_lengths") {
            cfg.test_bond_lengths = parse_reals(line_no, key, value);
        } else if (key == "variants") {
            cfg.variants.clear();
            for (auto token : text::split(value, ", \t")) {
                const auto v = parse_variant(token);
                if (!v) fail(line_no, "unknown variant '" + std::string(token) + "' (use with/without)");
                cfg.variants.push_back(*v);
            }
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (auto token : text::split(value, ", \t")) cfg.seeds.push_back(parse_count(line_no, key, token));
        } else if (key == "max_iterations") {
            cfg.optimizer.max_iterations = parse_count(line_no, key, value);
        } else if (key == "gradient_norm_tolerance") {
            cfg.optimizer.gradient_norm_tolerance = parse_real(line_no, key, value);
        } else if (key == "finite_difference_step") {
            cfg.optimizer.finite_difference_step = parse_real(line_no, key, value);
        } else if (key == "label") {
            cfg.label = std::string(value);
        } else if (key == "timestamp") {
            cfg.timestamp = std::string(value);
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    std::istringstream in{std::string(text)};
    return parse_config(in, base_dir);
}

ExperimentConfig read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    return parse_config(in, path.parent_path());
}

} // namespace hqnn
