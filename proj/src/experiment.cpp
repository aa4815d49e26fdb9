#include "hqnn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hqnn/error.hpp"
#include "hqnn/oracle.hpp"
#include "hqnn/text.hpp"

#ifndef HQNN_VERSION
#define HQNN_VERSION "unknown"
#endif

namespace hqnn {

namespace {

constexpr double kBondTolerance = 1e-9;

struct ExactPoint {
    double bond_length;
    Split split;
    const PauliHamiltonian* hamiltonian;
    double exact;
};

std::vector<ExactPoint> merge_points(const CurveDataset& train_set, const CurveDataset& test_set) {
    std::vector<ExactPoint> points;
    for (const auto& e : train_set.entries()) {
        points.push_back({e.bond_length, Split::Train, &e.hamiltonian, ground_energy(e.hamiltonian)});
    }
    for (const auto& e : test_set.entries()) {
        points.push_back({e.bond_length, Split::Test, &e.hamiltonian, ground_energy(e.hamiltonian)});
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const ExactPoint& a, const ExactPoint& b) { return a.bond_length < b.bond_length; });
    return points;
}

TrainingProblem make_problem(Variant variant, const CurveDataset& train_set) {
    std::vector<TrainingPoint> points;
    for (const auto& e : train_set.entries()) points.push_back({e.bond_length, e.hamiltonian});
    return TrainingProblem(NetworkSpec(train_set.n_qubits(), variant), std::move(points));
}

struct Datasets {
    CurveDataset train;
    CurveDataset test;
};

Datasets load_split(const ExperimentConfig& config) {
    config.validate();
    Datasets d{load_dataset(config.dataset_dir, config.train_bond_lengths),
               load_dataset(config.dataset_dir, config.test_bond_lengths)};
    if (!d.test.empty() && d.test.n_qubits() != d.train.n_qubits()) {
        throw DataError("training files use " + std::to_string(d.train.n_qubits()) +
                        " qubits, test files use " + std::to_string(d.test.n_qubits()));
    }
    return d;
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["dataset_dir"] = c.dataset_dir.string();
    j["train_bond_lengths"] = c.train_bond_lengths;
    j["test_bond_lengths"] = c.test_bond_lengths;
    auto variants = nlohmann::ordered_json::array();
    for (auto v : c.variants) variants.push_back(std::string(short_name(v)));
    j["variants"] = variants;
    j["seeds"] = c.seeds;
    j["max_iterations"] = c.optimizer.max_iterations;
    j["gradient_norm_tolerance"] = c.optimizer.gradient_norm_tolerance;
    j["finite_difference_step"] = c.optimizer.finite_difference_step;
    j["output_dir"] = c.output_dir.string();
    j["label"] = c.label;
    return j;
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

CurveDataset::CurveDataset(std::vector<CurveEntry> entries) : entries_(std::move(entries)) {
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const CurveEntry& a, const CurveEntry& b) { return a.bond_length < b.bond_length; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto n = entries_[i].hamiltonian.n_qubits();
        if (i == 0) n_qubits_ = n;
        if (n != n_qubits_) {
            throw DataError("inconsistent qubit counts: bond length " +
                            text::format_double(entries_[i].bond_length) + " has " + std::to_string(n) +
                            " qubits, bond length " + text::format_double(entries_[0].bond_length) +
                            " has " + std::to_string(n_qubits_));
        }
        if (i > 0 && !(entries_[i].bond_length - entries_[i - 1].bond_length > kBondTolerance)) {
            throw DataError("bond length " + text::format_double(entries_[i].bond_length) +
                            " appears more than once");
        }
    }
}

namespace {

struct HamFile {
    std::filesystem::path path;
    PauliHamiltonian hamiltonian;
};

std::vector<HamFile> scan_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw DataError("dataset directory " + dir.string() + " does not exist");
    }
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ham") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<HamFile> files;
    for (auto& p : paths) {
        auto h = read_hamiltonian_file(p);
        if (h.bond_length()) files.push_back({std::move(p), std::move(h)});
    }
    return files;
}

} // namespace

CurveDataset load_dataset(const std::filesystem::path& dir, const std::vector<double>& bond_lengths) {
    if (bond_lengths.empty()) return {};
    const auto files = scan_directory(dir);
    std::vector<CurveEntry> entries;
    for (double a : bond_lengths) {
        const HamFile* match = nullptr;
        for (const auto& f : files) {
            if (std::abs(*f.hamiltonian.bond_length() - a) > kBondTolerance) continue;
            if (match) {
                throw DataError("bond length " + text::format_double(a) + " matches both " +
                                match->path.string() + " and " + f.path.string());
            }
            match = &f;
        }
        if (!match) {
            throw DataError("no .ham file in " + dir.string() + " for bond length " + text::format_double(a));
        }
        entries.push_back({a, match->hamiltonian});
    }
    return CurveDataset(std::move(entries));
}

CurveDataset load_dataset(const std::filesystem::path& dir) {
    std::vector<CurveEntry> entries;
    for (auto& f : scan_directory(dir)) entries.push_back({*f.hamiltonian.bond_length(), std::move(f.hamiltonian)});
    return CurveDataset(std::move(entries));
}

const char* to_string(Split s) { return s == Split::Train ? "train" : "test"; }

MeanStd mean_std(const std::vector<double>& values) {
    if (values.empty()) return {};
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

VariantRun run_variant(const ExperimentConfig& config, Variant variant, const CurveDataset& train_set,
                       const CurveDataset& test_set) {
    if (train_set.empty()) throw ConfigError("training set is empty");
    const TrainingProblem problem = make_problem(variant, train_set);
    const auto points = merge_points(train_set, test_set);

    VariantRun run;
    run.variant = variant;
    std::vector<double> train_sums;
    std::vector<double> test_sums;
    for (const auto seed : config.seeds) {
        SeedOutcome outcome{seed, train(problem, seed, config.optimizer), 0.0, 0.0};
        for (const auto& p : points) {
            const Evaluation e = evaluate(outcome.model, p.bond_length, *p.hamiltonian, p.exact);
            run.rows.push_back({p.bond_length, p.split, e.energy, p.exact, e.error, seed});
            (p.split == Split::Train ? outcome.train_error_sum : outcome.test_error_sum) += e.error;
        }
        train_sums.push_back(outcome.train_error_sum);
        test_sums.push_back(outcome.test_error_sum);
        run.seeds.push_back(std::move(outcome));
    }
    run.train_error = mean_std(train_sums);
    run.test_error = mean_std(test_sums);
    return run;
}

std::string format_results_csv(const std::vector<ResultRow>& rows) {
    std::string out = "bond_length,split,energy_predicted,energy_exact,abs_error,seed\n";
    for (const auto& r : rows) {
        out += text::format_double(r.bond_length);
        out += ',';
        out += to_string(r.split);
        out += ',';
        out += text::format_double(r.energy_predicted);
        out += ',';
        out += text::format_double(r.energy_exact);
        out += ',';
        out += text::format_double(r.abs_error);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json make_manifest(const ExperimentConfig& config, const VariantRun& run) {
    nlohmann::ordered_json m;
    m["software"] = {{"name", "hqnn"}, {"version", software_version()}};
    m["timestamp"] = config.timestamp.empty() ? "unspecified" : config.timestamp;
    m["config"] = config_json(config);
    m["variant"] = std::string(short_name(run.variant));
    m["label"] = config.label;
    auto seeds = nlohmann::ordered_json::array();
    for (const auto& s : run.seeds) {
        nlohmann::ordered_json j;
        j["seed"] = s.seed;
        j["final_cost"] = s.model.final_cost;
        j["iterations"] = s.model.iterations_used;
        j["converged"] = s.model.converged;
        j["stop_reason"] = s.model.message;
        j["train_error_sum"] = s.train_error_sum;
        j["test_error_sum"] = s.test_error_sum;
        seeds.push_back(std::move(j));
    }
    m["seeds"] = seeds;
    m["train_error_sum"] = {{"mean", run.train_error.mean}, {"std", run.train_error.std}};
    m["test_error_sum"] = {{"mean", run.test_error.mean}, {"std", run.test_error.std}};
    return m;
}

VariantRun run_curve(const ExperimentConfig& config) {
    if (config.variants.size() != 1) {
        throw ConfigError("curve runs exactly one variant; use compare for both");
    }
    const auto data = load_split(config);
    VariantRun run = run_variant(config, config.variants.front(), data.train, data.test);
    write_text_file(config.output_dir / "results.csv", format_results_csv(run.rows));
    write_text_file(config.output_dir / "manifest.json", make_manifest(config, run).dump(2) + "\n");
    return run;
}

std::string AblationTable::format() const {
    std::vector<std::string> names;
    std::size_t width = std::string("Construction").size();
    for (const auto& r : runs) {
        names.push_back(std::string(display_name(r.variant)) + " (" + label + ")");
        width = std::max(width, names.back().size());
    }
    const auto pad = [&](std::string s) {
        s.resize(width, ' ');
        return s;
    };
    std::string out = pad("Construction") + "  Sum training error    Sum testing error\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::string train = fixed4(runs[i].train_error.mean) + " +/- " + fixed4(runs[i].train_error.std);
        train.resize(std::max<std::size_t>(train.size(), 20), ' ');
        out += pad(names[i]) + "  " + train + "  " + fixed4(runs[i].test_error.mean) + " +/- " +
               fixed4(runs[i].test_error.std) + "\n";
    }
    return out;
}

std::string AblationTable::format_csv() const {
    std::string out = "construction,label,train_error_mean,train_error_std,test_error_mean,test_error_std\n";
    for (const auto& r : runs) {
        out += std::string(short_name(r.variant)) + "," + label + "," +
               text::format_double(r.train_error.mean) + "," + text::format_double(r.train_error.std) +
               "," + text::format_double(r.test_error.mean) + "," +
               text::format_double(r.test_error.std) + "\n";
    }
    return out;
}

AblationTable run_compare(const ExperimentConfig& config) {
    const bool has_with = std::count(config.variants.begin(), config.variants.end(),
                                     Variant::WithIntermediateMeasurements) == 1;
    const bool has_without = std::count(config.variants.begin(), config.variants.end(),
                                        Variant::WithoutIntermediateMeasurements) == 1;
    if (!has_with || !has_without) {
        throw ConfigError("compare needs both variants (variants: with, without)");
    }
    if (config.seeds.size() < 2) throw ConfigError("compare needs at least two seeds");
    const auto data = load_split(config);

    AblationTable table;
    table.label = config.label;
    for (const auto variant : {Variant::WithIntermediateMeasurements, Variant::WithoutIntermediateMeasurements}) {
        VariantRun run = run_variant(config, variant, data.train, data.test);
        const std::string suffix(short_name(variant));
        write_text_file(config.output_dir / ("results_" + suffix + ".csv"), format_results_csv(run.rows));
        write_text_file(config.output_dir / ("manifest_" + suffix + ".json"),
                        make_manifest(config, run).dump(2) + "\n");
        table.runs.push_back(std::move(run));
    }
    write_text_file(config.output_dir / "ablation.csv", table.format_csv());
    write_text_file(config.output_dir / "ablation.txt", table.format());
    return table;
}

std::vector<VariantRun> run_train(const ExperimentConfig& config) {
    config.validate();
    const auto train_set = load_dataset(config.dataset_dir, config.train_bond_lengths);
    std::vector<VariantRun> runs;
    for (const auto variant : config.variants) {
        const TrainingProblem problem = make_problem(variant, train_set);
        VariantRun run;
        run.variant = variant;
        nlohmann::ordered_json models = nlohmann::ordered_json::array();
        for (const auto seed : config.seeds) {
            TrainedModel model = train(problem, seed, config.optimizer);
            nlohmann::ordered_json j;
            j["seed"] = seed;
            j["variant"] = std::string(short_name(variant));
            j["n_qubits"] = model.network.n_qubits();
            j["final_cost"] = model.final_cost;
            j["iterations"] = model.iterations_used;
            j["converged"] = model.converged;
            j["parameters"] = std::vector<double>(model.parameters.values().begin(),
                                                  model.parameters.values().end());
            models.push_back(std::move(j));
            run.seeds.push_back({seed, std::move(model), 0.0, 0.0});
        }
        write_text_file(config.output_dir / ("models_" + std::string(short_name(variant)) + ".json"),
                        models.dump(2) + "\n");
        runs.push_back(std::move(run));
    }
    return runs;
}

std::string run_diag(const CurveDataset& dataset) {
    std::string out = "bond_length,ground_energy\n";
    for (const auto& e : dataset.entries()) {
        out += text::format_double(e.bond_length) + "," + text::format_double(ground_energy(e.hamiltonian)) + "\n";
    }
    return out;
}

PauliHamiltonian tfim_hamiltonian(std::size_t n_qubits, double a) {
    std::vector<PauliTerm> terms;
    for (std::size_t i = 0; i + 1 < n_qubits; ++i) {
        PauliTerm t{-1.0, std::vector<PauliAxis>(n_qubits, PauliAxis::I)};
        t.axes[i] = PauliAxis::Z;
        t.axes[i + 1] = PauliAxis::Z;
        terms.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < n_qubits; ++i) {
        PauliTerm t{-a, std::vector<PauliAxis>(n_qubits, PauliAxis::I)};
        t.axes[i] = PauliAxis::X;
        terms.push_back(std::move(t));
    }
    return PauliHamiltonian(n_qubits, std::move(terms), a);
}

std::vector<std::filesystem::path> gen_synthetic(const std::filesystem::path& dir,
                                                 std::size_t n_qubits,
                                                 const std::vector<double>& bond_lengths) {
    std::vector<std::filesystem::path> written;
    for (double a : bond_lengths) {
        const auto path = dir / ("tfim_n" + std::to_string(n_qubits) + "_a" + text::format_double(a) + ".ham");
        write_text_file(path, "# open transverse-field Ising chain: -sum Z_i Z_{i+1} - a sum X_i\n" +
                                  format_hamiltonian(tfim_hamiltonian(n_qubits, a)));
        written.push_back(path);
    }
    return written;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw DataError("cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << contents;
    if (!out) throw DataError("write failed for " + path.string());
}

std::string software_version() { return HQNN_VERSION; }

} // namespace hqnn
