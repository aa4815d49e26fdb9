#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "hqnn/config.hpp"
#include "hqnn/optimize.hpp"
#include "hqnn/pauli.hpp"

namespace hqnn {

struct CurveEntry {
    double bond_length = 0.0;
    PauliHamiltonian hamiltonian;
};

/// (bond length, Hamiltonian) pairs sorted by strictly increasing bond
/// length, all on the same number of qubits.
class CurveDataset {
public:
    CurveDataset() = default;
    explicit CurveDataset(std::vector<CurveEntry> entries);

    const std::vector<CurveEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    /// 0 for an empty dataset.
    std::size_t n_qubits() const noexcept { return n_qubits_; }

private:
    std::vector<CurveEntry> entries_;
    std::size_t n_qubits_ = 0;
};

/// Reads every *.ham file in dir (non-recursive) that carries bond_length
/// metadata and picks the ones matching the requested bond lengths within
/// 1e-9. Throws DataError on a missing or ambiguous match, or when the
/// matched files disagree on the qubit count.
CurveDataset load_dataset(const std::filesystem::path& dir, const std::vector<double>& bond_lengths);
/// Every file with bond_length metadata in dir.
CurveDataset load_dataset(const std::filesystem::path& dir);

enum class Split { Train, Test };
const char* to_string(Split s);

struct ResultRow {
    double bond_length = 0.0;
    Split split = Split::Train;
    double energy_predicted = 0.0;
    double energy_exact = 0.0;
    double abs_error = 0.0;
    std::uint64_t seed = 0;
};

struct SeedOutcome {
    std::uint64_t seed = 0;
    TrainedModel model;
    double train_error_sum = 0.0;
    double test_error_sum = 0.0;
};

struct MeanStd {
    double mean = 0.0;
    /// Population standard deviation.
    double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& values);

/// Everything one variant produced across all seeds.
struct VariantRun {
    Variant variant = Variant::WithIntermediateMeasurements;
    std::vector<ResultRow> rows;
    std::vector<SeedOutcome> seeds;
    MeanStd train_error;
    MeanStd test_error;
};

/// Trains one model per seed on train_set, then evaluates every point of
/// both sets. Rows are emitted per seed in increasing bond length; error sums
/// are accumulated in that same row order.
VariantRun run_variant(const ExperimentConfig& config, Variant variant, const CurveDataset& train_set,
                       const CurveDataset& test_set);

/// results.csv body: header plus one line per row, '\n' terminated.
std::string format_results_csv(const std::vector<ResultRow>& rows);

nlohmann::ordered_json make_manifest(const ExperimentConfig& config, const VariantRun& run);

/// Trains and evaluates the single configured variant, writing
/// results.csv and manifest.json into config.output_dir.
VariantRun run_curve(const ExperimentConfig& config);

struct AblationTable {
    std::string label;
    std::vector<VariantRun> runs;

    /// Human-readable rows: construction, sum of training error, sum of
    /// testing error, each as mean +/- std.
    std::string format() const;
    std::string format_csv() const;
};

/// Runs both variants on identical seeds and splits. Writes
/// results_<variant>.csv, manifest_<variant>.json, ablation.csv and
/// ablation.txt into config.output_dir. Requires both variants and at least
/// two seeds in the config.
AblationTable run_compare(const ExperimentConfig& config);

/// Trains every configured variant and seed and writes
/// models_<variant>.json (parameters per seed). No evaluation; the returned
/// runs carry no rows.
std::vector<VariantRun> run_train(const ExperimentConfig& config);

/// "bond_length,ground_energy" CSV with the exact curve.
std::string run_diag(const CurveDataset& dataset);

/// Open transverse-field Ising chain -sum Z_i Z_{i+1} - a sum X_i.
PauliHamiltonian tfim_hamiltonian(std::size_t n_qubits, double a);

/// Writes one tfim_n<n>_a<a>.ham file per bond length; returns the paths.
std::vector<std::filesystem::path> gen_synthetic(const std::filesystem::path& dir,
                                                 std::size_t n_qubits,
                                                 const std::vector<double>& bond_lengths);

/// Writes text to path, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

std::string software_version();

} // namespace hqnn
