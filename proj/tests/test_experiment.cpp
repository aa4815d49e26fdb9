#include <cmath>
#include <sstream>

#include "doctest.h"

#include "hqnn/config.hpp"
#include "hqnn/error.hpp"
#include "hqnn/experiment.hpp"
#include "hqnn/oracle.hpp"
#include "hqnn/text.hpp"
#include "temp_dir.hpp"

using hqnn::ExperimentConfig;
using hqnn::Variant;
using testing::TempDir;

namespace {

constexpr const char* kConfig = R"(# experiment
dataset_dir: data   # relative
train_bond_lengths: 0.2, 0.6 1.0
test_bond_lengths: 0.4
variants: with, without
seeds: 0, 1
max_iterations: 50
gradient_norm_tolerance: 1e-4
finite_difference_step: 2e-6
output_dir: out
label: demo
timestamp: 2024-01-01T00:00:00Z
)";

std::string identity_ham(double a, double c) {
    return "qubits: 2\nbond_length: " + hqnn::text::format_double(a) + "\nterm: " +
           hqnn::text::format_double(c) + " II\n";
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

ExperimentConfig small_config(const std::filesystem::path& data, const std::filesystem::path& out) {
    ExperimentConfig c;
    c.dataset_dir = data;
    c.train_bond_lengths = {0.5, 1.5};
    c.test_bond_lengths = {1.0};
    c.variants = {Variant::WithIntermediateMeasurements};
    c.seeds = {0, 1};
    c.output_dir = out;
    c.label = "tfim2";
    return c;
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("parses every key") {
    const auto c = hqnn::parse_config(std::string_view(kConfig), "/base");
    CHECK(c.dataset_dir == std::filesystem::path("/base/data"));
    CHECK(c.output_dir == std::filesystem::path("/base/out"));
    CHECK(c.train_bond_lengths == std::vector<double>{0.2, 0.6, 1.0});
    CHECK(c.test_bond_lengths == std::vector<double>{0.4});
    CHECK(c.variants == std::vector<Variant>{Variant::WithIntermediateMeasurements,
                                             Variant::WithoutIntermediateMeasurements});
    CHECK(c.seeds == std::vector<std::uint64_t>{0, 1});
    CHECK(c.optimizer.max_iterations == 50);
    CHECK(c.optimizer.gradient_norm_tolerance == 1e-4);
    CHECK(c.optimizer.finite_difference_step == 2e-6);
    CHECK(c.label == "demo");
    CHECK(c.timestamp == "2024-01-01T00:00:00Z");
}

TEST_CASE("defaults and absolute paths") {
    const auto c = hqnn::parse_config(std::string_view("dataset_dir: /abs/data\ntrain_bond_lengths: 1\n"), "/base");
    CHECK(c.dataset_dir == std::filesystem::path("/abs/data"));
    CHECK(c.seeds == std::vector<std::uint64_t>{0});
    CHECK(c.variants == std::vector<Variant>{Variant::WithIntermediateMeasurements});
    CHECK(c.optimizer.max_iterations == 500);
    CHECK(c.test_bond_lengths.empty());
    CHECK(hqnn::parse_config(std::string_view("dataset_dir: d\ntrain_bond_lengths: 1\nvariant: without\n"), ".")
              .variants == std::vector<Variant>{Variant::WithoutIntermediateMeasurements});
}

TEST_CASE("rejections") {
    const auto bad = [](const std::string& text) {
        CHECK_THROWS_AS(hqnn::parse_config(std::string_view(text), "."), hqnn::ConfigError);
    };
    bad("train_bond_lengths: 1\n");                                         // no dataset_dir
    bad("dataset_dir: d\n");                                                // no training set
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2, 0.6\ntest_bond_lengths: 0.6\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2, 0.2\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2\nseeds: 1, 1\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2\nseeds: -1\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2\nvariants: sometimes\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2\nvariants: with, with\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2\ngradient_norm_tolerance: 0\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2\nmax_iterations: 0\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2, x\n");
    bad("dataset_dir: d\ntrain_bond_lengths: 0.2\nlearning_rate: 0.1\n");
    bad("dataset_dir: d\ndataset_dir: e\ntrain_bond_lengths: 0.2\n");
    bad("dataset_dir d\n");

    try {
        hqnn::parse_config(std::string_view("dataset_dir: d\n\nbogus: 1\n"), ".");
        FAIL("expected ConfigError");
    } catch (const hqnn::ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("read_config_file resolves paths against the file's directory") {
    TempDir dir("cfg");
    testing::write_file(dir / "sub/run.cfg", kConfig);
    const auto c = hqnn::read_config_file(dir / "sub/run.cfg");
    CHECK(c.dataset_dir == dir.path() / "sub" / "data");
    CHECK_THROWS_AS(hqnn::read_config_file(dir / "missing.cfg"), hqnn::ConfigError);
}

} // TEST_SUITE

TEST_SUITE("dataset") {

TEST_CASE("load_dataset matches by bond length metadata") {
    TempDir dir("data");
    testing::write_file(dir / "b.ham", identity_ham(0.6, 2.0));
    testing::write_file(dir / "a.ham", identity_ham(0.2, 1.0));
    testing::write_file(dir / "c.ham", identity_ham(1.0, 3.0));
    testing::write_file(dir / "nometa.ham", "qubits: 3\nterm: 1 ZZZ\n");
    testing::write_file(dir / "notes.txt", "ignored");

    const auto d = hqnn::load_dataset(dir.path(), {1.0, 0.2});
    REQUIRE(d.size() == 2);
    CHECK(d.n_qubits() == 2);
    CHECK(d.entries()[0].bond_length == 0.2);
    CHECK(d.entries()[1].bond_length == 1.0);
    CHECK(d.entries()[1].hamiltonian.terms()[0].coefficient == 3.0);

    CHECK(hqnn::load_dataset(dir.path()).size() == 3);
    CHECK(hqnn::load_dataset(dir.path(), {}).empty());
    CHECK(hqnn::load_dataset(dir.path(), {0.6 + 1e-12}).size() == 1);

    try {
        hqnn::load_dataset(dir.path(), {0.2, 0.8});
        FAIL("expected DataError");
    } catch (const hqnn::DataError& e) {
        CHECK(std::string(e.what()).find("0.8") != std::string::npos);
    }
    CHECK_THROWS_AS(hqnn::load_dataset(dir / "nope", {0.2}), hqnn::DataError);
}

TEST_CASE("load_dataset: ambiguity, mixed qubit counts and malformed files") {
    TempDir dir("bad");
    testing::write_file(dir / "a.ham", identity_ham(0.2, 1.0));
    testing::write_file(dir / "a2.ham", identity_ham(0.2, 1.5));
    CHECK_THROWS_AS(hqnn::load_dataset(dir.path(), {0.2}), hqnn::DataError);

    TempDir mixed("mixed");
    testing::write_file(mixed / "a.ham", identity_ham(0.2, 1.0));
    testing::write_file(mixed / "b.ham", "qubits: 3\nbond_length: 0.6\nterm: 1 ZZZ\n");
    CHECK_THROWS_AS(hqnn::load_dataset(mixed.path(), {0.2, 0.6}), hqnn::DataError);
    CHECK(hqnn::load_dataset(mixed.path(), {0.6}).n_qubits() == 3);

    TempDir broken("broken");
    testing::write_file(broken / "a.ham", "qubits: 2\nbond_length: 0.2\nterm: 1 ZQ\n");
    try {
        hqnn::load_dataset(broken.path(), {0.2});
        FAIL("expected ParseError");
    } catch (const hqnn::ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("a.ham") != std::string::npos);
    }
}

TEST_CASE("synthetic generator") {
    const auto h = hqnn::tfim_hamiltonian(2, 1.0);
    CHECK(hqnn::format_hamiltonian(h) == "qubits: 2\nbond_length: 1\nterm: -1 ZZ\nterm: -1 XI\nterm: -1 IX\n");
    CHECK(hqnn::ground_energy(hqnn::tfim_hamiltonian(2, 0.0)) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(hqnn::ground_energy(hqnn::tfim_hamiltonian(2, 1.0)) ==
          doctest::Approx(-std::sqrt(5.0)).epsilon(1e-12));

    TempDir dir("gen");
    const auto paths = hqnn::gen_synthetic(dir.path(), 3, {0.5, 1.25});
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].filename() == "tfim_n3_a0.5.ham");
    CHECK(hqnn::read_hamiltonian_file(paths[1]) == hqnn::tfim_hamiltonian(3, 1.25));
    CHECK(hqnn::load_dataset(dir.path()).size() == 2);
}

TEST_CASE("run_diag") {
    CHECK(hqnn::run_diag({}) == "bond_length,ground_energy\n");
    TempDir dir("diag");
    testing::write_file(dir / "a.ham", identity_ham(0.2, -1.5));
    testing::write_file(dir / "b.ham", identity_ham(0.7, -1.5));
    CHECK(hqnn::run_diag(hqnn::load_dataset(dir.path())) == "bond_length,ground_energy\n0.2,-1.5\n0.7,-1.5\n");
}

} // TEST_SUITE

TEST_SUITE("experiment") {

TEST_CASE("mean_std is the population statistic") {
    const auto m = hqnn::mean_std({1.0, 2.0, 3.0, 4.0});
    CHECK(m.mean == 2.5);
    CHECK(m.std == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
    CHECK(hqnn::mean_std({}).std == 0.0);
}

TEST_CASE("results.csv layout") {
    const std::vector<hqnn::ResultRow> rows{{0.2, hqnn::Split::Train, -1.25, -1.5, 0.25, 3},
                                            {0.4, hqnn::Split::Test, -1.0, -1.1, 0.1, 3}};
    CHECK(hqnn::format_results_csv(rows) ==
          "bond_length,split,energy_predicted,energy_exact,abs_error,seed\n"
          "0.2,train,-1.25,-1.5,0.25,3\n0.4,test,-1,-1.1,0.1,3\n");
}

TEST_CASE("identity dataset: zero error everywhere") {
    TempDir dir("ident");
    for (double a : {0.2, 0.4, 0.6}) testing::write_file(dir / ("h" + hqnn::text::format_double(a) + ".ham"), identity_ham(a, -a));
    ExperimentConfig c;
    c.dataset_dir = dir.path();
    c.train_bond_lengths = {0.2, 0.6};
    c.test_bond_lengths = {0.4};
    c.seeds = {0, 5};
    c.output_dir = dir / "out";
    const auto run = hqnn::run_curve(c);
    REQUIRE(run.rows.size() == 6);
    for (const auto& r : run.rows) CHECK(r.abs_error <= 1e-12);
    CHECK(run.rows[1].split == hqnn::Split::Test);
    CHECK(run.rows[1].bond_length == 0.4);
    CHECK(run.rows[3].seed == 5);
    CHECK(std::filesystem::exists(dir / "out/results.csv"));
    const auto manifest = nlohmann::json::parse(testing::read_file(dir / "out/manifest.json"));
    CHECK(manifest["timestamp"] == "unspecified");
    CHECK(manifest["seeds"].size() == 2);
    CHECK(manifest["train_error_sum"]["mean"].get<double>() <= 1e-12);
}

TEST_CASE("curve on a synthetic chain: invariants, arithmetic and reproducibility") {
    TempDir dir("curve");
    hqnn::gen_synthetic(dir / "data", 2, {0.5, 1.0, 1.5});
    auto c = small_config(dir / "data", dir / "out");
    c.timestamp = "fixed";
    const auto run = hqnn::run_curve(c);
    REQUIRE(run.rows.size() == 6);

    for (const auto& s : run.seeds) {
        double train = 0.0, test = 0.0;
        for (const auto& r : run.rows) {
            if (r.seed != s.seed) continue;
            CHECK(r.energy_predicted >= r.energy_exact - 1e-9);
            CHECK(r.abs_error == std::abs(r.energy_predicted - r.energy_exact));
            (r.split == hqnn::Split::Train ? train : test) += r.abs_error;
        }
        CHECK(s.train_error_sum == train);
        CHECK(s.test_error_sum == test);
    }

    const auto csv = testing::read_file(dir / "out/results.csv");
    const auto rows = lines(csv);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == "bond_length,split,energy_predicted,energy_exact,abs_error,seed");

    const auto manifest = nlohmann::json::parse(testing::read_file(dir / "out/manifest.json"));
    CHECK(manifest["software"]["name"] == "hqnn");
    CHECK(manifest["software"]["version"] == hqnn::software_version());
    CHECK(manifest["timestamp"] == "fixed");
    CHECK(manifest["variant"] == "with");
    CHECK(manifest["config"]["seeds"].size() == 2);
    CHECK(manifest["seeds"][1]["seed"] == 1);
    const double m = (run.seeds[0].test_error_sum + run.seeds[1].test_error_sum) / 2;
    CHECK(manifest["test_error_sum"]["mean"].get<double>() == doctest::Approx(m).epsilon(1e-15));

    const std::string manifest_text = testing::read_file(dir / "out/manifest.json");
    hqnn::run_curve(c);
    CHECK(testing::read_file(dir / "out/results.csv") == csv);
    CHECK(testing::read_file(dir / "out/manifest.json") == manifest_text);
}

TEST_CASE("4-qubit synthetic family, 5 train + 5 test points, one seed") {
    TempDir dir("family");
    const std::vector<double> train{0.2, 0.6, 1.0, 1.4, 1.8};
    const std::vector<double> test{0.4, 0.8, 1.2, 1.6, 2.0};
    std::vector<double> all = train;
    all.insert(all.end(), test.begin(), test.end());
    hqnn::gen_synthetic(dir / "data", 4, all);

    ExperimentConfig c;
    c.dataset_dir = dir / "data";
    c.train_bond_lengths = train;
    c.test_bond_lengths = test;
    c.output_dir = dir / "out";
    const auto run = hqnn::run_curve(c);
    CHECK(lines(testing::read_file(dir / "out/results.csv")).size() == 11);
    for (const auto& r : run.rows) {
        CHECK(r.energy_exact == doctest::Approx(hqnn::ground_energy_lanczos(hqnn::tfim_hamiltonian(4, r.bond_length)))
                                    .epsilon(1e-10));
        CHECK(r.energy_predicted >= r.energy_exact - 1e-9);
    }
}

TEST_CASE("exact curve of the synthetic family is monotone and matches Lanczos") {
    TempDir dir("monotone");
    std::vector<double> bonds;
    for (int i = 1; i <= 10; ++i) bonds.push_back(0.2 * i);
    hqnn::gen_synthetic(dir.path(), 4, bonds);
    const auto csv = lines(hqnn::run_diag(hqnn::load_dataset(dir.path())));
    REQUIRE(csv.size() == 11);
    double previous = INFINITY;
    for (std::size_t i = 1; i < csv.size(); ++i) {
        const auto fields = hqnn::text::split(csv[i], ",");
        const double a = *hqnn::text::parse_double(fields[0]);
        const double e = *hqnn::text::parse_double(fields[1]);
        CHECK(e < previous);
        CHECK(std::abs(e - hqnn::ground_energy_lanczos(hqnn::tfim_hamiltonian(4, a))) <= 1e-10);
        previous = e;
    }
}

TEST_CASE("curve and compare refuse the wrong variant counts") {
    TempDir dir("variants");
    hqnn::gen_synthetic(dir / "data", 2, {0.5, 1.0, 1.5});
    auto c = small_config(dir / "data", dir / "out");
    CHECK_THROWS_AS(hqnn::run_compare(c), hqnn::ConfigError);
    c.variants = {Variant::WithIntermediateMeasurements, Variant::WithoutIntermediateMeasurements};
    CHECK_THROWS_AS(hqnn::run_curve(c), hqnn::ConfigError);
    c.seeds = {0};
    CHECK_THROWS_AS(hqnn::run_compare(c), hqnn::ConfigError);
    CHECK_FALSE(std::filesystem::exists(dir / "out"));
}

TEST_CASE("compare writes per-variant results and the ablation table") {
    TempDir dir("compare");
    hqnn::gen_synthetic(dir / "data", 2, {0.5, 1.0, 1.5});
    auto c = small_config(dir / "data", dir / "out");
    c.variants = {Variant::WithoutIntermediateMeasurements, Variant::WithIntermediateMeasurements};
    const auto table = hqnn::run_compare(c);
    REQUIRE(table.runs.size() == 2);
    CHECK(table.runs[0].variant == Variant::WithIntermediateMeasurements);
    for (const char* f : {"results_with.csv", "results_without.csv", "manifest_with.json",
                          "manifest_without.json", "ablation.csv", "ablation.txt"}) {
        CHECK(std::filesystem::exists(dir / "out" / f));
    }
    const auto txt = lines(testing::read_file(dir / "out/ablation.txt"));
    REQUIRE(txt.size() == 3);
    CHECK(txt[1].find("With intermediate measurements (tfim2)") == 0);
    CHECK(txt[2].find("Without intermediate measurements (tfim2)") == 0);
    CHECK(txt[1].find("+/-") != std::string::npos);

    const auto csv = lines(testing::read_file(dir / "out/ablation.csv"));
    REQUIRE(csv.size() == 3);
    CHECK(csv[1].rfind("with,tfim2,", 0) == 0);
}

TEST_CASE("train writes the model parameters") {
    TempDir dir("train");
    hqnn::gen_synthetic(dir / "data", 2, {0.5, 1.0, 1.5});
    auto c = small_config(dir / "data", dir / "out");
    const auto runs = hqnn::run_train(c);
    REQUIRE(runs.size() == 1);
    const auto models = nlohmann::json::parse(testing::read_file(dir / "out/models_with.json"));
    REQUIRE(models.size() == 2);
    CHECK(models[0]["parameters"].size() == 8);
    CHECK(models[1]["seed"] == 1);
    CHECK(models[0]["final_cost"].get<double>() == runs[0].seeds[0].model.final_cost);
}

} // TEST_SUITE
