#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netslice/ml/forecaster.hpp"
#include "netslice/ml/knn.hpp"
#include "netslice/runtime/runtime.hpp"

namespace netslice::scenario {

struct DdosOptions {
    std::optional<std::string> dataset_file;   // unset = synthetic
    int k_max = 30;
    int repeats = 3;
};

struct ClassCounts {
    std::int64_t passed = 0;
    std::int64_t dropped = 0;
    bool operator==(const ClassCounts&) const = default;
};

struct DdosReport {
    ml::CrossValidationResult cv;
    std::map<ml::TrafficClass, ClassCounts> gate_counts;
    std::size_t dataset_size = 0;
    std::string summary;   // human-readable report body
};

// Accuracy-vs-k sweep, then loads the best-k model into the ingress agent and
// replays the labeled dataset through ddos_gate, counting verdicts per class.
DdosReport run_ddos_experiment(runtime::Runtime& rt, const DdosOptions& options = {});

// Writes accuracy_vs_k.csv, cv_runs.csv and summary.txt under out_dir.
void write_ddos_report(const DdosReport& report, const std::string& out_dir);

struct EnergyOptions {
    int rounds = 5;
    int horizon = 30;
    int epochs_per_round = 40;
};

struct EnergyDomainResult {
    std::string domain_id;
    std::vector<double> loss_history;        // concatenated across rounds
    double test_mse_normalized = 0.0;        // final global model
    double test_mse_kwh = 0.0;
    ml::SeriesWindow forecast;               // `horizon` steps past training data
    std::vector<double> actual;              // same steps from the held-out tail
};

struct EnergyReport {
    std::vector<double> round_mse_normalized;   // global model after each round
    std::vector<double> round_mse_kwh;
    std::vector<EnergyDomainResult> domains;
    std::size_t train_len = 0;   // per-domain 80% boundary
    std::string summary;
};

// Federated training over the simulated domains' energy traces: every round
// each domain descends locally from the shared weights, the results are
// averaged, and the global model is scored on the held-out 20% tails.
EnergyReport run_energy_experiment(runtime::Runtime& rt, const EnergyOptions& options = {});

// Writes round_mse.csv, per-domain loss/forecast CSVs and summary.txt.
void write_energy_report(const EnergyReport& report, const std::string& out_dir);

} // namespace netslice::scenario
