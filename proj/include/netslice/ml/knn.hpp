#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "netslice/ml/flow.hpp"

namespace netslice::ml {

struct KnnModel {
    int k = 1;
    std::vector<std::array<double, kFlowFeatureCount>> points;   // normalized
    std::vector<TrafficClass> labels;
    std::array<double, kFlowFeatureCount> feat_min{};
    std::array<double, kFlowFeatureCount> feat_max{};
};

// Min-max normalization into [0,1]; a constant training feature maps to 0.5
// for every point and every query, so it carries no distance information.
std::array<double, kFlowFeatureCount> normalize_features(
    const KnnModel& model, const std::array<double, kFlowFeatureCount>& raw);

// Requires every flow labeled, dataset non-empty, 1 <= k <= |dataset|.
KnnModel knn_train(const std::vector<FlowFeatureVector>& dataset, int k);

// Deterministic k-nearest vote. Neighbor set: k smallest by (Euclidean
// distance in normalized space, then training index). Vote ties: larger
// count wins, then smaller summed distance over the class's neighbors,
// then class enumeration order.
TrafficClass knn_predict(const KnnModel& model, const FlowFeatureVector& x);

double knn_accuracy(const KnnModel& model, const std::vector<FlowFeatureVector>& test);

// Seeded shuffle; first floor(0.8 n) flows train, the rest test.
void split_dataset(const std::vector<FlowFeatureVector>& dataset, std::uint64_t seed,
                   std::vector<FlowFeatureVector>& train,
                   std::vector<FlowFeatureVector>& test);

struct CrossValidationRun {
    int k = 0;
    int run = 0;
    std::uint64_t seed = 0;
    double accuracy = 0.0;
};

struct CrossValidationResult {
    std::map<int, double> mean_accuracy;   // k -> mean over runs
    std::vector<CrossValidationRun> runs;
    int best_k = 0;   // smallest k attaining the maximum mean accuracy
};

// `repeats` seeded 80/20 re-splits, shared across every k in [1, k_max].
CrossValidationResult cross_validate(const std::vector<FlowFeatureVector>& dataset,
                                     int k_max, int repeats, std::uint64_t seed);

// CSV `k,run,seed,accuracy`, one row per (k, split) evaluation.
std::string format_cv_run_log(const CrossValidationResult& result);

} // namespace netslice::ml
