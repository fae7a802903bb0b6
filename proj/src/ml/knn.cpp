#include "netslice/ml/knn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netslice/kernels/kernels.hpp"
#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"
#include "netslice/util/text.hpp"

namespace netslice::ml {

std::array<double, kFlowFeatureCount> normalize_features(
    const KnnModel& model, const std::array<double, kFlowFeatureCount>& raw) {
    std::array<double, kFlowFeatureCount> out{};
    for (std::size_t f = 0; f < kFlowFeatureCount; ++f) {
        const double lo = model.feat_min[f];
        const double hi = model.feat_max[f];
        out[f] = hi > lo ? (raw[f] - lo) / (hi - lo) : 0.5;
    }
    return out;
}

KnnModel knn_train(const std::vector<FlowFeatureVector>& dataset, int k) {
    if (dataset.empty()) throw data_error("knn: empty dataset");
    if (k < 1) throw usage_error("knn: k must be >= 1");
    if (static_cast<std::size_t>(k) > dataset.size())
        throw usage_error("knn: k=" + std::to_string(k) + " exceeds dataset size " +
                          std::to_string(dataset.size()));
    KnnModel model;
    model.k = k;
    for (std::size_t f = 0; f < kFlowFeatureCount; ++f) {
        model.feat_min[f] = dataset[0].features[f];
        model.feat_max[f] = dataset[0].features[f];
    }
    for (const auto& v : dataset) {
        if (!v.label) throw data_error("knn: training flow without a label");
        for (std::size_t f = 0; f < kFlowFeatureCount; ++f) {
            model.feat_min[f] = std::min(model.feat_min[f], v.features[f]);
            model.feat_max[f] = std::max(model.feat_max[f], v.features[f]);
        }
    }
    for (const auto& v : dataset) {
        model.points.push_back(normalize_features(model, v.features));
        model.labels.push_back(*v.label);
    }
    return model;
}

namespace {

struct Neighbor {
    double distance;
    std::size_t index;
};

// Full distance list sorted by (distance, index). Shared by predict and the
// cross-validation sweep so one sort serves every k.
std::vector<Neighbor> sorted_neighbors(const KnnModel& model,
                                       const std::array<double, kFlowFeatureCount>& q) {
    std::vector<Neighbor> all(model.points.size());
    for (std::size_t i = 0; i < model.points.size(); ++i) {
        all[i].distance =
            std::sqrt(kernels::sq_l2(q.data(), model.points[i].data(), kFlowFeatureCount));
        all[i].index = i;
    }
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.index < b.index;
    });
    return all;
}

TrafficClass vote(const KnnModel& model, const std::vector<Neighbor>& sorted, int k) {
    std::array<int, kTrafficClassCount> count{};
    std::array<double, kTrafficClassCount> summed{};
    for (int i = 0; i < k; ++i) {
        const auto cls = static_cast<std::size_t>(model.labels[sorted[static_cast<std::size_t>(i)].index]);
        count[cls] += 1;
        summed[cls] += sorted[static_cast<std::size_t>(i)].distance;
    }
    std::size_t best = 0;
    bool have = false;
    for (std::size_t c = 0; c < kTrafficClassCount; ++c) {
        if (count[c] == 0) continue;
        if (!have || count[c] > count[best] ||
            (count[c] == count[best] && summed[c] < summed[best])) {
            best = c;
            have = true;
        }
    }
    return kAllTrafficClasses[best];
}

} // namespace

TrafficClass knn_predict(const KnnModel& model, const FlowFeatureVector& x) {
    if (model.points.empty()) throw data_error("knn: model has no stored points");
    const auto q = normalize_features(model, x.features);
    return vote(model, sorted_neighbors(model, q), model.k);
}

double knn_accuracy(const KnnModel& model, const std::vector<FlowFeatureVector>& test) {
    if (test.empty()) throw data_error("knn: empty test set");
    std::size_t correct = 0;
    for (const auto& v : test) {
        if (!v.label) throw data_error("knn: test flow without a label");
        if (knn_predict(model, v) == *v.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

void split_dataset(const std::vector<FlowFeatureVector>& dataset, std::uint64_t seed,
                   std::vector<FlowFeatureVector>& train,
                   std::vector<FlowFeatureVector>& test) {
    std::vector<std::size_t> idx(dataset.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    util::Rng rng(seed);
    rng.shuffle(idx);
    const std::size_t train_n = dataset.size() * 4 / 5;
    train.clear();
    test.clear();
    for (std::size_t i = 0; i < idx.size(); ++i)
        (i < train_n ? train : test).push_back(dataset[idx[i]]);
}

CrossValidationResult cross_validate(const std::vector<FlowFeatureVector>& dataset,
                                     int k_max, int repeats, std::uint64_t seed) {
    if (k_max < 1 || repeats < 1) throw usage_error("cross_validate: k_max and repeats must be >= 1");
    const std::size_t train_n = dataset.size() * 4 / 5;
    if (train_n < static_cast<std::size_t>(k_max) || train_n == dataset.size())
        throw data_error("cross_validate: dataset too small for the split");

    CrossValidationResult result;
    std::vector<std::vector<double>> acc(static_cast<std::size_t>(k_max),
                                         std::vector<double>(static_cast<std::size_t>(repeats)));
    for (int run = 0; run < repeats; ++run) {
        const std::uint64_t run_seed = util::splitmix64(seed + static_cast<std::uint64_t>(run));
        std::vector<FlowFeatureVector> train, test;
        split_dataset(dataset, run_seed, train, test);
        KnnModel model = knn_train(train, 1);
        std::vector<std::size_t> correct(static_cast<std::size_t>(k_max), 0);
        for (const auto& v : test) {
            const auto sorted = sorted_neighbors(model, normalize_features(model, v.features));
            for (int k = 1; k <= k_max; ++k)
                if (vote(model, sorted, k) == *v.label)
                    ++correct[static_cast<std::size_t>(k - 1)];
        }
        for (int k = 1; k <= k_max; ++k)
            acc[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(run)] =
                static_cast<double>(correct[static_cast<std::size_t>(k - 1)]) /
                static_cast<double>(test.size());
    }

    double best_acc = -1.0;
    for (int k = 1; k <= k_max; ++k) {
        double mean = 0.0;
        for (int run = 0; run < repeats; ++run) {
            const double a = acc[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(run)];
            result.runs.push_back({k, run,
                                   util::splitmix64(seed + static_cast<std::uint64_t>(run)), a});
            mean += a;
        }
        mean /= static_cast<double>(repeats);
        result.mean_accuracy[k] = mean;
        if (mean > best_acc) {
            best_acc = mean;
            result.best_k = k;
        }
    }
    return result;
}

std::string format_cv_run_log(const CrossValidationResult& result) {
    std::ostringstream out;
    out << "k,run,seed,accuracy\n";
    for (const auto& r : result.runs)
        out << r.k << ',' << r.run << ',' << r.seed << ',' << util::fmt_double(r.accuracy)
            << '\n';
    return out.str();
}

} // namespace netslice::ml
