#include "doctest.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "helpers.hpp"
#include "netslice/ml/agent.hpp"
#include "netslice/ml/flow.hpp"
#include "netslice/ml/forecaster.hpp"
#include "netslice/ml/knn.hpp"
#include "netslice/ml/series.hpp"
#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"

using namespace netslice;
using ml::FlowFeatureVector;
using ml::TrafficClass;

namespace {

// Reference nearest-neighbor vote written directly from the tie-break rules,
// sharing no code with the production scan.
TrafficClass brute_predict(const ml::KnnModel& model, const FlowFeatureVector& x) {
    const auto q = ml::normalize_features(model, x.features);
    struct Neighbor {
        double dist;
        std::size_t index;
    };
    std::vector<Neighbor> all;
    for (std::size_t i = 0; i < model.points.size(); ++i) {
        double d2 = 0.0;
        for (std::size_t f = 0; f < ml::kFlowFeatureCount; ++f) {
            const double diff = model.points[i][f] - q[f];
            d2 += diff * diff;
        }
        all.push_back({std::sqrt(d2), i});
    }
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.index < b.index;
    });
    all.resize(static_cast<std::size_t>(model.k));
    std::map<TrafficClass, std::pair<int, double>> votes;   // count, summed distance
    for (const auto& n : all) {
        auto& v = votes[model.labels[n.index]];
        v.first += 1;
        v.second += n.dist;
    }
    TrafficClass best = TrafficClass::Benign;
    bool have = false;
    std::pair<int, double> best_v{0, 0.0};
    for (TrafficClass c : ml::kAllTrafficClasses) {
        auto it = votes.find(c);
        if (it == votes.end()) continue;
        if (!have || it->second.first > best_v.first ||
            (it->second.first == best_v.first && it->second.second < best_v.second)) {
            best = c;
            best_v = it->second;
            have = true;
        }
    }
    return best;
}

FlowFeatureVector flow_at(std::initializer_list<double> vals, TrafficClass label) {
    FlowFeatureVector f;
    std::size_t i = 0;
    for (double v : vals) f.features[i++] = v;
    f.label = label;
    return f;
}

} // namespace

TEST_CASE("knn agrees with the brute-force oracle on 500 random queries") {
    const auto dataset = ml::synth_flow_dataset(7).flows;
    for (int k : {1, 3, 4, 7, 16}) {
        const auto model = ml::knn_train(dataset, k);
        util::Rng rng(99);
        for (int q = 0; q < 100; ++q) {
            FlowFeatureVector x;
            for (auto& v : x.features) v = rng.uniform(0.0, 1.0);
            CHECK(ml::knn_predict(model, x) == brute_predict(model, x));
        }
    }
}

TEST_CASE("knn tie cases on an integer lattice match the oracle") {
    // Equidistant neighbors force every tie-break rule to fire.
    std::vector<FlowFeatureVector> train;
    train.push_back(flow_at({0, 0}, TrafficClass::Benign));
    train.push_back(flow_at({2, 0}, TrafficClass::Syn));
    train.push_back(flow_at({0, 2}, TrafficClass::Syn));
    train.push_back(flow_at({2, 2}, TrafficClass::Benign));
    train.push_back(flow_at({1, 3}, TrafficClass::Tftp));
    for (int k = 1; k <= 5; ++k) {
        const auto model = ml::knn_train(train, k);
        for (double x : {0.0, 0.5, 1.0, 1.5, 2.0})
            for (double y : {0.0, 0.5, 1.0, 1.5, 2.0}) {
                FlowFeatureVector q;
                q.features[0] = x;
                q.features[1] = y;
                CHECK_MESSAGE(ml::knn_predict(model, q) == brute_predict(model, q),
                              "k=" << k << " at (" << x << "," << y << ")");
            }
    }
}

TEST_CASE("constant features normalize to one half") {
    std::vector<FlowFeatureVector> train;
    train.push_back(flow_at({1, 5}, TrafficClass::Benign));
    train.push_back(flow_at({2, 5}, TrafficClass::Syn));
    const auto model = ml::knn_train(train, 1);
    const auto norm = ml::normalize_features(model, train[0].features);
    CHECK(norm[0] == 0.0);
    CHECK(norm[1] == 0.5);
    FlowFeatureVector far;
    far.features[1] = 1000.0;
    CHECK(ml::normalize_features(model, far.features)[1] == 0.5);
}

TEST_CASE("train input validation") {
    CHECK_THROWS_AS(ml::knn_train({}, 1), Error);
    auto f = flow_at({1}, TrafficClass::Benign);
    CHECK_THROWS_AS(ml::knn_train({f}, 0), Error);
    CHECK_THROWS_AS(ml::knn_train({f}, 2), Error);
    auto unlabeled = f;
    unlabeled.label.reset();
    CHECK_THROWS_AS(ml::knn_train({unlabeled}, 1), Error);
}

TEST_CASE("dataset split is a seeded 80/20 partition") {
    const auto dataset = ml::synth_flow_dataset(3).flows;
    std::vector<FlowFeatureVector> train, test;
    ml::split_dataset(dataset, 5, train, test);
    CHECK(train.size() == dataset.size() * 8 / 10);
    CHECK(train.size() + test.size() == dataset.size());

    std::vector<FlowFeatureVector> train2, test2;
    ml::split_dataset(dataset, 5, train2, test2);
    CHECK(train == train2);
    CHECK(test == test2);
    ml::split_dataset(dataset, 6, train2, test2);
    CHECK(train != train2);

    auto all = dataset;
    auto recombined = train;
    recombined.insert(recombined.end(), test.begin(), test.end());
    auto key = [](const FlowFeatureVector& f) { return f.features; };
    std::sort(all.begin(), all.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    std::sort(recombined.begin(), recombined.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    CHECK(all == recombined);
}

TEST_CASE("synthetic nine-class dataset is learnable at small k") {
    const auto dataset = ml::synth_flow_dataset(42).flows;
    CHECK(dataset.size() == 444);
    std::vector<FlowFeatureVector> train, test;
    ml::split_dataset(dataset, 42, train, test);
    const auto model = ml::knn_train(train, 4);
    CHECK(ml::knn_accuracy(model, test) >= 0.90);
}

TEST_CASE("cross-validation aggregates match a recomputation from the run log") {
    const auto dataset = ml::synth_flow_dataset(11).flows;
    const auto cv = ml::cross_validate(dataset, 6, 3, 17);
    REQUIRE(cv.runs.size() == 6 * 3);
    std::map<int, std::pair<double, int>> agg;
    for (const auto& r : cv.runs) {
        std::vector<FlowFeatureVector> train, test;
        ml::split_dataset(dataset, r.seed, train, test);
        const auto model = ml::knn_train(train, r.k);
        CHECK(r.accuracy == doctest::Approx(ml::knn_accuracy(model, test)));
        auto& a = agg[r.k];
        a.first += r.accuracy;
        a.second += 1;
    }
    for (const auto& [k, a] : agg)
        CHECK(cv.mean_accuracy.at(k) == doctest::Approx(a.first / a.second));
    double best_acc = -1.0;
    int best_k = 0;
    for (const auto& [k, acc] : cv.mean_accuracy)
        if (acc > best_acc) {
            best_acc = acc;
            best_k = k;
        }
    CHECK(cv.best_k == best_k);
    const auto log = ml::format_cv_run_log(cv);
    CHECK(std::count(log.begin(), log.end(), '\n') == 1 + 18);
    CHECK(log.rfind("k,run,seed,accuracy\n", 0) == 0);
}

TEST_CASE("flow csv round-trips and projects flowmeter-style headers") {
    ml::FlowDataset ds;
    ds.flows.push_back(flow_at({1.5, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, TrafficClass::Syn));
    ds.flows.push_back(flow_at({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0.25}, TrafficClass::Benign));
    const auto text = ml::format_flow_csv(ds);
    const auto back = ml::parse_flow_csv(text, "m");
    CHECK(back.flows == ds.flows);

    const std::string flowmeter =
        "Flow Duration,Packets Fwd,Packets Bwd,Bytes Fwd,Bytes Bwd,Mean IAT,Std IAT,"
        "Mean Pkt Len,Std Pkt Len,SYN Count,Flows Per Src Window,Dst Port Entropy,Extra,Label\n"
        "1,2,3,4,5,6,7,8,9,10,11,12,999,DrDoS_DNS\n";
    const auto proj = ml::parse_flow_csv(flowmeter, "fm");
    REQUIRE(proj.flows.size() == 1);
    CHECK(proj.flows[0].features[0] == 1.0);
    CHECK(proj.flows[0].features[11] == 12.0);
    CHECK(proj.flows[0].label == TrafficClass::DosDns);

    try {
        ml::parse_flow_csv(text + "not,enough,columns\n", "m");
        FAIL("expected row error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find(":4") != std::string::npos);
    }
}

TEST_CASE("scaler round-trips and mse follows both formulas") {
    ml::SeriesScaler s = ml::fit_scaler({2.0, 8.0, 5.0});
    CHECK(s.min == 2.0);
    CHECK(s.max == 8.0);
    util::Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(2.0, 8.0);
        CHECK(s.denormalize(s.normalize(v)) == doctest::Approx(v).epsilon(1e-12));
    }
    const ml::SeriesScaler flat = ml::fit_scaler({4.0, 4.0});
    CHECK(flat.normalize(4.0) == 0.5);
    CHECK(flat.denormalize(0.5) == 4.0);

    const std::vector<double> p{1, 2, 3}, a{2, 2, 5};
    double manual = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) manual += (p[i] - a[i]) * (p[i] - a[i]);
    manual /= static_cast<double>(p.size());
    CHECK(ml::mse(p, a) == doctest::Approx(manual));
    CHECK(ml::mse(p, p) == 0.0);
    CHECK_THROWS_AS(ml::mse(p, {1.0}), Error);
    CHECK_THROWS_AS(ml::mse({}, {}), Error);
}

TEST_CASE("analytic gradient matches central finite differences") {
    // Two different generators stand in for the two target-domain series.
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        util::Rng rng(seed);
        ml::ForecasterConfig config;
        config.window = 6;
        config.hidden = 4;
        config.seed = seed + 10;
        auto model = ml::init_weights(config);
        std::vector<ml::TrainPair> batch;
        for (int s = 0; s < 5; ++s) {
            ml::TrainPair p;
            for (int i = 0; i < config.window; ++i)
                p.inputs.push_back(0.5 + 0.4 * std::sin(0.3 * (s + i) + (seed == 2 ? 1.0 : 0.0)) +
                                   0.02 * rng.normal());
            p.target = 0.5 + 0.4 * std::sin(0.3 * (s + config.window));
            batch.push_back(std::move(p));
        }
        const auto grad = ml::batch_gradient(model, batch);
        REQUIRE(grad.size() == model.values.size());
        const double eps = 1e-5;
        util::Rng pick(77);
        for (int c = 0; c < 20; ++c) {
            const auto i = pick.below(model.values.size());
            auto plus = model, minus = model;
            plus.values[i] += eps;
            minus.values[i] -= eps;
            const double fd =
                (ml::batch_loss(plus, batch) - ml::batch_loss(minus, batch)) / (2 * eps);
            const double denom = std::max({std::fabs(fd), std::fabs(grad[i]), 1e-8});
            CHECK_MESSAGE(std::fabs(fd - grad[i]) / denom < 1e-4,
                          "coordinate " << i << ": analytic " << grad[i] << " vs fd " << fd);
        }
    }
}

TEST_CASE("weight count and seeded init are stable") {
    CHECK(ml::weight_count(16) == 2 * 16 * 16 + 5 * 16 + 1);
    ml::ForecasterConfig config;
    config.hidden = 3;
    config.window = 4;
    const auto a = ml::init_weights(config);
    const auto b = ml::init_weights(config);
    CHECK(a == b);
    CHECK(a.values.size() == ml::weight_count(3));
    auto c = config;
    c.seed += 1;
    CHECK(ml::init_weights(c).values != a.values);
}

TEST_CASE("local training reduces loss and records one entry per epoch") {
    ml::SeriesWindow series;
    util::Rng rng(8);
    for (int i = 0; i < 120; ++i)
        series.values.push_back(50 + 20 * std::sin(i * 6.283185307179586 / 24.0) + rng.normal(0, 1));
    ml::ForecasterConfig config;
    config.window = 12;
    config.hidden = 6;
    config.epochs = 60;
    config.learning_rate = 0.05;
    const auto result = ml::train_forecaster_local(series, config);
    REQUIRE(result.loss_history.size() == 60);
    CHECK(result.loss_history.back() < result.loss_history.front());
    CHECK(result.scaler == ml::fit_scaler(series.values));

    ml::SeriesWindow tiny;
    tiny.values = {1, 2, 3};
    CHECK_THROWS_AS(ml::train_forecaster_local(tiny, config), Error);
}

TEST_CASE("continue_training descends from the given weights") {
    ml::SeriesWindow series;
    for (int i = 0; i < 80; ++i)
        series.values.push_back(10 + 3 * std::sin(i * 0.3));
    ml::ForecasterConfig config;
    config.window = 8;
    config.hidden = 4;
    const auto scaler = ml::fit_scaler(series.values);
    const auto pairs = ml::series_pairs(series, scaler, config.window);
    CHECK(pairs.size() == series.values.size() - config.window);
    const auto start = ml::init_weights(config);
    const auto r1 = ml::continue_training(start, scaler, pairs, 0.05, 10);
    CHECK(r1.loss_history.size() == 10);
    CHECK(r1.loss_history.front() == doctest::Approx(ml::batch_loss(start, pairs)));
    const auto r2 = ml::continue_training(r1.weights, scaler, pairs, 0.05, 10);
    CHECK(r2.loss_history.front() < r1.loss_history.front());
    CHECK_THROWS_AS(ml::continue_training(start, scaler, pairs, 0.05, 0), Error);
    CHECK_THROWS_AS(ml::continue_training(start, scaler, {}, 0.05, 5), Error);
}

TEST_CASE("federated averaging obeys its algebra exactly") {
    ml::ForecasterConfig config;
    config.hidden = 3;
    config.window = 4;
    auto a = ml::init_weights(config);
    config.seed = 9;
    auto b = ml::init_weights(config);
    config.seed = 123;
    auto c = ml::init_weights(config);

    CHECK(ml::aggregate_weights({a}) == a);                       // identity
    CHECK(ml::aggregate_weights({a, a}) == a);                    // idempotence
    CHECK(ml::aggregate_weights({a, a, a, a}) == a);
    const auto abc = ml::aggregate_weights({a, b, c});
    CHECK(ml::aggregate_weights({c, a, b}) == abc);               // permutation, exact
    CHECK(ml::aggregate_weights({b, c, a}) == abc);

    const auto ab = ml::aggregate_weights({a, b});                // two-model mean
    for (std::size_t i = 0; i < ab.values.size(); ++i)
        CHECK(ab.values[i] == (a.values[i] + b.values[i]) / 2);

    auto a2 = a, b2 = b;                                          // linearity, exact scaling
    for (auto& v : a2.values) v *= 2.0;
    for (auto& v : b2.values) v *= 2.0;
    const auto scaled = ml::aggregate_weights({a2, b2});
    for (std::size_t i = 0; i < scaled.values.size(); ++i)
        CHECK(scaled.values[i] == 2.0 * ab.values[i]);

    CHECK_THROWS_AS(ml::aggregate_weights({}), Error);
    auto wrong = a;
    wrong.values.pop_back();
    CHECK_THROWS_AS(ml::aggregate_weights({a, wrong}), Error);
}

TEST_CASE("model files round-trip bit-faithfully") {
    testutil::TempDir tmp("model");
    ml::ForecasterConfig config;
    config.window = 5;
    config.hidden = 4;
    config.seed = 77;
    auto model = ml::init_weights(config);
    util::Rng rng(4);
    for (auto& v : model.values) v = rng.uniform(-2, 2);
    const auto path = tmp.sub("m.txt");
    ml::save_model(model, path);
    CHECK(ml::load_model(path) == model);
    CHECK(ml::parse_model(ml::format_model(model), "mem") == model);
    CHECK_THROWS_AS(ml::parse_model("garbage\n1\n", "mem"), Error);
}

TEST_CASE("forecast extends the context autoregressively") {
    ml::SeriesWindow series;
    for (int i = 0; i < 60; ++i) series.values.push_back(5 + std::sin(i * 0.5));
    ml::ForecasterConfig config;
    config.window = 10;
    config.hidden = 4;
    config.epochs = 40;
    const auto result = ml::train_forecaster_local(series, config);
    const auto fc = ml::forecast(result.weights, result.scaler, series, 7);
    CHECK(fc.values.size() == 7);
    CHECK(fc.start_index == series.start_index + series.values.size());
    const auto empty = ml::forecast(result.weights, result.scaler, series, 0);
    CHECK(empty.values.empty());
    ml::SeriesWindow too_short;
    too_short.values = {1, 2};
    CHECK_THROWS_AS(ml::forecast(result.weights, result.scaler, too_short, 3), Error);
}

TEST_CASE("energy csv round-trips") {
    ml::SeriesWindow s;
    s.start_index = 12;
    s.values = {1.5, 2.25, 0.0};
    const auto text = ml::format_energy_csv(s);
    CHECK(ml::parse_energy_csv(text, "e") == s);
    CHECK_THROWS_AS(ml::parse_energy_csv("kwh\n1\n", "e"), Error);
}

TEST_CASE("agent predictions never mix two models during a swap") {
    // Two stub models whose outputs are distinguishable on every query.
    std::vector<FlowFeatureVector> benign_only, syn_only;
    benign_only.push_back(flow_at({0, 0}, TrafficClass::Benign));
    syn_only.push_back(flow_at({0, 0}, TrafficClass::Syn));
    ml::MlAgent agent("stress");
    agent.update_model(ml::knn_train(benign_only, 1));

    std::atomic<bool> stop{false};
    std::atomic<int> mixed{0};
    std::vector<std::thread> readers;
    for (int t = 0; t < 4; ++t)
        readers.emplace_back([&] {
            FlowFeatureVector q;
            while (!stop.load()) {
                const auto out = agent.predict(q);
                const auto cls = std::get<TrafficClass>(out);
                if (cls != TrafficClass::Benign && cls != TrafficClass::Syn) mixed.fetch_add(1);
            }
        });
    for (int i = 0; i < 500; ++i)
        agent.update_model(ml::knn_train(i % 2 ? benign_only : syn_only, 1));
    stop.store(true);
    for (auto& th : readers) th.join();
    CHECK(mixed.load() == 0);

    agent.remove_model();
    CHECK_FALSE(agent.has_model());
    FlowFeatureVector q;
    CHECK_THROWS_AS(agent.predict(q), ml::ModelUnavailable);
}
