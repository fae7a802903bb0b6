#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netslice/ml/series.hpp"

namespace netslice::ml {

struct ForecasterConfig {
    int window = 30;        // input steps per sample
    int hidden = 16;        // recurrent state width
    double learning_rate = 0.05;
    int epochs = 200;
    std::uint64_t seed = 1;
    bool operator==(const ForecasterConfig&) const = default;
};

// Single-layer gated recurrent cell over a scalar series, one update gate
// and one candidate, read out linearly from the final hidden state:
//   z_t = sigmoid(Wz x_t + Uz h_{t-1} + bz)
//   c_t = tanh  (Wc x_t + Uc h_{t-1} + bc)
//   h_t = (1 - z_t) .* h_{t-1} + z_t .* c_t
//   y   = V . h_w + by
// Flat canonical weight order: Wz | Uz row-major | bz | Wc | Uc | bc | V | by,
// total 2h^2 + 5h + 1 values.
struct ModelWeights {
    int window = 0;
    int hidden = 0;
    double learning_rate = 0.0;
    int epochs = 0;
    std::uint64_t seed = 0;
    std::vector<double> values;
    bool operator==(const ModelWeights&) const = default;
};

std::size_t weight_count(int hidden);
ModelWeights init_weights(const ForecasterConfig& config);

// One supervised sample: `window` consecutive normalized values -> the next.
struct TrainPair {
    std::vector<double> inputs;
    double target = 0.0;
};

std::vector<TrainPair> make_training_pairs(const std::vector<double>& normalized,
                                           int window);

// Readout for one window, in normalized space.
double predict_one(const ModelWeights& model, const std::vector<double>& window);

// Mean over the batch of (prediction - target)^2.
double batch_loss(const ModelWeights& model, const std::vector<TrainPair>& batch);

// Analytic gradient of batch_loss via backpropagation through time, in the
// same canonical order as ModelWeights::values.
std::vector<double> batch_gradient(const ModelWeights& model,
                                   const std::vector<TrainPair>& batch);

struct TrainResult {
    ModelWeights weights;
    SeriesScaler scaler;
    std::vector<double> loss_history;   // loss at the start of each epoch
};

// Min-max normalizes the series, builds sliding-window pairs, runs full-batch
// gradient descent for `epochs` steps. Throws data_error on a series shorter
// than window+1 or on any non-finite loss.
TrainResult train_forecaster_local(const SeriesWindow& series,
                                   const ForecasterConfig& config);

// Same descent loop but starting from externally supplied weights; this is
// the per-round local step of federated training.
TrainResult continue_training(ModelWeights start, const SeriesScaler& scaler,
                              const std::vector<TrainPair>& pairs, double learning_rate,
                              int epochs);

// Normalizes with the given scaler and windows the result.
std::vector<TrainPair> series_pairs(const SeriesWindow& series, const SeriesScaler& scaler,
                                    int window);

// Element-wise mean. Per-coordinate summation happens in sorted value order,
// so the result is exactly permutation-invariant. Throws usage_error on an
// empty list or mismatched architectures.
ModelWeights aggregate_weights(const std::vector<ModelWeights>& models);

// Iterated one-step forecasting: each normalized prediction is appended to
// the context before the next step; outputs are denormalized. The context is
// raw kWh and must hold at least `window` values.
SeriesWindow forecast(const ModelWeights& model, const SeriesScaler& scaler,
                      const SeriesWindow& context, int horizon);

// Header `forecaster w=.. h=.. lr=.. epochs=.. seed=..`, then one weight per
// line, 17 significant digits (bit-faithful round trip).
std::string format_model(const ModelWeights& model);
ModelWeights parse_model(const std::string& text, const std::string& origin);
void save_model(const ModelWeights& model, const std::string& path);
ModelWeights load_model(const std::string& path);

} // namespace netslice::ml
