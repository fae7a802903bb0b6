#include "netslice/ml/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "netslice/kernels/kernels.hpp"
#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"
#include "netslice/util/text.hpp"

namespace netslice::ml {

namespace {

// Slices of the flat canonical weight vector.
struct Layout {
    std::size_t h;
    std::size_t wz, uz, bz, wc, uc, bc, v, by;

    explicit Layout(int hidden) {
        h = static_cast<std::size_t>(hidden);
        wz = 0;
        uz = wz + h;
        bz = uz + h * h;
        wc = bz + h;
        uc = wc + h;
        bc = uc + h * h;
        v = bc + h;
        by = v + h;
    }
    std::size_t total() const { return by + 1; }
};

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct ForwardTrace {
    // hs[t] is h_t, hs[0] the zero initial state; zs/cs are per step t-1.
    std::vector<std::vector<double>> hs, zs, cs;
    double y = 0.0;
};

ForwardTrace forward_one(const ModelWeights& m, const Layout& L,
                         const std::vector<double>& inputs, bool keep_trace) {
    const double* W = m.values.data();
    const std::size_t h = L.h;
    ForwardTrace tr;
    std::vector<double> hprev(h, 0.0), hnext(h), z(h), c(h);
    if (keep_trace) tr.hs.push_back(hprev);
    for (double x : inputs) {
        for (std::size_t i = 0; i < h; ++i) {
            const double az = W[L.wz + i] * x +
                              kernels::dot(W + L.uz + i * h, hprev.data(), h) +
                              W[L.bz + i];
            const double ac = W[L.wc + i] * x +
                              kernels::dot(W + L.uc + i * h, hprev.data(), h) +
                              W[L.bc + i];
            z[i] = sigmoid(az);
            c[i] = std::tanh(ac);
            hnext[i] = (1.0 - z[i]) * hprev[i] + z[i] * c[i];
        }
        hprev = hnext;
        if (keep_trace) {
            tr.hs.push_back(hprev);
            tr.zs.push_back(z);
            tr.cs.push_back(c);
        }
    }
    tr.y = kernels::dot(W + L.v, hprev.data(), h) + W[L.by];
    if (!keep_trace) tr.hs.push_back(std::move(hprev));
    return tr;
}

// Shared forward+backward; loss is the batch mean of squared errors and the
// returned gradient is d(loss)/d(weights) in canonical order.
std::vector<double> backprop(const ModelWeights& m, const std::vector<TrainPair>& batch,
                             double* loss_out) {
    const Layout L(m.hidden);
    if (m.values.size() != L.total())
        throw internal_error("forecaster: weight vector length mismatch");
    if (batch.empty()) throw usage_error("forecaster: empty batch");
    const std::size_t h = L.h;
    const double* W = m.values.data();
    std::vector<double> grad(L.total(), 0.0);
    double loss = 0.0;
    const double inv_n = 1.0 / static_cast<double>(batch.size());

    std::vector<double> dh(h), dh_prev(h), da(h), dg(h);
    for (const auto& sample : batch) {
        if (sample.inputs.size() != static_cast<std::size_t>(m.window))
            throw usage_error("forecaster: sample window length mismatch");
        ForwardTrace tr = forward_one(m, L, sample.inputs, true);
        const double err = tr.y - sample.target;
        loss += err * err * inv_n;
        const double dy = 2.0 * err * inv_n;

        // y = V.h_w + by
        kernels::axpy(dy, tr.hs.back().data(), grad.data() + L.v, h);
        grad[L.by] += dy;
        for (std::size_t i = 0; i < h; ++i) dh[i] = dy * W[L.v + i];

        for (std::size_t t = sample.inputs.size(); t-- > 0;) {
            const auto& hprev = tr.hs[t];
            const auto& z = tr.zs[t];
            const auto& c = tr.cs[t];
            const double x = sample.inputs[t];
            for (std::size_t i = 0; i < h; ++i) {
                const double dz = dh[i] * (c[i] - hprev[i]);
                const double dc = dh[i] * z[i];
                da[i] = dz * z[i] * (1.0 - z[i]);
                dg[i] = dc * (1.0 - c[i] * c[i]);
                dh_prev[i] = dh[i] * (1.0 - z[i]);
            }
            for (std::size_t i = 0; i < h; ++i) {
                grad[L.wz + i] += da[i] * x;
                grad[L.bz + i] += da[i];
                grad[L.wc + i] += dg[i] * x;
                grad[L.bc + i] += dg[i];
                kernels::axpy(da[i], hprev.data(), grad.data() + L.uz + i * h, h);
                kernels::axpy(dg[i], hprev.data(), grad.data() + L.uc + i * h, h);
                kernels::axpy(da[i], W + L.uz + i * h, dh_prev.data(), h);
                kernels::axpy(dg[i], W + L.uc + i * h, dh_prev.data(), h);
            }
            dh = dh_prev;
        }
    }
    if (loss_out) *loss_out = loss;
    return grad;
}

} // namespace

std::size_t weight_count(int hidden) {
    const auto h = static_cast<std::size_t>(hidden);
    return 2 * h * h + 5 * h + 1;
}

ModelWeights init_weights(const ForecasterConfig& config) {
    if (config.window < 1 || config.hidden < 1)
        throw usage_error("forecaster: window and hidden size must be >= 1");
    ModelWeights m;
    m.window = config.window;
    m.hidden = config.hidden;
    m.learning_rate = config.learning_rate;
    m.epochs = config.epochs;
    m.seed = config.seed;
    const Layout L(config.hidden);
    m.values.assign(L.total(), 0.0);
    util::Rng rng(config.seed);
    // input, recurrent and readout weights small and random, biases zero
    for (std::size_t i = L.wz; i < L.bz; ++i) m.values[i] = rng.uniform(-0.2, 0.2);
    for (std::size_t i = L.wc; i < L.bc; ++i) m.values[i] = rng.uniform(-0.2, 0.2);
    for (std::size_t i = L.v; i < L.by; ++i) m.values[i] = rng.uniform(-0.2, 0.2);
    return m;
}

std::vector<TrainPair> make_training_pairs(const std::vector<double>& normalized,
                                           int window) {
    if (window < 1) throw usage_error("forecaster: window must be >= 1");
    std::vector<TrainPair> out;
    const auto w = static_cast<std::size_t>(window);
    if (normalized.size() <= w) return out;
    for (std::size_t i = 0; i + w < normalized.size(); ++i) {
        TrainPair p;
        p.inputs.assign(normalized.begin() + static_cast<std::ptrdiff_t>(i),
                        normalized.begin() + static_cast<std::ptrdiff_t>(i + w));
        p.target = normalized[i + w];
        out.push_back(std::move(p));
    }
    return out;
}

double predict_one(const ModelWeights& model, const std::vector<double>& window) {
    if (window.size() != static_cast<std::size_t>(model.window))
        throw usage_error("forecaster: window length mismatch");
    const Layout L(model.hidden);
    if (model.values.size() != L.total())
        throw internal_error("forecaster: weight vector length mismatch");
    return forward_one(model, L, window, false).y;
}

double batch_loss(const ModelWeights& model, const std::vector<TrainPair>& batch) {
    double loss = 0.0;
    backprop(model, batch, &loss);
    return loss;
}

std::vector<double> batch_gradient(const ModelWeights& model,
                                   const std::vector<TrainPair>& batch) {
    return backprop(model, batch, nullptr);
}

TrainResult continue_training(ModelWeights start, const SeriesScaler& scaler,
                              const std::vector<TrainPair>& pairs, double learning_rate,
                              int epochs) {
    if (epochs < 1 || !(learning_rate > 0.0))
        throw usage_error("forecaster: epochs must be >= 1 and learning rate > 0");
    if (pairs.empty()) throw usage_error("forecaster: empty training batch");
    if (start.values.size() != weight_count(start.hidden))
        throw usage_error("forecaster: weight vector does not match architecture");

    TrainResult result;
    result.scaler = scaler;
    result.weights = std::move(start);
    for (int epoch = 0; epoch < epochs; ++epoch) {
        double loss = 0.0;
        const auto grad = backprop(result.weights, pairs, &loss);
        if (!std::isfinite(loss))
            throw data_error("forecaster: loss diverged at epoch " + std::to_string(epoch));
        result.loss_history.push_back(loss);
        kernels::axpy(-learning_rate, grad.data(), result.weights.values.data(), grad.size());
    }
    return result;
}

std::vector<TrainPair> series_pairs(const SeriesWindow& series, const SeriesScaler& scaler,
                                    int window) {
    if (series.values.size() < static_cast<std::size_t>(window) + 1)
        throw data_error("forecaster: series too short (" +
                         std::to_string(series.values.size()) + " values, need > " +
                         std::to_string(window) + ")");
    std::vector<double> normalized(series.values.size());
    for (std::size_t i = 0; i < normalized.size(); ++i)
        normalized[i] = scaler.normalize(series.values[i]);
    return make_training_pairs(normalized, window);
}

TrainResult train_forecaster_local(const SeriesWindow& series,
                                   const ForecasterConfig& config) {
    const SeriesScaler scaler = fit_scaler(series.values);
    const auto pairs = series_pairs(series, scaler, config.window);
    return continue_training(init_weights(config), scaler, pairs, config.learning_rate,
                             config.epochs);
}

ModelWeights aggregate_weights(const std::vector<ModelWeights>& models) {
    if (models.empty()) throw usage_error("aggregate: empty model list");
    const auto& first = models.front();
    for (const auto& m : models)
        if (m.window != first.window || m.hidden != first.hidden ||
            m.values.size() != first.values.size())
            throw usage_error("aggregate: architecture mismatch");

    ModelWeights out = first;
    std::vector<double> column(models.size());
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        for (std::size_t i = 0; i < models.size(); ++i) column[i] = models[i].values[j];
        std::sort(column.begin(), column.end());
        double s = 0.0;
        for (double v : column) s += v;
        out.values[j] = s / static_cast<double>(models.size());
    }
    return out;
}

SeriesWindow forecast(const ModelWeights& model, const SeriesScaler& scaler,
                      const SeriesWindow& context, int horizon) {
    if (horizon < 0) throw usage_error("forecast: horizon must be >= 0");
    const auto w = static_cast<std::size_t>(model.window);
    if (context.values.size() < w)
        throw data_error("forecast: context shorter than model window");

    std::vector<double> normalized(context.values.size());
    for (std::size_t i = 0; i < normalized.size(); ++i)
        normalized[i] = scaler.normalize(context.values[i]);

    SeriesWindow out;
    out.start_index = context.start_index + context.values.size();
    out.sampling_interval_hours = context.sampling_interval_hours;
    std::vector<double> window;
    for (int step = 0; step < horizon; ++step) {
        window.assign(normalized.end() - static_cast<std::ptrdiff_t>(w), normalized.end());
        const double y = predict_one(model, window);
        if (!std::isfinite(y)) throw data_error("forecast: non-finite prediction");
        normalized.push_back(y);
        out.values.push_back(scaler.denormalize(y));
    }
    return out;
}

namespace {
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace

std::string format_model(const ModelWeights& model) {
    std::ostringstream out;
    out << "forecaster w=" << model.window << " h=" << model.hidden
        << " lr=" << fmt17(model.learning_rate) << " epochs=" << model.epochs
        << " seed=" << model.seed << '\n';
    for (double v : model.values) out << fmt17(v) << '\n';
    return out.str();
}

ModelWeights parse_model(const std::string& text, const std::string& origin) {
    auto lines = util::split(text, '\n');
    if (lines.empty()) throw data_error(origin + ": empty model file");
    auto head = util::split(util::trim(lines[0]), ' ');
    if (head.size() != 6 || head[0] != "forecaster")
        throw data_error(origin + ":1: malformed model header");
    ModelWeights m;
    auto field = [&](std::size_t i, std::string_view key) -> std::string {
        auto kv = util::split(head[i], '=');
        if (kv.size() != 2 || kv[0] != key)
            throw data_error(origin + ":1: expected `" + std::string(key) + "=`");
        return kv[1];
    };
    m.window = static_cast<int>(util::parse_int(field(1, "w"), "w"));
    m.hidden = static_cast<int>(util::parse_int(field(2, "h"), "h"));
    m.learning_rate = util::parse_double(field(3, "lr"), "lr");
    m.epochs = static_cast<int>(util::parse_int(field(4, "epochs"), "epochs"));
    m.seed = static_cast<std::uint64_t>(util::parse_int(field(5, "seed"), "seed"));
    if (m.window < 1 || m.hidden < 1)
        throw data_error(origin + ":1: invalid architecture");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = util::trim(lines[i]);
        if (line.empty()) continue;
        m.values.push_back(util::parse_double(line, origin + ":" + std::to_string(i + 1)));
    }
    if (m.values.size() != weight_count(m.hidden))
        throw data_error(origin + ": expected " + std::to_string(weight_count(m.hidden)) +
                         " weights, got " + std::to_string(m.values.size()));
    return m;
}

void save_model(const ModelWeights& model, const std::string& path) {
    util::write_file(path, format_model(model));
}

ModelWeights load_model(const std::string& path) {
    return parse_model(util::read_file(path), path);
}

} // namespace netslice::ml
