#include "netslice/scenario/experiments.hpp"

#include <algorithm>

#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::scenario {

DdosReport run_ddos_experiment(runtime::Runtime& rt, const DdosOptions& options) {
    const ml::FlowDataset dataset = options.dataset_file
                                        ? ml::load_flow_csv(*options.dataset_file)
                                        : ml::synth_flow_dataset(rt.config.seed);
    for (std::size_t i = 0; i < dataset.flows.size(); ++i)
        if (!dataset.flows[i].label)
            throw data_error("ddos experiment: flow " + std::to_string(i + 1) +
                             " carries no label");

    DdosReport report;
    report.dataset_size = dataset.flows.size();
    report.cv = ml::cross_validate(dataset.flows, options.k_max, options.repeats,
                                   rt.config.seed);

    const auto model = ml::knn_train(dataset.flows, report.cv.best_k);
    rt.ddos_agent->update_model(model);

    for (const auto& flow : dataset.flows) {
        const auto verdict = rt.gate.ddos_gate("ingress", flow, "dom-compute");
        auto& counts = report.gate_counts[*flow.label];
        if (verdict == security::GateDecision::Pass) ++counts.passed;
        else ++counts.dropped;
    }

    std::string s;
    s += "flows: " + std::to_string(report.dataset_size) + "\n";
    s += "k sweep: 1.." + std::to_string(options.k_max) + ", " +
         std::to_string(options.repeats) + " repeats\n";
    s += "best k: " + std::to_string(report.cv.best_k) +
         " (mean accuracy " + util::fmt_double(report.cv.mean_accuracy.at(report.cv.best_k)) +
         ")\n";
    s += "gate verdicts by class:\n";
    for (const auto& [cls, counts] : report.gate_counts)
        s += "  " + std::string(ml::traffic_class_name(cls)) + ": passed " +
             std::to_string(counts.passed) + ", dropped " + std::to_string(counts.dropped) +
             "\n";
    report.summary = std::move(s);
    return report;
}

void write_ddos_report(const DdosReport& report, const std::string& out_dir) {
    std::string acc = "k,mean_accuracy\n";
    for (const auto& [k, mean] : report.cv.mean_accuracy)
        acc += std::to_string(k) + "," + util::fmt_double(mean) + "\n";
    util::write_file(out_dir + "/accuracy_vs_k.csv", acc);
    util::write_file(out_dir + "/cv_runs.csv", ml::format_cv_run_log(report.cv));
    util::write_file(out_dir + "/summary.txt", report.summary);
}

EnergyReport run_energy_experiment(runtime::Runtime& rt, const EnergyOptions& options) {
    if (options.rounds < 1) throw usage_error("energy experiment: rounds must be >= 1");
    if (options.horizon < 0) throw usage_error("energy experiment: horizon must be >= 0");
    if (rt.federation.domains.size() < 2)
        throw usage_error("energy experiment: needs two or more domains");

    const auto& fc = rt.config.forecaster;
    struct DomainState {
        const domains::SimDomain* dom;
        ml::SeriesWindow train;
        ml::SeriesScaler scaler;
        std::vector<ml::TrainPair> pairs;
        std::vector<double> norm_full;
    };
    std::vector<DomainState> states;
    std::size_t train_len = 0;
    for (const auto& dom : rt.federation.domains) {
        const auto& full = dom->energy_trace();
        if (full.values.empty())
            throw data_error("energy experiment: domain " + dom->id() + " has no trace");
        DomainState st;
        st.dom = dom.get();
        train_len = full.values.size() * 8 / 10;
        if (train_len < static_cast<std::size_t>(fc.window) + 1)
            throw data_error("energy experiment: domain " + dom->id() +
                             " training split too short");
        st.train.values.assign(full.values.begin(),
                               full.values.begin() + static_cast<std::ptrdiff_t>(train_len));
        st.train.start_index = full.start_index;
        st.train.sampling_interval_hours = full.sampling_interval_hours;
        st.scaler = ml::fit_scaler(st.train.values);
        st.pairs = ml::series_pairs(st.train, st.scaler, fc.window);
        st.norm_full.resize(full.values.size());
        for (std::size_t i = 0; i < full.values.size(); ++i)
            st.norm_full[i] = st.scaler.normalize(full.values[i]);
        states.push_back(std::move(st));
    }

    EnergyReport report;
    report.train_len = train_len;
    report.domains.resize(states.size());
    for (std::size_t d = 0; d < states.size(); ++d)
        report.domains[d].domain_id = states[d].dom->id();

    ml::ModelWeights global = ml::init_weights(fc);
    for (int round = 0; round < options.rounds; ++round) {
        std::vector<ml::ModelWeights> locals;
        for (std::size_t d = 0; d < states.size(); ++d) {
            auto local = ml::continue_training(global, states[d].scaler, states[d].pairs,
                                               fc.learning_rate, options.epochs_per_round);
            auto& hist = report.domains[d].loss_history;
            hist.insert(hist.end(), local.loss_history.begin(), local.loss_history.end());
            locals.push_back(std::move(local.weights));
        }
        global = ml::aggregate_weights(locals);

        // Score the shared model on every held-out tail, one-step-ahead.
        double sum_norm = 0.0, sum_kwh = 0.0;
        for (std::size_t d = 0; d < states.size(); ++d) {
            const auto& st = states[d];
            const auto& full_values = st.dom->energy_trace().values;
            std::vector<double> preds_norm, targets_norm, preds_kwh, targets_kwh;
            for (std::size_t i = train_len; i < full_values.size(); ++i) {
                const std::vector<double> window(st.norm_full.begin() +
                                                     static_cast<std::ptrdiff_t>(i - fc.window),
                                                 st.norm_full.begin() +
                                                     static_cast<std::ptrdiff_t>(i));
                const double p = ml::predict_one(global, window);
                preds_norm.push_back(p);
                targets_norm.push_back(st.norm_full[i]);
                preds_kwh.push_back(st.scaler.denormalize(p));
                targets_kwh.push_back(full_values[i]);
            }
            const double m_norm = ml::mse(preds_norm, targets_norm);
            const double m_kwh = ml::mse(preds_kwh, targets_kwh);
            sum_norm += m_norm;
            sum_kwh += m_kwh;
            if (round == options.rounds - 1) {
                report.domains[d].test_mse_normalized = m_norm;
                report.domains[d].test_mse_kwh = m_kwh;
            }
        }
        report.round_mse_normalized.push_back(sum_norm / static_cast<double>(states.size()));
        report.round_mse_kwh.push_back(sum_kwh / static_cast<double>(states.size()));
    }

    for (std::size_t d = 0; d < states.size(); ++d) {
        const auto& st = states[d];
        report.domains[d].forecast =
            ml::forecast(global, st.scaler, st.train, options.horizon);
        const auto& full_values = st.dom->energy_trace().values;
        for (int i = 0; i < options.horizon; ++i) {
            const std::size_t idx = train_len + static_cast<std::size_t>(i);
            if (idx < full_values.size())
                report.domains[d].actual.push_back(full_values[idx]);
        }
    }

    std::string s;
    s += "domains: " + std::to_string(states.size()) + "\n";
    s += "train/test boundary: first " + std::to_string(train_len) + " samples train\n";
    s += "rounds: " + std::to_string(options.rounds) + " x " +
         std::to_string(options.epochs_per_round) + " epochs\n";
    for (std::size_t r = 0; r < report.round_mse_normalized.size(); ++r)
        s += "round " + std::to_string(r + 1) +
             ": mse_norm=" + util::fmt_double(report.round_mse_normalized[r]) +
             " mse_kwh=" + util::fmt_double(report.round_mse_kwh[r]) + "\n";
    for (const auto& dr : report.domains)
        s += dr.domain_id + ": final mse_norm=" + util::fmt_double(dr.test_mse_normalized) +
             " mse_kwh=" + util::fmt_double(dr.test_mse_kwh) + "\n";
    report.summary = std::move(s);
    return report;
}

void write_energy_report(const EnergyReport& report, const std::string& out_dir) {
    std::string rounds = "round,mse_normalized,mse_kwh\n";
    for (std::size_t r = 0; r < report.round_mse_normalized.size(); ++r)
        rounds += std::to_string(r + 1) + "," +
                  util::fmt_double(report.round_mse_normalized[r]) + "," +
                  util::fmt_double(report.round_mse_kwh[r]) + "\n";
    util::write_file(out_dir + "/round_mse.csv", rounds);

    for (const auto& dr : report.domains) {
        std::string loss = "epoch,loss\n";
        for (std::size_t i = 0; i < dr.loss_history.size(); ++i)
            loss += std::to_string(i + 1) + "," + util::fmt_double(dr.loss_history[i]) + "\n";
        util::write_file(out_dir + "/" + dr.domain_id + "_loss.csv", loss);

        std::string fc = "step,predicted_kwh,actual_kwh\n";
        for (std::size_t i = 0; i < dr.forecast.values.size(); ++i) {
            fc += std::to_string(i + 1) + "," + util::fmt_double(dr.forecast.values[i]) + ",";
            fc += i < dr.actual.size() ? util::fmt_double(dr.actual[i]) : "";
            fc += "\n";
        }
        util::write_file(out_dir + "/" + dr.domain_id + "_forecast.csv", fc);
    }
    util::write_file(out_dir + "/summary.txt", report.summary);
}

} // namespace netslice::scenario
