#include "netslice/ml/agent.hpp"

namespace netslice::ml {

AgentPrediction MlAgent::predict(const AgentPayload& payload) const {
    auto model = snapshot();
    if (!model) throw ModelUnavailable(id_);
    if (const auto* flow = std::get_if<FlowFeatureVector>(&payload)) {
        const auto* knn = std::get_if<KnnModel>(model.get());
        if (!knn)
            throw usage_error("agent " + id_ + ": flow payload needs a classifier model");
        return knn_predict(*knn, *flow);
    }
    const auto& series = std::get<SeriesWindow>(payload);
    const auto* fc = std::get_if<ForecasterBundle>(model.get());
    if (!fc)
        throw usage_error("agent " + id_ + ": series payload needs a forecaster model");
    return forecast(fc->weights, fc->scaler, series, fc->horizon);
}

} // namespace netslice::ml
