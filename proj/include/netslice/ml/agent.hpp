#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <variant>

#include "netslice/ml/flow.hpp"
#include "netslice/ml/forecaster.hpp"
#include "netslice/ml/knn.hpp"
#include "netslice/util/errors.hpp"

namespace netslice::ml {

struct ForecasterBundle {
    ModelWeights weights;
    SeriesScaler scaler;
    int horizon = 30;
};

using AgentModel = std::variant<KnnModel, ForecasterBundle>;
using AgentPayload = std::variant<FlowFeatureVector, SeriesWindow>;
using AgentPrediction = std::variant<TrafficClass, SeriesWindow>;

class ModelUnavailable : public Error {
  public:
    explicit ModelUnavailable(const std::string& agent)
        : Error(ErrorKind::DataError, "agent " + agent + ": no model loaded") {}
};

// Predictor plus model life-cycle (insert/update/remove). Swaps are atomic:
// a prediction holds a snapshot of the model it started with, so concurrent
// updates never produce a mixed result.
class MlAgent {
  public:
    explicit MlAgent(std::string id) : id_(std::move(id)) {}

    const std::string& id() const { return id_; }

    void update_model(AgentModel model) {
        auto next = std::make_shared<const AgentModel>(std::move(model));
        std::lock_guard lock(mu_);
        model_ = std::move(next);
    }

    void remove_model() {
        std::lock_guard lock(mu_);
        model_.reset();
    }

    bool has_model() const {
        std::lock_guard lock(mu_);
        return model_ != nullptr;
    }

    AgentPrediction predict(const AgentPayload& payload) const;

  private:
    std::shared_ptr<const AgentModel> snapshot() const {
        std::lock_guard lock(mu_);
        return model_;
    }

    mutable std::mutex mu_;
    std::shared_ptr<const AgentModel> model_;
    std::string id_;
};

} // namespace netslice::ml
