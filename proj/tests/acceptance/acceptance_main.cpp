// Acceptance gate: every release-blocking behavior, one line of verdict per
// criterion, nonzero exit if anything fails. Each criterion carries a wall
// clock budget; overrunning it fails the criterion even if the checks pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "netslice/builder/builder.hpp"
#include "netslice/core/lifecycle.hpp"
#include "netslice/core/types.hpp"
#include "netslice/marketplace/marketplace.hpp"
#include "netslice/ml/flow.hpp"
#include "netslice/ml/forecaster.hpp"
#include "netslice/ml/knn.hpp"
#include "netslice/ml/series.hpp"
#include "netslice/runtime/runtime.hpp"
#include "netslice/scenario/attacks.hpp"
#include "netslice/scenario/demo.hpp"
#include "netslice/security/matrix.hpp"
#include "netslice/store/slice_store.hpp"
#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"
#include "netslice/util/text.hpp"

using namespace netslice;

namespace {

struct SkipRun {
    std::string reason;
};

struct FailRun {
    std::string reason;
};

void require(bool ok, const std::string& reason) {
    if (!ok) throw FailRun{reason};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- criterion 1

std::optional<core::LifecyclePhase> expected_next(core::LifecyclePhase p,
                                                  core::LifecycleEvent e) {
    using P = core::LifecyclePhase;
    using E = core::LifecycleEvent;
    if (p == P::Preparation && e == E::BuildSucceeded) return P::Commissioning;
    if (p == P::Preparation && e == E::BuildFailed) return P::Decommissioning;
    if (p == P::Preparation && e == E::InstantiateFailed) return P::Decommissioning;
    if (p == P::Preparation && e == E::DecommissionRequested) return P::Decommissioning;
    if (p == P::Commissioning && e == E::InstantiateSucceeded) return P::Operation;
    if (p == P::Commissioning && e == E::BuildFailed) return P::Decommissioning;
    if (p == P::Commissioning && e == E::InstantiateFailed) return P::Decommissioning;
    if (p == P::Commissioning && e == E::DecommissionRequested) return P::Decommissioning;
    if (p == P::Operation && e == E::BuildFailed) return P::Decommissioning;
    if (p == P::Operation && e == E::InstantiateFailed) return P::Decommissioning;
    if (p == P::Operation && e == E::DecommissionRequested) return P::Decommissioning;
    if (p == P::Decommissioning && e == E::TeardownComplete) return P::Terminated;
    return std::nullopt;
}

void c1_lifecycle() {
    int legal = 0;
    int pairs = 0;
    for (auto p : core::kAllPhases)
        for (auto e : core::kAllEvents) {
            ++pairs;
            const auto got = core::next_phase(p, e);
            const auto want = expected_next(p, e);
            require(got == want, std::string(core::phase_name(p)) + " + " +
                                     std::string(core::event_name(e)) +
                                     " disagrees with the hand-written table");
            core::SliceRecord rec;
            rec.slice_id = "s";
            rec.phase = p;
            bool advanced = true;
            try {
                const auto next = core::advance_lifecycle(rec, e, 5);
                require(want.has_value() && next.phase == *want && next.phase_entered_at == 5,
                        "advance_lifecycle accepted an illegal move");
            } catch (const Error&) {
                advanced = false;
            }
            require(advanced == want.has_value(), "advance_lifecycle disagrees with the table");
            if (want) ++legal;
        }
    require(pairs == 30, "pair enumeration incomplete");
    require(legal == 12, "expected exactly 12 legal transitions, saw " + std::to_string(legal));
    for (auto e : core::kAllEvents)
        require(!core::next_phase(core::LifecyclePhase::Terminated, e).has_value(),
                "Terminated must absorb every event");
}

// ---------------------------------------------------------------- criterion 2

void c2_marketplace() {
    util::Rng rng(777);
    marketplace::Marketplace m;
    constexpr int kOffers = 12;
    std::map<std::string, std::int64_t> available;
    for (int i = 0; i < kOffers; ++i) {
        marketplace::ResourceOffer o;
        o.offer_id = "of-" + std::to_string(i);
        o.resource_type = core::ResourceType::VM;
        o.owner_domain = "dom";
        o.price_per_hour = 1.0;
        o.renewable = true;
        o.pue = 1.2;
        o.capacity_total = o.capacity_available = static_cast<std::int64_t>(4 + rng.below(60));
        m.register_offer(o);
        available[o.offer_id] = o.capacity_total;
    }
    std::vector<marketplace::Reservation> live;
    for (int step = 0; step < 100000; ++step) {
        if (live.empty() || rng.below(5) < 3) {
            const auto id = "of-" + std::to_string(rng.below(kOffers));
            const auto amount = static_cast<std::int64_t>(1 + rng.below(8));
            const bool fits = amount <= available[id];
            try {
                auto r = m.reserve(id, amount, "slice-x");
                require(fits, "overdraft accepted on " + id + " at step " + std::to_string(step));
                available[id] -= amount;
                live.push_back(std::move(r));
            } catch (const Error& e) {
                require(!fits, "feasible reserve rejected at step " + std::to_string(step));
                require(e.kind() == ErrorKind::Infeasible, "wrong error kind on overdraft");
            }
        } else {
            const auto idx = rng.below(live.size());
            m.release(live[idx].reservation_id);
            available[live[idx].offer_id] += live[idx].amount;
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(idx));
        }
        if (step % 4096 == 0)
            require(m.check_conservation(), "conservation broke at step " + std::to_string(step));
    }
    std::string broken;
    require(m.check_conservation(&broken), "conservation broke at the end: " + broken);
    for (const auto& [id, avail] : available)
        require(m.get_offer(id).capacity_available == avail,
                "availability drifted from the reference counter on " + id);
    for (const auto& r : live) m.release(r.reservation_id);
    for (const auto& [id, avail] : available)
        require(m.get_offer(id).capacity_available == m.get_offer(id).capacity_total,
                "full release did not restore " + id);
}

// ------------------------------------------------------- criteria 3 and 4

struct Instance {
    core::IntentDescriptor intent;
    std::vector<marketplace::ResourceOffer> catalog;
};

Instance random_instance(std::uint64_t seed) {
    util::Rng rng(seed);
    Instance inst;
    const core::ResourceType pool[] = {core::ResourceType::VM, core::ResourceType::Container};
    const auto offers = 2 + rng.below(5);
    for (std::uint64_t i = 0; i < offers; ++i) {
        marketplace::ResourceOffer o;
        o.offer_id = "of-" + std::to_string(i);
        o.resource_type = pool[rng.below(2)];
        o.owner_domain = "d";
        o.price_per_hour = rng.uniform(0.5, 6.0);
        o.renewable = rng.below(2) == 0;
        o.pue = rng.uniform(1.0, 2.0);
        o.location = {rng.uniform(-10, 10), rng.uniform(-10, 10)};
        o.hops_to_core = static_cast<std::int64_t>(rng.below(6));
        o.capacity_total = o.capacity_available = static_cast<std::int64_t>(1 + rng.below(6));
        inst.catalog.push_back(o);
    }
    auto& in = inst.intent;
    in.tenant_id = "t";
    in.tenant_location = {rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const auto demands = 1 + rng.below(3);
    for (std::uint64_t i = 0; i < demands; ++i)
        in.demands.push_back({pool[rng.below(2)], static_cast<std::int64_t>(1 + rng.below(3)),
                              static_cast<std::int64_t>(1 + rng.below(2))});
    if (rng.below(4) == 0) in.sustainability.require_renewable = true;
    if (rng.below(4) == 0) in.sustainability.max_pue = rng.uniform(1.2, 1.8);
    if (rng.below(2) == 0) in.max_price_per_hour = rng.uniform(2.0, 20.0);
    return inst;
}

bool offer_allowed(const marketplace::ResourceOffer& o,
                   const core::SustainabilityConstraints& s) {
    if (s.require_renewable && !o.renewable) return false;
    if (s.max_pue && o.pue > *s.max_pue) return false;
    return true;
}

// Every exact-cover plan under type, sustainability, capacity, budget and
// offer exclusivity; scored by the same published objective the selector
// optimizes (per-demand reference = centroid of earlier distinct offers).
struct Exhaustive {
    const Instance& inst;
    const core::ScoringWeights weights;
    const builder::BuilderConfig config;
    std::optional<double> best;

    core::Point reference(const std::vector<const marketplace::ResourceOffer*>& placed) const {
        if (placed.empty()) return inst.intent.tenant_location;
        core::Point c;
        for (const auto* o : placed) {
            c.x += o->location.x;
            c.y += o->location.y;
        }
        c.x /= static_cast<double>(placed.size());
        c.y /= static_cast<double>(placed.size());
        return c;
    }

    void fill_demand(std::size_t di, std::size_t offer_from, std::int64_t remaining,
                     double score_so_far, double spent,
                     std::vector<const marketplace::ResourceOffer*>& placed_before,
                     std::vector<const marketplace::ResourceOffer*>& placed_here,
                     std::set<std::string>& used) {
        if (remaining == 0) {
            for (auto* o : placed_here) placed_before.push_back(o);
            const auto here = placed_here;
            placed_here.clear();
            next_demand(di + 1, score_so_far, spent, placed_before, used);
            placed_here = here;
            for (std::size_t i = 0; i < here.size(); ++i) placed_before.pop_back();
            return;
        }
        const core::Point ref = reference(placed_before);
        for (std::size_t oi = offer_from; oi < inst.catalog.size(); ++oi) {
            const auto& o = inst.catalog[oi];
            const auto& demand = inst.intent.demands[di];
            if (o.resource_type != demand.type) continue;
            if (used.count(o.offer_id)) continue;
            if (!offer_allowed(o, inst.intent.sustainability)) continue;
            const std::int64_t max_take =
                std::min<std::int64_t>(remaining, o.capacity_available / demand.unit_capacity);
            const double per_instance =
                static_cast<double>(demand.unit_capacity) * o.price_per_hour;
            const double unit_score = builder::score_offer(o, weights, ref, config.hop_weight);
            for (std::int64_t take = 1; take <= max_take; ++take) {
                const double new_spent = spent + static_cast<double>(take) * per_instance;
                if (inst.intent.max_price_per_hour &&
                    new_spent > *inst.intent.max_price_per_hour + 1e-9)
                    break;
                used.insert(o.offer_id);
                placed_here.push_back(&o);
                fill_demand(di, oi + 1, remaining - take,
                            score_so_far + static_cast<double>(take) * unit_score, new_spent,
                            placed_before, placed_here, used);
                placed_here.pop_back();
                used.erase(o.offer_id);
            }
        }
    }

    void next_demand(std::size_t di, double score_so_far, double spent,
                     std::vector<const marketplace::ResourceOffer*>& placed,
                     std::set<std::string>& used) {
        if (di == inst.intent.demands.size()) {
            if (!best || score_so_far > *best) best = score_so_far;
            return;
        }
        std::vector<const marketplace::ResourceOffer*> here;
        fill_demand(di, 0, inst.intent.demands[di].quantity, score_so_far, spent, placed, here,
                    used);
    }

    std::optional<double> run() {
        std::vector<const marketplace::ResourceOffer*> placed;
        std::set<std::string> used;
        next_demand(0, 0.0, 0.0, placed, used);
        return best;
    }
};

void c3_builder_optimality() {
    int optimal = 0, infeasible_agreed = 0, produced = 0;
    const core::ScoringWeights weights;
    for (int i = 0; i < 200; ++i) {
        const auto inst = random_instance(1000 + static_cast<std::uint64_t>(i));
        Exhaustive ex{inst, weights, builder::BuilderConfig{}, std::nullopt};
        const auto best = ex.run();
        std::optional<core::AllocationPlan> plan;
        try {
            plan = builder::select_resources(inst.intent, inst.catalog, weights);
        } catch (const Error& e) {
            require(e.kind() == ErrorKind::Infeasible,
                    "instance " + std::to_string(i) + ": non-infeasibility error");
        }
        if (plan) {
            ++produced;
            try {
                builder::validate_plan(inst.intent, inst.catalog, *plan);
            } catch (const Error& e) {
                throw FailRun{"instance " + std::to_string(i) +
                              ": plan failed the independent feasibility check: " + e.what()};
            }
            require(best.has_value(),
                    "instance " + std::to_string(i) + ": plan exists but the oracle found none");
            require(plan->total_score <= *best + 1e-9,
                    "instance " + std::to_string(i) + ": greedy beat the exhaustive optimum");
            if (std::fabs(plan->total_score - *best) <= 1e-9 * std::max(1.0, std::fabs(*best)))
                ++optimal;
        } else if (!best) {
            ++infeasible_agreed;
        }
    }
    require(produced > 100, "instance generator degenerated: only " + std::to_string(produced) +
                                " feasible instances");
    require(optimal + infeasible_agreed >= 190,
            "optimum matched on " + std::to_string(optimal) + "/200 with " +
                std::to_string(infeasible_agreed) + " agreed-infeasible; need >= 190 combined");
}

void c4_weight_scaling() {
    const core::ScoringWeights base;
    int compared = 0;
    for (int i = 0; i < 100; ++i) {
        const auto inst = random_instance(5000 + static_cast<std::uint64_t>(i));
        std::optional<core::AllocationPlan> reference;
        try {
            reference = builder::select_resources(inst.intent, inst.catalog, base);
        } catch (const Error&) {
            continue;
        }
        for (double c : {0.125, 0.5, 2.0, 8.0, 64.0}) {
            const core::ScoringWeights scaled{base.w_pue * c, base.w_renewable * c,
                                              base.w_comm * c, base.w_price * c};
            const auto plan = builder::select_resources(inst.intent, inst.catalog, scaled);
            require(plan.assignments == reference->assignments,
                    "instance " + std::to_string(i) + " scale " + fmt(c) + " changed the plan");
            ++compared;
        }
    }
    require(compared >= 250, "too few feasible instances for the invariance sweep");
}

// ---------------------------------------------------------------- criterion 5

void c5_attack_matrix() {
    testutil::TempDir tmp("accept-attacks");
    runtime::RuntimeConfig cfg;
    cfg.store_dir = tmp.sub("state");
    runtime::Runtime rt(cfg);

    const auto outcomes = scenario::simulate_all_attacks(rt);
    const auto cells = security::applicable_cells();
    require(cells.size() == 22, "matrix enumerates " + std::to_string(cells.size()) +
                                    " cells, expected 22");
    require(outcomes.size() == cells.size(), "not every applicable cell produced an outcome");
    std::set<std::uint64_t> seqs;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        require(outcomes[i].category == cells[i].first && outcomes[i].phase == cells[i].second,
                "outcome " + std::to_string(i) + " out of enumeration order");
        require(outcomes[i].incident_seq > 0, "missing audit incident for cell " +
                                                  std::to_string(i));
        require(seqs.insert(outcomes[i].incident_seq).second,
                "two cells share one audit incident");
        security::AuditFilter f;
        f.min_seq = outcomes[i].incident_seq;
        const auto events = rt.audit.query(f);
        require(!events.empty() && events.front().seq == outcomes[i].incident_seq,
                "incident seq not found in the audit log");
        require(events.front().category ==
                    std::string(security::attack_name(outcomes[i].category)),
                "audit category mismatch on cell " + std::to_string(i));
        require(events.front().phase == std::string(core::phase_name(outcomes[i].phase)),
                "audit phase label mismatch on cell " + std::to_string(i));
    }
    // Off-matrix cells must be refused, not silently simulated.
    try {
        scenario::simulate_attack(rt, security::AttackCategory::DoS,
                                  core::LifecyclePhase::Commissioning);
        throw FailRun{"an off-matrix cell was accepted"};
    } catch (const Error& e) {
        require(e.kind() == ErrorKind::Usage, "off-matrix rejection has the wrong kind");
    }
}

// ---------------------------------------------------------------- criterion 6

ml::TrafficClass brute_predict(const ml::KnnModel& model, const ml::FlowFeatureVector& x) {
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
    std::map<ml::TrafficClass, std::pair<int, double>> votes;
    for (const auto& n : all) {
        auto& v = votes[model.labels[n.index]];
        v.first += 1;
        v.second += n.dist;
    }
    ml::TrafficClass best = ml::TrafficClass::Benign;
    bool have = false;
    std::pair<int, double> best_v{0, 0.0};
    for (ml::TrafficClass c : ml::kAllTrafficClasses) {
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

void c6_knn_oracle() {
    const auto dataset = ml::synth_flow_dataset(7).flows;
    int checked = 0;
    for (int k : {1, 3, 4, 7, 16}) {
        const auto model = ml::knn_train(dataset, k);
        util::Rng rng(99);
        for (int q = 0; q < 100; ++q) {
            ml::FlowFeatureVector x;
            for (auto& v : x.features) v = rng.uniform(0.0, 1.0);
            require(ml::knn_predict(model, x) == brute_predict(model, x),
                    "disagreement at k=" + std::to_string(k) + " query " + std::to_string(q));
            ++checked;
        }
    }
    require(checked == 500, "query count drifted");
}

// ---------------------------------------------------------------- criterion 7

void c7_knn_accuracy() {
    const auto dataset = ml::synth_flow_dataset(42).flows;
    std::vector<ml::FlowFeatureVector> train, test;
    ml::split_dataset(dataset, 42, train, test);
    const auto model = ml::knn_train(train, 4);
    const double acc = ml::knn_accuracy(model, test);
    require(acc >= 0.90, "k=4 accuracy " + fmt(acc) + " below 0.90");

    const auto cv = ml::cross_validate(dataset, 30, 10, 42);
    require(cv.runs.size() == 300, "sweep must cover k=1..30 x 10 repeats");
    require(cv.best_k >= 1 && cv.best_k < 15,
            "best k " + std::to_string(cv.best_k) + " outside [1,15)");
    const double at_best = cv.mean_accuracy.at(cv.best_k);
    const double at_max = cv.mean_accuracy.at(30);
    require(at_max < at_best, "accuracy did not decline toward k=30 (best " + fmt(at_best) +
                                  ", k=30 " + fmt(at_max) + ")");
}

// ---------------------------------------------------------------- criterion 8

void c8_real_dataset() {
    const char* path = std::getenv("NETSLICE_DDOS2019_CSV");
    if (path == nullptr || *path == '\0' || !util::file_exists(path))
        throw SkipRun{"no dataset file"};
    const auto dataset = ml::load_flow_csv(path);
    std::vector<ml::FlowFeatureVector> labeled;
    for (const auto& f : dataset.flows)
        if (f.label) labeled.push_back(f);
    require(labeled.size() >= 50,
            "dataset has only " + std::to_string(labeled.size()) + " labeled flows");
    std::vector<ml::FlowFeatureVector> train, test;
    ml::split_dataset(labeled, 42, train, test);
    const auto model = ml::knn_train(train, 4);
    const double acc = ml::knn_accuracy(model, test);
    require(acc >= 0.91 && acc <= 0.97,
            "k=4 accuracy " + fmt(acc) + " outside [0.91, 0.97]");
}

// ---------------------------------------------------------------- criterion 9

void c9_gradient_check() {
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
                p.inputs.push_back(0.5 +
                                   0.4 * std::sin(0.3 * (s + i) + (seed == 2 ? 1.0 : 0.0)) +
                                   0.02 * rng.normal());
            p.target = 0.5 + 0.4 * std::sin(0.3 * (s + config.window));
            batch.push_back(std::move(p));
        }
        const auto grad = ml::batch_gradient(model, batch);
        require(grad.size() == model.values.size(), "gradient length mismatch");
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
            require(std::fabs(fd - grad[i]) / denom < 1e-4,
                    "series " + std::to_string(seed) + " coordinate " + std::to_string(i) +
                        ": analytic " + fmt(grad[i]) + " vs fd " + fmt(fd));
        }
    }
}

// --------------------------------------------------------------- criterion 10

void c10_fedavg_algebra() {
    ml::ForecasterConfig config;
    config.window = 5;
    config.hidden = 3;
    auto make = [&](std::uint64_t seed) {
        auto c = config;
        c.seed = seed;
        return ml::init_weights(c);
    };
    const auto a = make(1), b = make(2), c = make(3);

    require(ml::aggregate_weights({a}) == a, "identity broke");
    require(ml::aggregate_weights({a, a}) == a, "idempotence broke on two copies");
    require(ml::aggregate_weights({a, a, a, a}) == a, "idempotence broke on four copies");
    const auto p1 = ml::aggregate_weights({a, b, c});
    const auto p2 = ml::aggregate_weights({c, a, b});
    const auto p3 = ml::aggregate_weights({b, c, a});
    require(p1 == p2 && p2 == p3, "permutation invariance broke");
    const auto mean = ml::aggregate_weights({a, b});
    for (std::size_t i = 0; i < mean.values.size(); ++i)
        require(mean.values[i] == (a.values[i] + b.values[i]) / 2.0,
                "two-model mean inexact at coordinate " + std::to_string(i));
}

// --------------------------------------------------------------- criterion 11

ml::SeriesWindow synth_series(std::uint64_t seed, double base, double amp, double trend) {
    util::Rng rng(seed);
    ml::SeriesWindow s;
    for (int i = 0; i < 400; ++i)
        s.values.push_back(base + amp * std::sin(i * 6.283185307179586 / 24.0) +
                           trend * i / 24.0 + rng.normal(0.0, amp * 0.05));
    return s;
}

void c11_federated_improvement() {
    struct Domain {
        ml::SeriesScaler scaler;
        std::vector<ml::TrainPair> train, test;
    };
    ml::ForecasterConfig config;
    config.window = 12;
    config.hidden = 6;
    config.learning_rate = 0.05;
    config.seed = 5;

    std::vector<Domain> doms;
    for (const auto& series : {synth_series(11, 60.0, 18.0, 0.3),
                               synth_series(22, 35.0, 9.0, 0.15)}) {
        Domain d;
        const std::size_t train_len = series.values.size() * 8 / 10;
        const std::vector<double> head(series.values.begin(),
                                       series.values.begin() +
                                           static_cast<std::ptrdiff_t>(train_len));
        d.scaler = ml::fit_scaler(head);
        const auto pairs = ml::series_pairs(series, d.scaler, config.window);
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            if (j + static_cast<std::size_t>(config.window) < train_len)
                d.train.push_back(pairs[j]);
            else
                d.test.push_back(pairs[j]);
        }
        require(d.train.size() > 200 && d.test.size() > 50, "split degenerated");
        doms.push_back(std::move(d));
    }

    const int rounds = 5, epochs = 40;
    auto global = ml::init_weights(config);
    std::vector<std::vector<double>> test_mse(doms.size());
    for (int round = 0; round < rounds; ++round) {
        std::vector<ml::ModelWeights> locals;
        for (std::size_t di = 0; di < doms.size(); ++di) {
            auto res = ml::continue_training(global, doms[di].scaler, doms[di].train,
                                             config.learning_rate, epochs);
            require(res.loss_history.size() == static_cast<std::size_t>(epochs),
                    "loss history must record one entry per epoch");
            // 10-epoch moving average of the local loss must never rise.
            const auto& h = res.loss_history;
            double prev = 0.0;
            for (std::size_t s = 0; s + 10 <= h.size(); ++s) {
                double ma = 0.0;
                for (std::size_t t = s; t < s + 10; ++t) ma += h[t];
                ma /= 10.0;
                if (s > 0)
                    require(ma <= prev + 1e-12,
                            "domain " + std::to_string(di) + " round " + std::to_string(round) +
                                ": moving average rose at epoch " + std::to_string(s));
                prev = ma;
            }
            locals.push_back(std::move(res.weights));
        }
        global = ml::aggregate_weights(locals);
        for (std::size_t di = 0; di < doms.size(); ++di)
            test_mse[di].push_back(ml::batch_loss(global, doms[di].test));
    }
    for (std::size_t di = 0; di < doms.size(); ++di) {
        require(test_mse[di].back() < test_mse[di].front(),
                "domain " + std::to_string(di) + ": held-out mse did not improve (round 1 " +
                    fmt(test_mse[di].front()) + ", round 5 " + fmt(test_mse[di].back()) + ")");
    }
}

// --------------------------------------------------------------- criterion 12

void c12_demo_determinism() {
    testutil::TempDir tmp("accept-demo");
    scenario::DemoOptions opts;

    runtime::RuntimeConfig cfg1;
    cfg1.store_dir = tmp.sub("a");
    runtime::Runtime rt1(cfg1);
    const auto r1 = scenario::run_demo(rt1, opts);

    runtime::RuntimeConfig cfg2;
    cfg2.store_dir = tmp.sub("b");
    runtime::Runtime rt2(cfg2);
    const auto r2 = scenario::run_demo(rt2, opts);

    require(!r1.transcript.empty(), "empty transcript");
    require(r1.slice_id == r2.slice_id, "slice ids diverged");
    require(r1.transcript == r2.transcript, "transcripts diverged");
    require(util::read_file(runtime::audit_log_path(cfg1)) ==
                util::read_file(runtime::audit_log_path(cfg2)),
            "audit logs diverged");
    require(util::read_file(runtime::slice_store_dir(cfg1) + "/events.log") ==
                util::read_file(runtime::slice_store_dir(cfg2) + "/events.log"),
            "slice event logs diverged");
}

// --------------------------------------------------------------- criterion 13

void c13_crash_recovery() {
    testutil::TempDir tmp("accept-crash");
    runtime::RuntimeConfig cfg;
    cfg.store_dir = tmp.sub("state");
    runtime::Runtime rt(cfg);
    scenario::run_demo(rt, {});

    const auto log_text = util::read_file(runtime::slice_store_dir(cfg) + "/events.log");
    std::vector<std::size_t> cuts{0};
    for (std::size_t i = 0; i < log_text.size(); ++i)
        if (log_text[i] == '\n') cuts.push_back(i + 1);
    require(cuts.size() >= 20, "demo produced too few events for boundary coverage");

    for (std::size_t j = 0; j < cuts.size(); ++j) {
        const std::string prefix = log_text.substr(0, cuts[j]);
        const auto exact_dir = tmp.sub("exact-" + std::to_string(j));
        const auto torn_dir = tmp.sub("torn-" + std::to_string(j));
        util::write_file(exact_dir + "/events.log", prefix);
        util::write_file(torn_dir + "/events.log", prefix + "9999|7|note|s|torn");
        store::SliceStore exact(exact_dir);
        store::SliceStore torn(torn_dir);
        require(torn.slices() == exact.slices(),
                "boundary " + std::to_string(j) + ": torn tail changed the replayed state");
        require(torn.last_seq() == exact.last_seq() && exact.last_seq() == j,
                "boundary " + std::to_string(j) + ": replay consumed the wrong event count");
    }
    store::SliceStore full(tmp.sub("exact-" + std::to_string(cuts.size() - 1)));
    require(full.slices() == rt.slices.slices() && full.last_seq() == rt.slices.last_seq(),
            "full-log replay diverged from the live store");
}

// -------------------------------------------------------------------- harness

struct Criterion {
    int number;
    std::string name;
    double budget_seconds;
    std::function<void()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "lifecycle transition table", 1.0, c1_lifecycle},
        {2, "marketplace conservation", 10.0, c2_marketplace},
        {3, "greedy placement optimality", 30.0, c3_builder_optimality},
        {4, "weight scaling invariance", 5.0, c4_weight_scaling},
        {5, "attack containment matrix", 10.0, c5_attack_matrix},
        {6, "nearest-neighbor oracle agreement", 5.0, c6_knn_oracle},
        {7, "classifier accuracy and k sweep", 60.0, c7_knn_accuracy},
        {8, "real flow dataset accuracy", 60.0, c8_real_dataset},
        {9, "forecaster gradient check", 10.0, c9_gradient_check},
        {10, "weight averaging algebra", 1.0, c10_fedavg_algebra},
        {11, "federated training improvement", 120.0, c11_federated_improvement},
        {12, "demo determinism", 60.0, c12_demo_determinism},
        {13, "crash recovery replay", 60.0, c13_crash_recovery},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string verdict;
        try {
            c.run();
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (secs > c.budget_seconds) {
                verdict = "FAIL (passed checks but took " + fmt(secs) + "s, budget " +
                          fmt(c.budget_seconds) + "s)";
                ++failures;
            } else {
                std::ostringstream os;
                os.setf(std::ios::fixed);
                os.precision(2);
                os << "PASS [" << secs << "s]";
                verdict = os.str();
            }
        } catch (const SkipRun& s) {
            verdict = "SKIP (" + s.reason + ")";
        } catch (const FailRun& f) {
            verdict = "FAIL (" + f.reason + ")";
            ++failures;
        } catch (const std::exception& e) {
            verdict = std::string("FAIL (unexpected error: ") + e.what() + ")";
            ++failures;
        }
        std::cout << "criterion " << c.number << " (" << c.name << "): " << verdict << "\n";
    }
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
