#include "netslice/builder/builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "netslice/util/errors.hpp"

namespace netslice::builder {

double communication_cost(const marketplace::ResourceOffer& offer,
                          const core::Point& reference, double hop_weight) {
    return core::euclidean(offer.location, reference) +
           hop_weight * static_cast<double>(offer.hops_to_core);
}

double score_offer(const marketplace::ResourceOffer& offer,
                   const core::ScoringWeights& w, const core::Point& reference,
                   double hop_weight) {
    const double comm = communication_cost(offer, reference, hop_weight);
    return w.w_pue * (1.0 / offer.pue) + w.w_renewable * (offer.renewable ? 1.0 : 0.0) +
           w.w_comm * (1.0 / (1.0 + comm)) + w.w_price * (1.0 / (1.0 + offer.price_per_hour));
}

namespace {

void validate_weights(const core::ScoringWeights& w) {
    for (double v : {w.w_pue, w.w_renewable, w.w_comm, w.w_price})
        if (!(v >= 0.0) || !std::isfinite(v))
            throw usage_error("scoring weights must be finite and >= 0");
    if (w.w_pue == 0 && w.w_renewable == 0 && w.w_comm == 0 && w.w_price == 0)
        throw usage_error("at least one scoring weight must be > 0");
}

core::Point reference_point(const core::Point& tenant,
                            const std::vector<const marketplace::ResourceOffer*>& chosen) {
    if (chosen.empty()) return tenant;
    core::Point c;
    for (const auto* o : chosen) {
        c.x += o->location.x;
        c.y += o->location.y;
    }
    c.x /= static_cast<double>(chosen.size());
    c.y /= static_cast<double>(chosen.size());
    return c;
}

bool meets_sustainability(const marketplace::ResourceOffer& offer,
                          const core::SustainabilityConstraints& s) {
    if (s.require_renewable && !offer.renewable) return false;
    if (s.max_pue && offer.pue > *s.max_pue) return false;
    return true;
}

} // namespace

core::AllocationPlan select_resources(const core::IntentDescriptor& intent,
                                      const std::vector<marketplace::ResourceOffer>& catalog,
                                      const core::ScoringWeights& weights,
                                      const BuilderConfig& config) {
    core::validate_intent(intent);
    validate_weights(weights);

    std::map<std::string, const marketplace::ResourceOffer*> by_id;
    std::map<std::string, std::int64_t> avail;
    for (const auto& o : catalog) {
        marketplace::validate_offer(o);
        if (by_id.count(o.offer_id))
            throw usage_error("catalog: duplicate offer " + o.offer_id);
        by_id[o.offer_id] = &o;
        avail[o.offer_id] = o.capacity_available;
    }

    core::AllocationPlan plan;
    std::vector<const marketplace::ResourceOffer*> chosen;   // distinct, in order
    std::set<std::string> used_offers;   // an offer serves at most one demand
    double spent = 0.0;
    std::int64_t total_units = 0;
    std::int64_t renewable_units = 0;

    for (std::size_t di = 0; di < intent.demands.size(); ++di) {
        const auto& demand = intent.demands[di];
        const core::Point ref = reference_point(intent.tenant_location, chosen);

        struct Scored {
            double score;
            const marketplace::ResourceOffer* offer;
        };
        std::vector<Scored> eligible;
        bool type_seen = false;
        for (const auto& [id, o] : by_id) {
            if (o->resource_type != demand.type) continue;
            type_seen = true;
            if (used_offers.count(id)) continue;
            if (!meets_sustainability(*o, intent.sustainability)) continue;
            eligible.push_back({score_offer(*o, weights, ref, config.hop_weight), o});
        }
        if (!type_seen)
            throw infeasible_error("demand " + std::to_string(di) + " (" +
                                   std::string(core::resource_type_name(demand.type)) +
                                   "): NoMatchingType");
        if (eligible.empty())
            throw infeasible_error("demand " + std::to_string(di) + " (" +
                                   std::string(core::resource_type_name(demand.type)) +
                                   "): ConstraintUnsatisfiable");
        std::sort(eligible.begin(), eligible.end(), [](const Scored& a, const Scored& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.offer->offer_id < b.offer->offer_id;
        });

        std::int64_t remaining = demand.quantity;
        std::int64_t coverable_ignoring_budget = 0;
        for (const auto& [score, offer] : eligible) {
            coverable_ignoring_budget += avail[offer->offer_id] / demand.unit_capacity;
            if (remaining <= 0) continue;
            std::int64_t take =
                std::min(remaining, avail[offer->offer_id] / demand.unit_capacity);
            if (intent.max_price_per_hour) {
                const double per_instance =
                    static_cast<double>(demand.unit_capacity) * offer->price_per_hour;
                while (take > 0 &&
                       spent + static_cast<double>(take) * per_instance >
                           *intent.max_price_per_hour)
                    --take;
            }
            if (take < 1) continue;
            plan.assignments.push_back({di, offer->offer_id, take});
            used_offers.insert(offer->offer_id);
            avail[offer->offer_id] -= take * demand.unit_capacity;
            spent += static_cast<double>(take) *
                     static_cast<double>(demand.unit_capacity) * offer->price_per_hour;
            plan.total_score += static_cast<double>(take) * score;
            total_units += take;
            if (offer->renewable) renewable_units += take;
            if (std::find(chosen.begin(), chosen.end(), offer) == chosen.end())
                chosen.push_back(offer);
            remaining -= take;
        }
        if (remaining > 0) {
            const bool budget_bound = coverable_ignoring_budget >= demand.quantity;
            throw infeasible_error("demand " + std::to_string(di) + " (" +
                                   std::string(core::resource_type_name(demand.type)) +
                                   "): " +
                                   (budget_bound ? "ConstraintUnsatisfiable"
                                                 : "CapacityExhausted"));
        }
    }

    plan.total_price_per_hour = plan_price_per_hour(intent, catalog, plan.assignments);
    plan.renewable_fraction =
        total_units == 0 ? 0.0
                         : static_cast<double>(renewable_units) /
                               static_cast<double>(total_units);
    return plan;
}

double plan_price_per_hour(const core::IntentDescriptor& intent,
                           const std::vector<marketplace::ResourceOffer>& catalog,
                           const std::vector<core::PlanAssignment>& assignments) {
    std::map<std::string, const marketplace::ResourceOffer*> by_id;
    for (const auto& o : catalog) by_id[o.offer_id] = &o;
    double price = 0.0;
    for (const auto& a : assignments) {
        auto it = by_id.find(a.offer_id);
        if (it == by_id.end()) throw internal_error("plan references unknown offer " + a.offer_id);
        if (a.demand_index >= intent.demands.size())
            throw internal_error("plan references demand index out of range");
        price += static_cast<double>(a.amount) *
                 static_cast<double>(intent.demands[a.demand_index].unit_capacity) *
                 it->second->price_per_hour;
    }
    return price;
}

void validate_plan(const core::IntentDescriptor& intent,
                   const std::vector<marketplace::ResourceOffer>& catalog,
                   const core::AllocationPlan& plan) {
    std::map<std::string, const marketplace::ResourceOffer*> by_id;
    for (const auto& o : catalog) by_id[o.offer_id] = &o;

    std::map<std::size_t, std::int64_t> covered;
    std::map<std::string, std::int64_t> used_capacity;
    std::int64_t total_units = 0;
    std::int64_t renewable_units = 0;

    std::set<std::string> seen_offers;
    for (const auto& a : plan.assignments) {
        if (a.demand_index >= intent.demands.size())
            throw internal_error("plan: demand index out of range");
        if (a.amount < 1) throw internal_error("plan: assignment amount must be >= 1");
        if (!seen_offers.insert(a.offer_id).second)
            throw internal_error("plan: offer " + a.offer_id + " assigned twice");
        auto it = by_id.find(a.offer_id);
        if (it == by_id.end()) throw internal_error("plan: unknown offer " + a.offer_id);
        const auto& offer = *it->second;
        const auto& demand = intent.demands[a.demand_index];
        if (offer.resource_type != demand.type)
            throw internal_error("plan: offer " + a.offer_id + " type mismatch");
        if (intent.sustainability.require_renewable && !offer.renewable)
            throw internal_error("plan: offer " + a.offer_id + " is not renewable");
        if (intent.sustainability.max_pue && offer.pue > *intent.sustainability.max_pue)
            throw internal_error("plan: offer " + a.offer_id + " exceeds max pue");
        covered[a.demand_index] += a.amount;
        used_capacity[a.offer_id] += a.amount * demand.unit_capacity;
        total_units += a.amount;
        if (offer.renewable) renewable_units += a.amount;
    }

    for (std::size_t di = 0; di < intent.demands.size(); ++di)
        if (covered[di] != intent.demands[di].quantity)
            throw internal_error("plan: demand " + std::to_string(di) +
                                 " not exactly covered");
    for (const auto& [id, used] : used_capacity)
        if (used > by_id.at(id)->capacity_available)
            throw internal_error("plan: offer " + id + " over capacity");

    const double price = plan_price_per_hour(intent, catalog, plan.assignments);
    if (intent.max_price_per_hour && price > *intent.max_price_per_hour)
        throw internal_error("plan: price exceeds budget");
    if (price != plan.total_price_per_hour)
        throw internal_error("plan: recorded price disagrees with recomputation");
    const double frac = total_units == 0
                            ? 0.0
                            : static_cast<double>(renewable_units) /
                                  static_cast<double>(total_units);
    if (frac != plan.renewable_fraction)
        throw internal_error("plan: recorded renewable fraction disagrees");
}

} // namespace netslice::builder
