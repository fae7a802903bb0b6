#pragma once

#include <vector>

#include "netslice/core/types.hpp"
#include "netslice/marketplace/marketplace.hpp"

namespace netslice::builder {

struct BuilderConfig {
    double hop_weight = 1.0;   // lambda in the communication cost
    core::ScoringWeights default_weights;
};

// euclidean(offer.location, reference) + hop_weight * hops_to_core
double communication_cost(const marketplace::ResourceOffer& offer,
                          const core::Point& reference, double hop_weight = 1.0);

// w_pue/pue + w_renewable*[renewable] + w_comm/(1+comm) + w_price/(1+price).
// Higher is better.
double score_offer(const marketplace::ResourceOffer& offer,
                   const core::ScoringWeights& weights, const core::Point& reference,
                   double hop_weight = 1.0);

// Greedy: demands in index order; per demand, candidates scored against the
// current reference point, sorted score-descending with offer_id ascending as
// tie-break, filled in order under capacity and budget. The reference point is
// the tenant location until anything is assigned, then the centroid of the
// distinct offers already chosen. Throws infeasible_error naming the demand
// and reason (NoMatchingType | ConstraintUnsatisfiable | CapacityExhausted).
core::AllocationPlan select_resources(const core::IntentDescriptor& intent,
                                      const std::vector<marketplace::ResourceOffer>& catalog,
                                      const core::ScoringWeights& weights,
                                      const BuilderConfig& config = {});

// Post-hoc feasibility check, written against the constraint definitions
// rather than the selection code: coverage, type match, capacity, price
// budget, sustainability. Throws internal_error on the first violation.
void validate_plan(const core::IntentDescriptor& intent,
                   const std::vector<marketplace::ResourceOffer>& catalog,
                   const core::AllocationPlan& plan);

// Plan price and renewable fraction from first principles; used by both the
// selector and the validator so the two cannot drift apart on bookkeeping.
double plan_price_per_hour(const core::IntentDescriptor& intent,
                           const std::vector<marketplace::ResourceOffer>& catalog,
                           const std::vector<core::PlanAssignment>& assignments);

} // namespace netslice::builder
