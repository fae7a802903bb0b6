#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netslice/core/types.hpp"

namespace netslice::marketplace {

struct ResourceOffer {
    std::string offer_id;
    core::ResourceType resource_type = core::ResourceType::VM;
    std::string owner_domain;
    double price_per_hour = 0.0;
    bool renewable = false;
    double pue = 1.0;
    core::Point location;
    std::int64_t hops_to_core = 0;
    std::int64_t capacity_total = 0;
    std::int64_t capacity_available = 0;
    bool operator==(const ResourceOffer&) const = default;
};

struct Reservation {
    std::string reservation_id;
    std::string offer_id;
    std::int64_t amount = 0;   // capacity units, >= 1
    std::string holder;        // slice id
    bool operator==(const Reservation&) const = default;
};

struct OfferFilter {
    std::optional<core::ResourceType> resource_type;
    std::optional<bool> renewable;
    std::optional<double> max_pue;
    std::optional<double> max_price;
    std::optional<std::int64_t> min_available;
};

// Throws usage_error naming the violated field.
void validate_offer(const ResourceOffer& offer);

bool offer_matches(const ResourceOffer& offer, const OfferFilter& filter);

// Single logical owner of all offers and reservations. Mutations are
// serialized by the caller (one registry per runtime, behind the
// orchestrator); queries return value snapshots.
class Marketplace {
  public:
    std::string register_offer(const ResourceOffer& offer);
    void withdraw_offer(const std::string& offer_id);

    const ResourceOffer& get_offer(const std::string& offer_id) const;
    bool has_offer(const std::string& offer_id) const;
    std::vector<ResourceOffer> query_offers(const OfferFilter& filter = {}) const;

    Reservation reserve(const std::string& offer_id, std::int64_t amount,
                        const std::string& holder);
    void release(const std::string& reservation_id);

    std::vector<Reservation> active_reservations() const;
    std::size_t offer_count() const { return offers_.size(); }

    // capacity_total == capacity_available + sum of active reservations,
    // per offer. Returns false naming the first broken offer.
    bool check_conservation(std::string* broken = nullptr) const;

    // Used by store replay to rebuild reservation state exactly, including
    // reservation ids minted before the restart.
    void restore_reservation(const Reservation& r);

  private:
    std::map<std::string, ResourceOffer> offers_;
    std::map<std::string, Reservation> reservations_;
    std::uint64_t next_reservation_ = 1;
};

// Catalog file: header `offer_id,resource_type,owner_domain,price_per_hour,
// renewable,pue,x,y,hops,capacity`, one offer per line, booleans true/false.
// capacity column is capacity_total; loaded offers start fully available.
std::vector<ResourceOffer> parse_catalog_csv(const std::string& text,
                                             const std::string& origin);
std::vector<ResourceOffer> load_catalog_csv(const std::string& path);
std::string format_catalog_csv(const std::vector<ResourceOffer>& offers);

} // namespace netslice::marketplace
