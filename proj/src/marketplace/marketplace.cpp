#include "netslice/marketplace/marketplace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::marketplace {

void validate_offer(const ResourceOffer& offer) {
    if (offer.offer_id.empty()) throw usage_error("offer: offer_id must be non-empty");
    if (offer.owner_domain.empty())
        throw usage_error("offer " + offer.offer_id + ": owner_domain must be non-empty");
    if (!(offer.price_per_hour >= 0.0) || !std::isfinite(offer.price_per_hour))
        throw usage_error("offer " + offer.offer_id + ": price_per_hour must be >= 0");
    if (!(offer.pue >= 1.0) || !std::isfinite(offer.pue))
        throw usage_error("offer " + offer.offer_id + ": pue must be >= 1.0");
    if (!std::isfinite(offer.location.x) || !std::isfinite(offer.location.y))
        throw usage_error("offer " + offer.offer_id + ": location must be finite");
    if (offer.hops_to_core < 0)
        throw usage_error("offer " + offer.offer_id + ": hops must be >= 0");
    if (offer.capacity_total < 0 || offer.capacity_available < 0 ||
        offer.capacity_available > offer.capacity_total)
        throw usage_error("offer " + offer.offer_id + ": capacity out of range");
}

bool offer_matches(const ResourceOffer& offer, const OfferFilter& f) {
    if (f.resource_type && offer.resource_type != *f.resource_type) return false;
    if (f.renewable && offer.renewable != *f.renewable) return false;
    if (f.max_pue && offer.pue > *f.max_pue) return false;
    if (f.max_price && offer.price_per_hour > *f.max_price) return false;
    if (f.min_available && offer.capacity_available < *f.min_available) return false;
    return true;
}

std::string Marketplace::register_offer(const ResourceOffer& offer) {
    validate_offer(offer);
    if (offers_.count(offer.offer_id))
        throw usage_error("offer " + offer.offer_id + ": already registered");
    offers_[offer.offer_id] = offer;
    return offer.offer_id;
}

void Marketplace::withdraw_offer(const std::string& offer_id) {
    auto it = offers_.find(offer_id);
    if (it == offers_.end()) throw usage_error("unknown offer: " + offer_id);
    for (const auto& [rid, r] : reservations_)
        if (r.offer_id == offer_id)
            throw usage_error("offer " + offer_id + ": active reservation " + rid +
                              " prevents withdrawal");
    offers_.erase(it);
}

const ResourceOffer& Marketplace::get_offer(const std::string& offer_id) const {
    auto it = offers_.find(offer_id);
    if (it == offers_.end()) throw usage_error("unknown offer: " + offer_id);
    return it->second;
}

bool Marketplace::has_offer(const std::string& offer_id) const {
    return offers_.count(offer_id) != 0;
}

std::vector<ResourceOffer> Marketplace::query_offers(const OfferFilter& filter) const {
    std::vector<ResourceOffer> out;
    for (const auto& [id, offer] : offers_)   // map order = offer_id ascending
        if (offer_matches(offer, filter)) out.push_back(offer);
    return out;
}

Reservation Marketplace::reserve(const std::string& offer_id, std::int64_t amount,
                                 const std::string& holder) {
    auto it = offers_.find(offer_id);
    if (it == offers_.end()) throw usage_error("unknown offer: " + offer_id);
    if (amount < 1) throw usage_error("reserve: amount must be >= 1");
    if (amount > it->second.capacity_available)
        throw infeasible_error("offer " + offer_id + ": insufficient capacity (" +
                               std::to_string(it->second.capacity_available) +
                               " available, " + std::to_string(amount) + " requested)");
    Reservation r;
    r.reservation_id = "rsv-" + std::to_string(next_reservation_++);
    r.offer_id = offer_id;
    r.amount = amount;
    r.holder = holder;
    it->second.capacity_available -= amount;
    reservations_[r.reservation_id] = r;
    return r;
}

void Marketplace::release(const std::string& reservation_id) {
    auto it = reservations_.find(reservation_id);
    if (it == reservations_.end())
        throw usage_error("unknown reservation: " + reservation_id);
    auto oit = offers_.find(it->second.offer_id);
    if (oit != offers_.end()) oit->second.capacity_available += it->second.amount;
    reservations_.erase(it);
}

std::vector<Reservation> Marketplace::active_reservations() const {
    std::vector<Reservation> out;
    for (const auto& [id, r] : reservations_) out.push_back(r);
    return out;
}

bool Marketplace::check_conservation(std::string* broken) const {
    std::map<std::string, std::int64_t> reserved;
    for (const auto& [id, r] : reservations_) reserved[r.offer_id] += r.amount;
    for (const auto& [id, offer] : offers_) {
        if (offer.capacity_total != offer.capacity_available + reserved[id]) {
            if (broken) *broken = id;
            return false;
        }
    }
    return true;
}

void Marketplace::restore_reservation(const Reservation& r) {
    auto it = offers_.find(r.offer_id);
    if (it == offers_.end()) throw data_error("restore: unknown offer " + r.offer_id);
    if (reservations_.count(r.reservation_id))
        throw data_error("restore: duplicate reservation " + r.reservation_id);
    if (r.amount < 1 || r.amount > it->second.capacity_available)
        throw data_error("restore: reservation " + r.reservation_id +
                         " exceeds available capacity");
    it->second.capacity_available -= r.amount;
    reservations_[r.reservation_id] = r;
    // Keep fresh ids ahead of every restored numeric suffix.
    if (r.reservation_id.rfind("rsv-", 0) == 0) {
        std::uint64_t n = 0;
        for (char c : r.reservation_id.substr(4)) {
            if (c < '0' || c > '9') { n = 0; break; }
            n = n * 10 + static_cast<std::uint64_t>(c - '0');
        }
        if (n >= next_reservation_) next_reservation_ = n + 1;
    }
}

namespace {

constexpr std::string_view kCatalogHeader =
    "offer_id,resource_type,owner_domain,price_per_hour,renewable,pue,x,y,hops,capacity";

} // namespace

std::vector<ResourceOffer> parse_catalog_csv(const std::string& text,
                                             const std::string& origin) {
    auto lines = util::split(text, '\n');
    if (lines.empty() || util::trim(lines[0]) != kCatalogHeader)
        throw data_error(origin + ":1: catalog header must be `" +
                         std::string(kCatalogHeader) + "`");
    std::vector<ResourceOffer> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = util::trim(lines[i]);
        if (line.empty() || line[0] == '#') continue;
        const std::string where = origin + ":" + std::to_string(i + 1);
        auto cols = util::split(line, ',');
        if (cols.size() != 10)
            throw data_error(where + ": expected 10 columns, got " +
                             std::to_string(cols.size()));
        ResourceOffer o;
        o.offer_id = util::trim(cols[0]);
        try {
            o.resource_type = core::parse_resource_type(util::trim(cols[1]));
            o.owner_domain = util::trim(cols[2]);
            o.price_per_hour = util::parse_double(cols[3], "price_per_hour");
            o.renewable = util::parse_bool(cols[4], "renewable");
            o.pue = util::parse_double(cols[5], "pue");
            o.location.x = util::parse_double(cols[6], "x");
            o.location.y = util::parse_double(cols[7], "y");
            o.hops_to_core = util::parse_int(cols[8], "hops");
            o.capacity_total = util::parse_int(cols[9], "capacity");
            o.capacity_available = o.capacity_total;
            validate_offer(o);
        } catch (const Error& e) {
            throw data_error(where + ": " + e.what());
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<ResourceOffer> load_catalog_csv(const std::string& path) {
    return parse_catalog_csv(util::read_file(path), path);
}

std::string format_catalog_csv(const std::vector<ResourceOffer>& offers) {
    std::ostringstream out;
    out << kCatalogHeader << '\n';
    for (const auto& o : offers) {
        out << o.offer_id << ',' << core::resource_type_name(o.resource_type) << ','
            << o.owner_domain << ',' << util::fmt_double(o.price_per_hour) << ','
            << (o.renewable ? "true" : "false") << ',' << util::fmt_double(o.pue) << ','
            << util::fmt_double(o.location.x) << ',' << util::fmt_double(o.location.y)
            << ',' << o.hops_to_core << ',' << o.capacity_total << '\n';
    }
    return out.str();
}

} // namespace netslice::marketplace
