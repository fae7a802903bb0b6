#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netslice/core/types.hpp"
#include "netslice/marketplace/marketplace.hpp"
#include "netslice/store/event_log.hpp"

namespace netslice::store {

struct StoredSlice {
    core::SliceRecord record;
    std::vector<marketplace::Reservation> reservations;   // active ones only
    bool operator==(const StoredSlice&) const = default;
};

// Event-sourced slice database. Directory layout:
//   <dir>/events.log     append-only event lines
//   <dir>/snapshot.txt   optional; folded state + the seq it covers
// Every mutation appends one event (flushed) and folds it into memory, so the
// in-memory state always equals a replay of the file. A snapshot is itself a
// list of synthetic events that recreate the live state, folded by the same
// code path as the log.
class SliceStore {
public:
    explicit SliceStore(std::string dir, std::uint64_t snapshot_every = 0);

    void slice_created(const std::string& id, const core::IntentDescriptor& intent,
                       std::uint64_t ts);
    void phase_changed(const std::string& id, core::LifecyclePhase phase, std::uint64_t ts);
    void blueprint_set(const std::string& id, const core::AllocationPlan& plan, std::uint64_t ts);
    void reservation_taken(const std::string& id, const marketplace::Reservation& rsv,
                           std::uint64_t ts);
    void reservation_released(const std::string& id, const std::string& reservation_id,
                              std::uint64_t ts);
    void allocation_added(const std::string& id, const core::DomainAllocation& alloc,
                          std::uint64_t ts);
    void allocation_removed(const std::string& id, const std::string& offer_id, std::uint64_t ts);
    void kpi_snapshot(const std::string& id, const std::map<std::string, double>& kpis,
                      std::uint64_t ts);
    void note(const std::string& id, const std::string& text, std::uint64_t ts);

    bool exists(const std::string& id) const;
    const StoredSlice& get(const std::string& id) const;
    std::vector<std::string> slice_ids() const;   // ascending
    const std::map<std::string, StoredSlice>& slices() const { return slices_; }

    std::uint64_t last_seq() const { return log_.last_seq(); }
    std::uint64_t max_timestamp() const { return max_timestamp_; }
    const EventLog& log() const { return log_; }
    const std::string& dir() const { return dir_; }

    void save_snapshot();

    static std::string serialize_plan(const core::AllocationPlan& plan);
    static core::AllocationPlan parse_plan(const std::string& blob);
    static std::string serialize_metrics(const std::map<std::string, double>& m);
    static std::map<std::string, double> parse_metrics(const std::string& blob);

private:
    void apply(const StoreEvent& ev);
    void emit(std::uint64_t ts, std::string type, std::vector<std::string> fields);
    StoredSlice& require(const std::string& id, const std::string& op);

    std::string dir_;
    EventLog log_;
    std::uint64_t snapshot_every_ = 0;
    std::uint64_t snapshot_seq_ = 0;       // last seq covered by snapshot.txt
    std::uint64_t max_timestamp_ = 0;
    std::map<std::string, StoredSlice> slices_;
};

} // namespace netslice::store
