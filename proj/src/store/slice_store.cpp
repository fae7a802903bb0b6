#include "netslice/store/slice_store.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "netslice/core/intent_io.hpp"
#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::store {

namespace {

constexpr char kEventsFile[] = "/events.log";
constexpr char kSnapshotFile[] = "/snapshot.txt";

[[noreturn]] void bad_state(const std::string& what) {
    throw data_error("slice store: " + what);
}

} // namespace

std::string SliceStore::serialize_plan(const core::AllocationPlan& plan) {
    std::string out;
    out += "score " + util::fmt_double(plan.total_score) + "\n";
    out += "price " + util::fmt_double(plan.total_price_per_hour) + "\n";
    out += "renewable " + util::fmt_double(plan.renewable_fraction) + "\n";
    for (const auto& a : plan.assignments) {
        out += "assign " + std::to_string(a.demand_index) + " " + std::to_string(a.amount) +
               " " + a.offer_id + "\n";
    }
    return out;
}

core::AllocationPlan SliceStore::parse_plan(const std::string& blob) {
    core::AllocationPlan plan;
    bool saw_score = false, saw_price = false, saw_renewable = false;
    for (const auto& raw : util::split(blob, '\n')) {
        std::string line = util::trim(raw);
        if (line.empty()) continue;
        auto space = line.find(' ');
        if (space == std::string::npos) bad_state("plan blob line without payload: " + line);
        std::string head = line.substr(0, space);
        std::string rest = line.substr(space + 1);
        if (head == "score") {
            plan.total_score = util::parse_double(rest, "plan score");
            saw_score = true;
        } else if (head == "price") {
            plan.total_price_per_hour = util::parse_double(rest, "plan price");
            saw_price = true;
        } else if (head == "renewable") {
            plan.renewable_fraction = util::parse_double(rest, "plan renewable");
            saw_renewable = true;
        } else if (head == "assign") {
            std::istringstream in(rest);
            std::string di_word, amount_word;
            if (!(in >> di_word >> amount_word)) bad_state("malformed assign line: " + line);
            core::PlanAssignment a;
            a.demand_index = static_cast<std::size_t>(util::parse_int(di_word, "assign demand index"));
            a.amount = util::parse_int(amount_word, "assign amount");
            std::string offer;
            std::getline(in, offer);
            a.offer_id = util::trim(offer);
            if (a.offer_id.empty()) bad_state("assign line without offer id: " + line);
            plan.assignments.push_back(std::move(a));
        } else {
            bad_state("unknown plan blob line: " + line);
        }
    }
    if (!saw_score || !saw_price || !saw_renewable) bad_state("plan blob missing totals");
    return plan;
}

std::string SliceStore::serialize_metrics(const std::map<std::string, double>& m) {
    std::string out;
    for (const auto& [name, value] : m) {
        if (name.empty() || name.find('=') != std::string::npos ||
            name.find('\n') != std::string::npos)
            throw internal_error("metric name not storable: " + name);
        out += name + "=" + util::fmt_double(value) + "\n";
    }
    return out;
}

std::map<std::string, double> SliceStore::parse_metrics(const std::string& blob) {
    std::map<std::string, double> m;
    for (const auto& raw : util::split(blob, '\n')) {
        std::string line = util::trim(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) bad_state("metric blob line without '=': " + line);
        m[line.substr(0, eq)] = util::parse_double(line.substr(eq + 1), "metric value");
    }
    return m;
}

SliceStore::SliceStore(std::string dir, std::uint64_t snapshot_every)
    : dir_(std::move(dir)), log_(dir_ + kEventsFile), snapshot_every_(snapshot_every) {
    const std::string snap_path = dir_ + kSnapshotFile;
    if (util::file_exists(snap_path)) {
        std::string text = util::read_file(snap_path);
        auto lines = util::split(text, '\n');
        if (lines.empty()) bad_state("snapshot file empty");
        std::istringstream head(lines[0]);
        std::string tag;
        std::uint64_t seq = 0, max_ts = 0;
        if (!(head >> tag >> seq >> max_ts) || tag != "snapshot")
            bad_state("snapshot header malformed: " + lines[0]);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (util::trim(lines[i]).empty()) continue;
            StoreEvent ev = EventLog::parse_line(lines[i], snap_path, i + 1);
            if (ev.seq != 0) bad_state("snapshot carries a non-synthetic event");
            apply(ev);
        }
        snapshot_seq_ = seq;
        max_timestamp_ = std::max(max_timestamp_, max_ts);
    }
    for (const auto& ev : log_.events()) {
        if (ev.seq <= snapshot_seq_) continue;
        apply(ev);
    }
}

StoredSlice& SliceStore::require(const std::string& id, const std::string& op) {
    auto it = slices_.find(id);
    if (it == slices_.end()) bad_state(op + " for unknown slice '" + id + "'");
    return it->second;
}

void SliceStore::apply(const StoreEvent& ev) {
    max_timestamp_ = std::max(max_timestamp_, ev.timestamp);
    const auto& f = ev.fields;
    auto want = [&](std::size_t n) {
        if (f.size() != n)
            bad_state(ev.type + " wants " + std::to_string(n) + " fields, got " +
                      std::to_string(f.size()));
    };
    if (ev.type == "slice-created") {
        want(2);
        if (slices_.count(f[0])) bad_state("duplicate slice-created for '" + f[0] + "'");
        StoredSlice s;
        s.record.slice_id = f[0];
        s.record.intent = core::parse_intent_text(f[1], "store");
        s.record.phase = core::LifecyclePhase::Preparation;
        s.record.created_at = ev.timestamp;
        s.record.phase_entered_at = ev.timestamp;
        slices_.emplace(f[0], std::move(s));
    } else if (ev.type == "phase-changed") {
        want(2);
        auto& s = require(f[0], ev.type);
        s.record.phase = core::parse_phase(f[1]);
        s.record.phase_entered_at = ev.timestamp;
    } else if (ev.type == "blueprint-set") {
        want(2);
        require(f[0], ev.type).record.blueprint = parse_plan(f[1]);
    } else if (ev.type == "reservation-taken") {
        want(4);
        auto& s = require(f[0], ev.type);
        marketplace::Reservation r;
        r.reservation_id = f[1];
        r.offer_id = f[2];
        r.amount = util::parse_int(f[3], "reservation amount");
        r.holder = f[0];
        s.reservations.push_back(std::move(r));
    } else if (ev.type == "reservation-released") {
        want(2);
        auto& s = require(f[0], ev.type);
        auto it = std::find_if(s.reservations.begin(), s.reservations.end(),
                               [&](const auto& r) { return r.reservation_id == f[1]; });
        if (it == s.reservations.end())
            bad_state("release of unknown reservation '" + f[1] + "'");
        s.reservations.erase(it);
    } else if (ev.type == "allocation-added") {
        want(7);
        auto& s = require(f[0], ev.type);
        core::DomainAllocation a;
        a.domain_id = f[1];
        a.offer_id = f[2];
        a.demand_index = static_cast<std::size_t>(util::parse_int(f[3], "allocation demand index"));
        a.amount = util::parse_int(f[4], "allocation amount");
        a.reservation_id = f[5];
        a.domain_handle = static_cast<std::uint64_t>(util::parse_int(f[6], "allocation handle"));
        s.record.allocations.push_back(std::move(a));
    } else if (ev.type == "allocation-removed") {
        want(2);
        auto& s = require(f[0], ev.type);
        // Keyed by offer: handles are per-domain counters and may collide
        // across domains, offers are held at most once per slice.
        auto it = std::find_if(s.record.allocations.begin(), s.record.allocations.end(),
                               [&](const auto& a) { return a.offer_id == f[1]; });
        if (it == s.record.allocations.end())
            bad_state("removal of unknown allocation offer " + f[1]);
        s.record.allocations.erase(it);
    } else if (ev.type == "kpi-snapshot") {
        want(2);
        require(f[0], ev.type).record.kpi_snapshot = parse_metrics(f[1]);
    } else if (ev.type == "note") {
        want(2);
        require(f[0], ev.type);
    } else {
        bad_state("unknown event type '" + ev.type + "'");
    }
}

void SliceStore::emit(std::uint64_t ts, std::string type, std::vector<std::string> fields) {
    log_.append(ts, std::move(type), std::move(fields));
    apply(log_.events().back());
    if (snapshot_every_ > 0 && log_.last_seq() - snapshot_seq_ >= snapshot_every_)
        save_snapshot();
}

void SliceStore::slice_created(const std::string& id, const core::IntentDescriptor& intent,
                               std::uint64_t ts) {
    emit(ts, "slice-created", {id, core::serialize_intent(intent)});
}

void SliceStore::phase_changed(const std::string& id, core::LifecyclePhase phase,
                               std::uint64_t ts) {
    emit(ts, "phase-changed", {id, std::string(core::phase_name(phase))});
}

void SliceStore::blueprint_set(const std::string& id, const core::AllocationPlan& plan,
                               std::uint64_t ts) {
    emit(ts, "blueprint-set", {id, serialize_plan(plan)});
}

void SliceStore::reservation_taken(const std::string& id, const marketplace::Reservation& rsv,
                                   std::uint64_t ts) {
    emit(ts, "reservation-taken",
         {id, rsv.reservation_id, rsv.offer_id, std::to_string(rsv.amount)});
}

void SliceStore::reservation_released(const std::string& id, const std::string& reservation_id,
                                      std::uint64_t ts) {
    emit(ts, "reservation-released", {id, reservation_id});
}

void SliceStore::allocation_added(const std::string& id, const core::DomainAllocation& alloc,
                                  std::uint64_t ts) {
    emit(ts, "allocation-added",
         {id, alloc.domain_id, alloc.offer_id, std::to_string(alloc.demand_index),
          std::to_string(alloc.amount), alloc.reservation_id,
          std::to_string(alloc.domain_handle)});
}

void SliceStore::allocation_removed(const std::string& id, const std::string& offer_id,
                                    std::uint64_t ts) {
    emit(ts, "allocation-removed", {id, offer_id});
}

void SliceStore::kpi_snapshot(const std::string& id, const std::map<std::string, double>& kpis,
                              std::uint64_t ts) {
    emit(ts, "kpi-snapshot", {id, serialize_metrics(kpis)});
}

void SliceStore::note(const std::string& id, const std::string& text, std::uint64_t ts) {
    emit(ts, "note", {id, text});
}

bool SliceStore::exists(const std::string& id) const { return slices_.count(id) != 0; }

const StoredSlice& SliceStore::get(const std::string& id) const {
    auto it = slices_.find(id);
    if (it == slices_.end()) bad_state("unknown slice '" + id + "'");
    return it->second;
}

std::vector<std::string> SliceStore::slice_ids() const {
    std::vector<std::string> ids;
    ids.reserve(slices_.size());
    for (const auto& [id, _] : slices_) ids.push_back(id);
    return ids;
}

void SliceStore::save_snapshot() {
    std::string out = "snapshot " + std::to_string(log_.last_seq()) + " " +
                      std::to_string(max_timestamp_) + "\n";
    auto synth = [&](std::uint64_t ts, const std::string& type,
                     std::vector<std::string> fields) {
        StoreEvent ev;
        ev.seq = 0;
        ev.timestamp = ts;
        ev.type = type;
        ev.fields = std::move(fields);
        out += EventLog::format_line(ev) + "\n";
    };
    for (const auto& [id, s] : slices_) {
        const auto& rec = s.record;
        synth(rec.created_at, "slice-created", {id, core::serialize_intent(rec.intent)});
        if (rec.blueprint)
            synth(rec.phase_entered_at, "blueprint-set", {id, serialize_plan(*rec.blueprint)});
        synth(rec.phase_entered_at, "phase-changed", {id, std::string(core::phase_name(rec.phase))});
        for (const auto& r : s.reservations)
            synth(rec.phase_entered_at, "reservation-taken",
                  {id, r.reservation_id, r.offer_id, std::to_string(r.amount)});
        for (const auto& a : rec.allocations)
            synth(rec.phase_entered_at, "allocation-added",
                  {id, a.domain_id, a.offer_id, std::to_string(a.demand_index),
                   std::to_string(a.amount), a.reservation_id, std::to_string(a.domain_handle)});
        if (!rec.kpi_snapshot.empty())
            synth(rec.phase_entered_at, "kpi-snapshot", {id, serialize_metrics(rec.kpi_snapshot)});
    }
    const std::string snap_path = dir_ + kSnapshotFile;
    const std::string tmp_path = snap_path + ".tmp";
    util::write_file(tmp_path, out);
    std::filesystem::rename(tmp_path, snap_path);
    snapshot_seq_ = log_.last_seq();
}

} // namespace netslice::store
