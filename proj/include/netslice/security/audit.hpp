#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace netslice::security {

// One security-database record. `category` is an attack category name for
// incidents or an operational tag (SliceCreate, SupervisionTick, ...) for
// orchestrator steps; `phase` is a lifecycle phase name or "-".
struct AuditEvent {
    std::uint64_t seq = 0;
    std::uint64_t timestamp = 0;
    std::string category;
    std::string phase;
    std::string principal;
    std::string detail;
    bool operator==(const AuditEvent&) const = default;
};

struct AuditFilter {
    std::optional<std::string> category;
    std::optional<std::string> phase;
    std::optional<std::string> principal;
    std::optional<std::uint64_t> min_seq;
};

// Append-only, totally ordered, gap-free sequence numbers starting at 1.
// With a path, every append goes straight to disk (one line, flushed) and
// construction replays the existing file.
class AuditLog {
  public:
    AuditLog() = default;
    explicit AuditLog(const std::string& path);

    std::uint64_t append(std::uint64_t timestamp, const std::string& category,
                         const std::string& phase, const std::string& principal,
                         const std::string& detail);

    // Never rewrites anything: appends a Tampering record about the attempt
    // and returns false.
    bool try_rewrite(std::uint64_t seq, const std::string& detail,
                     std::uint64_t timestamp);

    std::vector<AuditEvent> query(const AuditFilter& filter = {}) const;
    std::size_t size() const;
    std::uint64_t last_seq() const;
    std::uint64_t max_timestamp() const;

    static std::string format_line(const AuditEvent& e);
    static AuditEvent parse_line(const std::string& line, const std::string& origin,
                                 std::size_t line_no);

  private:
    mutable std::mutex mu_;
    std::vector<AuditEvent> entries_;
    std::string path_;   // empty = memory only
};

} // namespace netslice::security
