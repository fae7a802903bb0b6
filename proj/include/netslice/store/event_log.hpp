#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace netslice::store {

struct StoreEvent {
    std::uint64_t seq = 0;        // 1-based, contiguous within a log
    std::uint64_t timestamp = 0;  // logical clock value at append time
    std::string type;
    std::vector<std::string> fields;
    bool operator==(const StoreEvent&) const = default;
};

// Append-only event file, one record per line:
//   seq|timestamp|type|field...
// Every append is flushed before returning. Loading accepts only complete
// (newline-terminated) lines; a partial trailing line is a crash remnant and
// is dropped, anything else malformed is a data error.
class EventLog {
public:
    explicit EventLog(std::string path);

    std::uint64_t append(std::uint64_t timestamp, std::string type,
                         std::vector<std::string> fields);

    const std::vector<StoreEvent>& events() const { return events_; }
    std::uint64_t last_seq() const { return events_.empty() ? 0 : events_.back().seq; }
    const std::string& path() const { return path_; }

    static std::string format_line(const StoreEvent& ev);
    static StoreEvent parse_line(const std::string& line, const std::string& origin,
                                 std::size_t line_no);

private:
    std::string path_;
    std::vector<StoreEvent> events_;
};

} // namespace netslice::store
