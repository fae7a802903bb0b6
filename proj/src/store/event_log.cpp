#include "netslice/store/event_log.hpp"

#include <filesystem>
#include <fstream>

#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::store {

namespace {

[[noreturn]] void corrupt(const std::string& origin, std::size_t line_no, const std::string& what) {
    throw data_error("event log " + origin + ":" + std::to_string(line_no) + ": " + what);
}

} // namespace

std::string EventLog::format_line(const StoreEvent& ev) {
    std::string line = std::to_string(ev.seq) + "|" + std::to_string(ev.timestamp) + "|" +
                       util::escape_field(ev.type);
    for (const auto& f : ev.fields) line += "|" + util::escape_field(f);
    return line;
}

StoreEvent EventLog::parse_line(const std::string& line, const std::string& origin,
                                std::size_t line_no) {
    auto parts = util::split(line, '|');
    if (parts.size() < 3) corrupt(origin, line_no, "wants at least seq|timestamp|type");
    StoreEvent ev;
    ev.seq = static_cast<std::uint64_t>(util::parse_int(parts[0], "event seq"));
    ev.timestamp = static_cast<std::uint64_t>(util::parse_int(parts[1], "event timestamp"));
    ev.type = util::unescape_field(parts[2]);
    for (std::size_t i = 3; i < parts.size(); ++i)
        ev.fields.push_back(util::unescape_field(parts[i]));
    return ev;
}

EventLog::EventLog(std::string path) : path_(std::move(path)) {
    namespace fs = std::filesystem;
    if (!fs::exists(path_)) {
        if (auto dir = fs::path(path_).parent_path(); !dir.empty()) fs::create_directories(dir);
        std::ofstream(path_).flush();
        return;
    }
    std::string text = util::read_file(path_);
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) break;   // crash remnant, drop it
        ++line_no;
        std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        StoreEvent ev = parse_line(line, path_, line_no);
        if (ev.seq != last_seq() + 1)
            corrupt(path_, line_no, "seq " + std::to_string(ev.seq) + " after " +
                                        std::to_string(last_seq()));
        events_.push_back(std::move(ev));
    }
}

std::uint64_t EventLog::append(std::uint64_t timestamp, std::string type,
                               std::vector<std::string> fields) {
    StoreEvent ev;
    ev.seq = last_seq() + 1;
    ev.timestamp = timestamp;
    ev.type = std::move(type);
    ev.fields = std::move(fields);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw data_error("event log " + path_ + ": cannot open for append");
    out << format_line(ev) << '\n';
    out.flush();
    if (!out) throw data_error("event log " + path_ + ": write failed");
    events_.push_back(std::move(ev));
    return events_.back().seq;
}

} // namespace netslice::store
