#include "netslice/security/audit.hpp"

#include <fstream>

#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::security {

namespace {

void append_line(const std::string& path, const std::string& line) {
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw data_error("audit: cannot open " + path);
    out << line << '\n';
    out.flush();
    if (!out) throw data_error("audit: write failed on " + path);
}

} // namespace

AuditLog::AuditLog(const std::string& path) : path_(path) {
    if (!util::file_exists(path)) {
        util::write_file(path, "");
        return;
    }
    const std::string text = util::read_file(path);
    std::size_t start = 0;
    std::size_t line_no = 1;
    while (true) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) break;   // partial trailing line = crash remnant
        const std::string line = text.substr(start, nl - start);
        if (!line.empty()) {
            AuditEvent e = parse_line(line, path, line_no);
            if (e.seq != entries_.size() + 1)
                throw data_error(path + ":" + std::to_string(line_no) +
                                 ": audit sequence gap (expected " +
                                 std::to_string(entries_.size() + 1) + ", got " +
                                 std::to_string(e.seq) + ")");
            entries_.push_back(std::move(e));
        }
        start = nl + 1;
        ++line_no;
    }
}

std::uint64_t AuditLog::append(std::uint64_t timestamp, const std::string& category,
                               const std::string& phase, const std::string& principal,
                               const std::string& detail) {
    std::lock_guard lock(mu_);
    AuditEvent e;
    e.seq = entries_.size() + 1;
    e.timestamp = timestamp;
    e.category = category;
    e.phase = phase;
    e.principal = principal;
    e.detail = detail;
    if (!path_.empty()) append_line(path_, format_line(e));
    entries_.push_back(std::move(e));
    return entries_.back().seq;
}

bool AuditLog::try_rewrite(std::uint64_t seq, const std::string& detail,
                           std::uint64_t timestamp) {
    append(timestamp, "Tampering", "-", "-",
           "rejected rewrite of audit entry " + std::to_string(seq) + ": " + detail);
    return false;
}

std::vector<AuditEvent> AuditLog::query(const AuditFilter& f) const {
    std::lock_guard lock(mu_);
    std::vector<AuditEvent> out;
    for (const auto& e : entries_) {
        if (f.category && e.category != *f.category) continue;
        if (f.phase && e.phase != *f.phase) continue;
        if (f.principal && e.principal != *f.principal) continue;
        if (f.min_seq && e.seq < *f.min_seq) continue;
        out.push_back(e);
    }
    return out;
}

std::size_t AuditLog::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

std::uint64_t AuditLog::last_seq() const {
    std::lock_guard lock(mu_);
    return entries_.empty() ? 0 : entries_.back().seq;
}

std::uint64_t AuditLog::max_timestamp() const {
    std::lock_guard lock(mu_);
    std::uint64_t out = 0;
    for (const auto& e : entries_) out = std::max(out, e.timestamp);
    return out;
}

std::string AuditLog::format_line(const AuditEvent& e) {
    return std::to_string(e.seq) + '|' + std::to_string(e.timestamp) + '|' +
           util::escape_field(e.category) + '|' + util::escape_field(e.phase) + '|' +
           util::escape_field(e.principal) + '|' + util::escape_field(e.detail);
}

AuditEvent AuditLog::parse_line(const std::string& line, const std::string& origin,
                                std::size_t line_no) {
    auto cols = util::split(line, '|');
    if (cols.size() != 6)
        throw data_error(origin + ":" + std::to_string(line_no) +
                         ": audit record needs 6 fields, got " +
                         std::to_string(cols.size()));
    AuditEvent e;
    e.seq = static_cast<std::uint64_t>(util::parse_int(cols[0], "seq"));
    e.timestamp = static_cast<std::uint64_t>(util::parse_int(cols[1], "timestamp"));
    e.category = util::unescape_field(cols[2]);
    e.phase = util::unescape_field(cols[3]);
    e.principal = util::unescape_field(cols[4]);
    e.detail = util::unescape_field(cols[5]);
    return e;
}

} // namespace netslice::security
