#include "netslice/util/text.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netslice/util/errors.hpp"

namespace netslice::util {

std::string fmt_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }
    return {buf, end};
}

double parse_double(std::string_view s, const std::string& what) {
    const std::string t = trim(s);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    // strtod flags ERANGE on subnormal results as well; only overflow to
    // infinity is a genuine range error.
    if (t.empty() || end != t.c_str() + t.size() || (errno == ERANGE && !std::isfinite(v))) {
        throw usage_error("invalid number for " + what + ": '" + t + "'");
    }
    return v;
}

long long parse_int(std::string_view s, const std::string& what) {
    const std::string t = trim(s);
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        throw usage_error("invalid integer for " + what + ": '" + t + "'");
    }
    return v;
}

bool parse_bool(std::string_view s, const std::string& what) {
    const std::string t = lower(trim(s));
    if (t == "true") return true;
    if (t == "false") return false;
    throw usage_error("invalid boolean for " + what + ": '" + t + "' (use true/false)");
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string escape_field(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '|': out += "\\p"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape_field(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            ++i;
            switch (s[i]) {
                case '\\': out += '\\'; break;
                case 'p': out += '|'; break;
                case 'n': out += '\n'; break;
                default: out += s[i];
            }
        } else {
            out += s[i];
        }
    }
    return out;
}

std::vector<KvLine> parse_kv_text(std::string_view text, const std::string& origin) {
    std::vector<KvLine> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw usage_error(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        }
        KvLine kv;
        kv.line_no = line_no;
        kv.key = trim(std::string_view(line).substr(0, eq));
        kv.value = trim(std::string_view(line).substr(eq + 1));
        if (kv.key.empty()) {
            throw usage_error(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        out.push_back(std::move(kv));
    }
    return out;
}

std::vector<KvLine> parse_kv_file(const std::string& path) {
    return parse_kv_text(read_file(path), path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw data_error("write failed: " + path);
}

bool file_exists(const std::string& path) { return std::filesystem::exists(path); }

} // namespace netslice::util
