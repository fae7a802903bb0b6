#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netslice::util {

// Shortest decimal text that parses back to the identical 64-bit float.
std::string fmt_double(double v);

double parse_double(std::string_view s, const std::string& what);
long long parse_int(std::string_view s, const std::string& what);
bool parse_bool(std::string_view s, const std::string& what);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string lower(std::string_view s);

// Escapes '|', '\' and newlines so a field can live in a '|'-separated record.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

// One parsed line of a flat key/value file: "key = value" with '#' comments.
struct KvLine {
    int line_no = 0;
    std::string key;
    std::string value;
};

// Parses the intent/config file format. Throws Error(Usage) naming the line
// on malformed content. Blank lines and comments are skipped.
std::vector<KvLine> parse_kv_file(const std::string& path);
std::vector<KvLine> parse_kv_text(std::string_view text, const std::string& origin);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
bool file_exists(const std::string& path);

} // namespace netslice::util
