#include "netslice/runtime/config.hpp"

#include <sstream>

#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::runtime {

namespace {

[[noreturn]] void fail(const std::string& origin, int line_no, const std::string& what) {
    throw usage_error("config " + origin + ":" + std::to_string(line_no) + ": " + what);
}

// "id kind secret grant,grant,..."; grants optional.
PrincipalSeed parse_principal(const std::string& value, const std::string& origin, int line_no) {
    std::istringstream in(value);
    PrincipalSeed p;
    std::string kind_word;
    if (!(in >> p.id >> kind_word >> p.secret))
        fail(origin, line_no, "principal wants 'id kind secret [grant,...]'");
    try {
        p.kind = security::parse_principal_kind(kind_word);
    } catch (const Error& e) {
        fail(origin, line_no, e.what());
    }
    std::string grants_word;
    if (in >> grants_word)
        for (const auto& g : util::split(grants_word, ','))
            if (!g.empty()) p.grants.insert(g);
    std::string extra;
    if (in >> extra) fail(origin, line_no, "trailing tokens after principal");
    return p;
}

} // namespace

RuntimeConfig parse_config_text(const std::string& text, const std::string& origin) {
    RuntimeConfig c;
    for (const auto& kv : util::parse_kv_text(text, origin)) {
        const std::string& key = kv.key;
        const std::string& value = kv.value;
        if (key == "store-dir") c.store_dir = value;
        else if (key == "catalog-file") c.catalog_file = value;
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(util::parse_int(value, key));
        else if (key == "trace-hours")
            c.trace_hours = static_cast<std::size_t>(util::parse_int(value, key));
        else if (key == "rate-limit") c.rate_limit = util::parse_int(value, key);
        else if (key == "fail-open-model") c.fail_open_model = util::parse_bool(value, key);
        else if (key == "hop-weight") c.hop_weight = util::parse_double(value, key);
        else if (key == "weight.pue") c.default_weights.w_pue = util::parse_double(value, key);
        else if (key == "weight.renewable")
            c.default_weights.w_renewable = util::parse_double(value, key);
        else if (key == "weight.comm") c.default_weights.w_comm = util::parse_double(value, key);
        else if (key == "weight.price") c.default_weights.w_price = util::parse_double(value, key);
        else if (key == "knn.k") c.knn_k = static_cast<int>(util::parse_int(value, key));
        else if (key == "forecaster.window")
            c.forecaster.window = static_cast<std::size_t>(util::parse_int(value, key));
        else if (key == "forecaster.hidden")
            c.forecaster.hidden = static_cast<std::size_t>(util::parse_int(value, key));
        else if (key == "forecaster.learning-rate")
            c.forecaster.learning_rate = util::parse_double(value, key);
        else if (key == "forecaster.epochs")
            c.forecaster.epochs = static_cast<std::size_t>(util::parse_int(value, key));
        else if (key == "forecaster.seed")
            c.forecaster.seed = static_cast<std::uint64_t>(util::parse_int(value, key));
        else if (key == "snapshot-every")
            c.snapshot_every = static_cast<std::uint64_t>(util::parse_int(value, key));
        else if (key == "principal")
            c.principals.push_back(parse_principal(value, origin, kv.line_no));
        else fail(origin, kv.line_no, "unknown key '" + key + "'");
    }
    if (c.store_dir.empty()) throw usage_error("config " + origin + ": store-dir must be set");
    if (c.rate_limit < 1) throw usage_error("config " + origin + ": rate-limit must be >= 1");
    if (c.knn_k < 1) throw usage_error("config " + origin + ": knn.k must be >= 1");
    return c;
}

RuntimeConfig parse_config_file(const std::string& path) {
    RuntimeConfig c = parse_config_text(util::read_file(path), path);
    if (!c.catalog_file.empty() && !util::file_exists(c.catalog_file))
        throw usage_error("config " + path + ": catalog-file does not exist: " + c.catalog_file);
    return c;
}

std::string serialize_config(const RuntimeConfig& c) {
    std::string out;
    out += "store-dir = " + c.store_dir + "\n";
    if (!c.catalog_file.empty()) out += "catalog-file = " + c.catalog_file + "\n";
    out += "seed = " + std::to_string(c.seed) + "\n";
    out += "trace-hours = " + std::to_string(c.trace_hours) + "\n";
    out += "rate-limit = " + std::to_string(c.rate_limit) + "\n";
    out += std::string("fail-open-model = ") + (c.fail_open_model ? "true" : "false") + "\n";
    out += "hop-weight = " + util::fmt_double(c.hop_weight) + "\n";
    out += "weight.pue = " + util::fmt_double(c.default_weights.w_pue) + "\n";
    out += "weight.renewable = " + util::fmt_double(c.default_weights.w_renewable) + "\n";
    out += "weight.comm = " + util::fmt_double(c.default_weights.w_comm) + "\n";
    out += "weight.price = " + util::fmt_double(c.default_weights.w_price) + "\n";
    out += "knn.k = " + std::to_string(c.knn_k) + "\n";
    out += "forecaster.window = " + std::to_string(c.forecaster.window) + "\n";
    out += "forecaster.hidden = " + std::to_string(c.forecaster.hidden) + "\n";
    out += "forecaster.learning-rate = " + util::fmt_double(c.forecaster.learning_rate) + "\n";
    out += "forecaster.epochs = " + std::to_string(c.forecaster.epochs) + "\n";
    out += "forecaster.seed = " + std::to_string(c.forecaster.seed) + "\n";
    out += "snapshot-every = " + std::to_string(c.snapshot_every) + "\n";
    for (const auto& p : c.principals) {
        std::string grants;
        for (const auto& g : p.grants) {
            if (!grants.empty()) grants += ",";
            grants += g;
        }
        out += "principal = " + p.id + " " + std::string(security::principal_kind_name(p.kind)) +
               " " + p.secret + (grants.empty() ? "" : " " + grants) + "\n";
    }
    return out;
}

} // namespace netslice::runtime
