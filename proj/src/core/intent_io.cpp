#include "netslice/core/intent_io.hpp"

#include <sstream>

#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::core {

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line_no, const std::string& what) {
    throw usage_error("intent " + origin + ":" + std::to_string(line_no) + ": " + what);
}

Point parse_location(const std::string& value, const std::string& origin, std::size_t line_no) {
    auto parts = util::split(value, ',');
    if (parts.size() != 2) fail(origin, line_no, "location wants 'x,y'");
    return Point{util::parse_double(util::trim(parts[0]), "location.x"),
                 util::parse_double(util::trim(parts[1]), "location.y")};
}

ResourceDemand parse_demand(const std::string& value, const std::string& origin, std::size_t line_no) {
    std::istringstream in(value);
    std::string type_word, qty_word, unit_word;
    in >> type_word >> qty_word;
    if (type_word.empty() || qty_word.empty())
        fail(origin, line_no, "demand wants 'type quantity [unit-capacity]'");
    ResourceDemand d;
    try {
        d.type = parse_resource_type(type_word);
    } catch (const Error& e) {
        fail(origin, line_no, e.what());
    }
    d.quantity = util::parse_int(qty_word, "demand quantity");
    if (in >> unit_word) d.unit_capacity = util::parse_int(unit_word, "demand unit-capacity");
    std::string extra;
    if (in >> extra) fail(origin, line_no, "trailing tokens after demand");
    return d;
}

// "name <= threshold [elastic <demand-index>]"
std::pair<std::string, KppTarget> parse_kpp(const std::string& value, const std::string& origin,
                                            std::size_t line_no) {
    std::istringstream in(value);
    std::string name, op, thr_word;
    in >> name >> op >> thr_word;
    if (name.empty() || op.empty() || thr_word.empty())
        fail(origin, line_no, "kpp wants 'metric <=|>= threshold [elastic i]'");
    KppTarget t;
    if (op == "<=") t.comparator = KppComparator::LessEq;
    else if (op == ">=") t.comparator = KppComparator::GreaterEq;
    else fail(origin, line_no, "kpp comparator must be <= or >=");
    t.threshold = util::parse_double(thr_word, "kpp threshold");
    std::string word;
    if (in >> word) {
        if (word != "elastic") fail(origin, line_no, "unexpected token '" + word + "' in kpp");
        std::string idx_word;
        if (!(in >> idx_word)) fail(origin, line_no, "elastic wants a demand index");
        t.elastic_demand = static_cast<std::size_t>(util::parse_int(idx_word, "elastic demand index"));
        if (in >> word) fail(origin, line_no, "trailing tokens after kpp");
    }
    return {name, t};
}

} // namespace

IntentDescriptor parse_intent_text(const std::string& text, const std::string& origin) {
    IntentDescriptor intent;
    bool saw_tenant = false;
    for (const auto& kv : util::parse_kv_text(text, origin)) {
        const std::string& key = kv.key;
        const std::string& value = kv.value;
        if (key == "tenant") {
            intent.tenant_id = value;
            saw_tenant = true;
        } else if (key == "location") {
            intent.tenant_location = parse_location(value, origin, kv.line_no);
        } else if (key == "max-price-per-hour") {
            intent.max_price_per_hour = util::parse_double(value, key);
        } else if (key == "require-renewable") {
            intent.sustainability.require_renewable = util::parse_bool(value, key);
        } else if (key == "max-pue") {
            intent.sustainability.max_pue = util::parse_double(value, key);
        } else if (key.rfind("weight.", 0) == 0) {
            if (!intent.weight_overrides) intent.weight_overrides = ScoringWeights{};
            double v = util::parse_double(value, key);
            std::string which = key.substr(7);
            if (which == "pue") intent.weight_overrides->w_pue = v;
            else if (which == "renewable") intent.weight_overrides->w_renewable = v;
            else if (which == "comm") intent.weight_overrides->w_comm = v;
            else if (which == "price") intent.weight_overrides->w_price = v;
            else fail(origin, kv.line_no, "unknown weight '" + which + "'");
        } else if (key == "demand") {
            intent.demands.push_back(parse_demand(value, origin, kv.line_no));
        } else if (key == "kpp") {
            auto [name, target] = parse_kpp(value, origin, kv.line_no);
            if (!intent.kpp_targets.emplace(name, target).second)
                fail(origin, kv.line_no, "duplicate kpp metric '" + name + "'");
        } else {
            fail(origin, kv.line_no, "unknown key '" + key + "'");
        }
    }
    if (!saw_tenant) throw usage_error("intent " + origin + ": missing tenant");
    validate_intent(intent);
    return intent;
}

IntentDescriptor parse_intent_file(const std::string& path) {
    return parse_intent_text(util::read_file(path), path);
}

std::string serialize_intent(const IntentDescriptor& intent) {
    std::string out;
    out += "tenant = " + intent.tenant_id + "\n";
    out += "location = " + util::fmt_double(intent.tenant_location.x) + "," +
           util::fmt_double(intent.tenant_location.y) + "\n";
    if (intent.max_price_per_hour)
        out += "max-price-per-hour = " + util::fmt_double(*intent.max_price_per_hour) + "\n";
    out += std::string("require-renewable = ") +
           (intent.sustainability.require_renewable ? "true" : "false") + "\n";
    if (intent.sustainability.max_pue)
        out += "max-pue = " + util::fmt_double(*intent.sustainability.max_pue) + "\n";
    if (intent.weight_overrides) {
        const auto& w = *intent.weight_overrides;
        out += "weight.pue = " + util::fmt_double(w.w_pue) + "\n";
        out += "weight.renewable = " + util::fmt_double(w.w_renewable) + "\n";
        out += "weight.comm = " + util::fmt_double(w.w_comm) + "\n";
        out += "weight.price = " + util::fmt_double(w.w_price) + "\n";
    }
    for (const auto& d : intent.demands) {
        out += "demand = " + std::string(resource_type_name(d.type)) + " " +
               std::to_string(d.quantity) + " " + std::to_string(d.unit_capacity) + "\n";
    }
    for (const auto& [name, t] : intent.kpp_targets) {
        out += "kpp = " + name + (t.comparator == KppComparator::LessEq ? " <= " : " >= ") +
               util::fmt_double(t.threshold);
        if (t.elastic_demand) out += " elastic " + std::to_string(*t.elastic_demand);
        out += "\n";
    }
    return out;
}

} // namespace netslice::core
