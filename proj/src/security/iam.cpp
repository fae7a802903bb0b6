#include "netslice/security/iam.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"

namespace netslice::security {

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw internal_error("sha256 digest failed");
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

std::string_view principal_kind_name(PrincipalKind k) {
    switch (k) {
        case PrincipalKind::Experimenter: return "experimenter";
        case PrincipalKind::Tenant: return "tenant";
        case PrincipalKind::ArchitectureElement: return "element";
    }
    return "?";
}

PrincipalKind parse_principal_kind(std::string_view s) {
    if (s == "experimenter") return PrincipalKind::Experimenter;
    if (s == "tenant") return PrincipalKind::Tenant;
    if (s == "element") return PrincipalKind::ArchitectureElement;
    throw usage_error("unknown principal kind: " + std::string(s));
}

Iam::Iam(AuditLog& audit, util::LogicalClock& clock, std::uint64_t token_seed)
    : audit_(audit), clock_(clock), token_state_(token_seed) {}

void Iam::set_audit_phase(const std::string& phase_label) {
    std::lock_guard lock(mu_);
    phase_label_ = phase_label;
}

std::string Iam::audit_phase() const {
    std::lock_guard lock(mu_);
    return phase_label_;
}

void Iam::register_principal(const std::string& id, PrincipalKind kind,
                             const std::string& secret,
                             const std::set<std::string>& granted_actions) {
    std::lock_guard lock(mu_);
    if (id.empty()) throw usage_error("principal id must be non-empty");
    if (principals_.count(id)) throw usage_error("principal already registered: " + id);
    Principal p;
    p.principal_id = id;
    p.kind = kind;
    p.credential_digest = sha256_hex(id + "\x1f" + secret);
    p.granted_actions = granted_actions;
    principals_[id] = std::move(p);
}

bool Iam::has_principal(const std::string& id) const {
    std::lock_guard lock(mu_);
    return principals_.count(id) != 0;
}

Principal Iam::authenticate(const std::string& id, const std::string& secret) {
    std::unique_lock lock(mu_);
    // Same digest + compare work whether or not the id exists, so timing does
    // not reveal which field was wrong.
    static const std::string dummy = sha256_hex("\x1f");
    const auto it = principals_.find(id);
    const std::string& stored = it == principals_.end() ? dummy : it->second.credential_digest;
    const std::string supplied = sha256_hex(id + "\x1f" + secret);
    const bool match = stored.size() == supplied.size() &&
                       CRYPTO_memcmp(stored.data(), supplied.data(), stored.size()) == 0 &&
                       it != principals_.end();
    if (!match) {
        const std::string phase = phase_label_;
        lock.unlock();
        audit_.append(clock_.tick(), "Impersonation", phase, id, "authentication failed");
        throw security_error("authentication failed");
    }
    Principal p = it->second;
    channels_[channel_key_name(id, "orchestrator")] =
        "sess-" + std::to_string(util::splitmix64(token_state_ ^ util::fnv1a(id)));
    return p;
}

std::string Iam::mint_token_id() {
    static const char hex[] = "0123456789abcdef";
    // splitmix64 is a bijection, so distinct inputs give distinct halves and
    // token ids never collide, seeded or not.
    const std::uint64_t hi = util::splitmix64(token_state_ ^ (2 * issued_));
    const std::uint64_t lo = util::splitmix64(token_state_ ^ (2 * issued_ + 1));
    ++issued_;
    std::string out(32, '0');
    for (int i = 0; i < 16; ++i) {
        out[static_cast<std::size_t>(15 - i)] = hex[(hi >> (4 * i)) & 0xf];
        out[static_cast<std::size_t>(31 - i)] = hex[(lo >> (4 * i)) & 0xf];
    }
    return out;
}

Token Iam::issue_token(const Principal& principal, const std::string& action,
                       const std::string& target) {
    std::unique_lock lock(mu_);
    auto it = principals_.find(principal.principal_id);
    if (it == principals_.end() || !it->second.granted_actions.count(action)) {
        const std::string phase = phase_label_;
        lock.unlock();
        audit_.append(clock_.tick(), "AuthorizationDenied", phase, principal.principal_id,
                      "token issue denied for action " + action + " on " + target);
        throw security_error("not authorized for action " + action);
    }
    Token t;
    t.token_id = mint_token_id();
    t.principal_id = principal.principal_id;
    t.scoped_action = action;
    t.scoped_target = target;
    t.issued_at = clock_.tick();
    tokens_[t.token_id] = t;
    return t;
}

void Iam::validate_token(const std::string& token_id, const std::string& action,
                         const std::string& target) {
    std::unique_lock lock(mu_);
    const std::string phase = phase_label_;
    auto it = tokens_.find(token_id);
    if (it == tokens_.end()) {
        lock.unlock();
        audit_.append(clock_.tick(), "Impersonation", phase, "-",
                      "unknown token presented for " + action + " on " + target);
        throw security_error("invalid token");
    }
    Token& t = it->second;
    if (t.consumed) {
        const std::string who = t.principal_id;
        lock.unlock();
        audit_.append(clock_.tick(), "ReplayAttack", phase, who,
                      "token replayed for " + action + " on " + target);
        throw security_error("token already consumed");
    }
    if (t.scoped_action != action || t.scoped_target != target) {
        const std::string who = t.principal_id;
        lock.unlock();
        audit_.append(clock_.tick(), "Tampering", phase, who,
                      "token scope mismatch: issued for " + t.scoped_action + " on " +
                          t.scoped_target + ", presented for " + action + " on " + target);
        throw security_error("token scope mismatch");
    }
    t.consumed = true;
}

void Iam::authorize_interface_access(const std::string& principal_id,
                                     const std::string& interface_name) {
    std::unique_lock lock(mu_);
    auto it = principals_.find(principal_id);
    if (it == principals_.end() || !it->second.granted_actions.count("monitor")) {
        const std::string phase = phase_label_;
        lock.unlock();
        audit_.append(clock_.tick(), "InterfaceMonitoring", phase, principal_id,
                      "denied access to interface " + interface_name);
        throw security_error("interface access denied: " + interface_name);
    }
}

std::string Iam::channel_key_name(const std::string& a, const std::string& b) {
    return a < b ? a + "\x1f" + b : b + "\x1f" + a;
}

void Iam::establish_channel(const std::string& a, const std::string& b) {
    std::lock_guard lock(mu_);
    channels_[channel_key_name(a, b)] =
        "sess-" + std::to_string(util::splitmix64(token_state_ ^ util::fnv1a(a) ^
                                                  util::fnv1a(b)));
}

bool Iam::channel_keyed(const std::string& a, const std::string& b) const {
    std::lock_guard lock(mu_);
    return channels_.count(channel_key_name(a, b)) != 0;
}

void Iam::require_channel(const std::string& a, const std::string& b) {
    if (channel_keyed(a, b)) return;
    audit_.append(clock_.tick(), "Eavesdropping", audit_phase(), a,
                  "message refused on unkeyed channel to " + b);
    throw security_error("unkeyed channel: " + a + " <-> " + b);
}

std::uint64_t Iam::issued_token_count() const {
    std::lock_guard lock(mu_);
    return issued_;
}

} // namespace netslice::security
