#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "netslice/security/audit.hpp"
#include "netslice/util/clock.hpp"

namespace netslice::security {

std::string sha256_hex(std::string_view data);

enum class PrincipalKind { Experimenter, Tenant, ArchitectureElement };

std::string_view principal_kind_name(PrincipalKind k);
PrincipalKind parse_principal_kind(std::string_view s);

struct Principal {
    std::string principal_id;
    PrincipalKind kind = PrincipalKind::Tenant;
    std::string credential_digest;   // sha256 hex, never the secret itself
    std::set<std::string> granted_actions;
};

struct Token {
    std::string token_id;   // 32 hex chars, 128 bits from the seeded generator
    std::string principal_id;
    std::string scoped_action;
    std::string scoped_target;
    std::uint64_t issued_at = 0;
    bool consumed = false;
};

// Identity authority: registration, constant-time authentication, single-use
// scoped tokens, interface authorization, and per-pair session-key channels.
// Incidents are audited with the current phase label, which the runtime keeps
// pointed at the lifecycle phase the active slice is in.
class Iam {
  public:
    Iam(AuditLog& audit, util::LogicalClock& clock, std::uint64_t token_seed);

    void set_audit_phase(const std::string& phase_label);
    std::string audit_phase() const;

    void register_principal(const std::string& id, PrincipalKind kind,
                            const std::string& secret,
                            const std::set<std::string>& granted_actions);
    bool has_principal(const std::string& id) const;

    // Throws security_error on failure (constant-time digest compare, same
    // path for unknown id and wrong secret) and audits one Impersonation
    // incident. Success establishes a session-keyed channel with the
    // orchestrator and is not itself audited.
    Principal authenticate(const std::string& id, const std::string& secret);

    Token issue_token(const Principal& principal, const std::string& action,
                      const std::string& target);

    // Accepts each token at most once and only for its exact scope. Unknown
    // token -> Impersonation incident; consumed token -> ReplayAttack; scope
    // mismatch -> Tampering. Throws security_error in all three cases.
    void validate_token(const std::string& token_id, const std::string& action,
                        const std::string& target);

    // Interface access needs the `monitor` grant; denial audits one
    // InterfaceMonitoring incident and throws.
    void authorize_interface_access(const std::string& principal_id,
                                    const std::string& interface_name);

    // Session-key channels ("cryptography between the communication pairs").
    void establish_channel(const std::string& a, const std::string& b);
    bool channel_keyed(const std::string& a, const std::string& b) const;
    // Throws and audits one Eavesdropping incident when the pair never
    // agreed on a key.
    void require_channel(const std::string& a, const std::string& b);

    std::uint64_t issued_token_count() const;

  private:
    std::string mint_token_id();
    static std::string channel_key_name(const std::string& a, const std::string& b);

    AuditLog& audit_;
    util::LogicalClock& clock_;
    mutable std::mutex mu_;
    std::map<std::string, Principal> principals_;
    std::map<std::string, Token> tokens_;
    std::map<std::string, std::string> channels_;   // pair key -> session key
    std::uint64_t token_state_;
    std::uint64_t issued_ = 0;
    std::string phase_label_ = "-";
};

} // namespace netslice::security
