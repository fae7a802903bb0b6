#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "netslice/core/intent_io.hpp"
#include "netslice/core/types.hpp"
#include "netslice/runtime/config.hpp"
#include "netslice/runtime/runtime.hpp"
#include "netslice/scenario/attacks.hpp"
#include "netslice/scenario/demo.hpp"
#include "netslice/scenario/experiments.hpp"
#include "netslice/security/matrix.hpp"
#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace {

using namespace netslice;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Usage: return 2;
        case ErrorKind::Infeasible: return 3;
        case ErrorKind::DomainFailure: return 3;
        case ErrorKind::SecurityDenied: return 4;
        case ErrorKind::DataError: return 5;
        case ErrorKind::Internal: return 1;
    }
    return 1;
}

struct GlobalOptions {
    std::string config_file;
    std::string store_dir;
    std::optional<std::uint64_t> seed;
};

runtime::RuntimeConfig load_config(const GlobalOptions& g) {
    runtime::RuntimeConfig cfg;
    if (!g.config_file.empty()) cfg = runtime::parse_config_file(g.config_file);
    if (!g.store_dir.empty()) cfg.store_dir = g.store_dir;
    if (g.seed) cfg.seed = *g.seed;
    return cfg;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

void print_plan(const runtime::Runtime& rt, const core::SliceRecord& rec,
                std::ostream& out) {
    if (!rec.blueprint) return;
    const auto& plan = *rec.blueprint;
    out << pad("demand", 8) << pad("offer", 12) << pad("domain", 13) << pad("amount", 8)
        << pad("price/h", 9) << pad("renewable", 11) << "pue\n";
    for (const auto& a : plan.assignments) {
        const auto& offer = rt.market.get_offer(a.offer_id);
        out << pad(std::to_string(a.demand_index), 8) << pad(a.offer_id, 12)
            << pad(offer.owner_domain, 13) << pad(std::to_string(a.amount), 8)
            << pad(util::fmt_double(offer.price_per_hour), 9)
            << pad(offer.renewable ? "yes" : "no", 11) << util::fmt_double(offer.pue)
            << "\n";
    }
    out << "score " << util::fmt_double(plan.total_score) << "  price/h "
        << util::fmt_double(plan.total_price_per_hour) << "  renewable "
        << util::fmt_double(plan.renewable_fraction) << "\n";
}

int cmd_slice_create(const GlobalOptions& g, const std::string& intent_file,
                     const std::string& principal, const std::string& secret) {
    auto intent = core::parse_intent_file(intent_file);
    runtime::Runtime rt(load_config(g));
    const auto token = rt.issue_token_for(principal, secret, "slice.create",
                                          intent.tenant_id);
    const auto slice_id = rt.orch.create_slice(intent, token);
    const auto rec = rt.orch.slice(slice_id);
    std::cout << "slice " << slice_id << "\n";
    print_plan(rt, rec, std::cout);
    return 0;
}

int cmd_slice_status(const GlobalOptions& g, const std::string& slice_id) {
    runtime::Runtime rt(load_config(g));
    const auto& stored = rt.slices.get(slice_id);
    const auto& rec = stored.record;
    std::cout << "slice " << rec.slice_id << "\n";
    std::cout << "phase " << core::phase_name(rec.phase) << "\n";
    std::cout << "tenant " << rec.intent.tenant_id << "\n";
    std::cout << "created_at " << rec.created_at << "  phase_entered_at "
              << rec.phase_entered_at << "\n";
    if (rec.blueprint) print_plan(rt, rec, std::cout);
    std::cout << "allocations " << rec.allocations.size() << "\n";
    for (const auto& al : rec.allocations)
        std::cout << "  domain=" << al.domain_id << " offer=" << al.offer_id
                  << " demand=" << al.demand_index << " amount=" << al.amount
                  << " handle=" << al.domain_handle << "\n";
    if (!rec.kpi_snapshot.empty()) {
        std::cout << "kpis\n";
        for (const auto& [name, value] : rec.kpi_snapshot)
            std::cout << "  " << name << "=" << util::fmt_double(value) << "\n";
    }
    return 0;
}

int cmd_slice_decommission(const GlobalOptions& g, const std::string& slice_id,
                           const std::string& principal, const std::string& secret) {
    runtime::Runtime rt(load_config(g));
    const auto token = rt.issue_token_for(principal, secret, "slice.decommission",
                                          slice_id);
    rt.orch.decommission(slice_id, token);
    std::cout << "slice " << slice_id << " terminated\n";
    return 0;
}

int cmd_offers_list(const GlobalOptions& g) {
    runtime::Runtime rt(load_config(g));
    const auto offers = rt.market.query_offers();
    std::cout << pad("offer", 12) << pad("type", 14) << pad("domain", 13)
              << pad("price/h", 9) << pad("renewable", 11) << pad("pue", 6)
              << pad("hops", 6) << "available/total\n";
    for (const auto& o : offers)
        std::cout << pad(o.offer_id, 12)
                  << pad(std::string(core::resource_type_name(o.resource_type)), 14)
                  << pad(o.owner_domain, 13) << pad(util::fmt_double(o.price_per_hour), 9)
                  << pad(o.renewable ? "yes" : "no", 11) << pad(util::fmt_double(o.pue), 6)
                  << pad(std::to_string(o.hops_to_core), 6) << o.capacity_available << "/"
                  << o.capacity_total << "\n";
    return 0;
}

int cmd_audit(const GlobalOptions& g, const security::AuditFilter& filter) {
    runtime::Runtime rt(load_config(g));
    for (const auto& e : rt.audit.query(filter))
        std::cout << security::AuditLog::format_line(e) << "\n";
    return 0;
}

int cmd_experiment_ddos(const GlobalOptions& g, const scenario::DdosOptions& options,
                        const std::string& out_dir) {
    runtime::Runtime rt(load_config(g));
    const auto report = scenario::run_ddos_experiment(rt, options);
    scenario::write_ddos_report(report, out_dir);
    std::cout << report.summary;
    std::cout << "report files in " << out_dir << "\n";
    return 0;
}

int cmd_experiment_energy(const GlobalOptions& g, const scenario::EnergyOptions& options,
                          const std::string& out_dir) {
    runtime::Runtime rt(load_config(g));
    const auto report = scenario::run_energy_experiment(rt, options);
    scenario::write_energy_report(report, out_dir);
    std::cout << report.summary;
    std::cout << "report files in " << out_dir << "\n";
    return 0;
}

int cmd_simulate_attack(const GlobalOptions& g, const std::string& category,
                        const std::string& phase, bool all) {
    runtime::Runtime rt(load_config(g));
    if (all) {
        const auto outcomes = scenario::simulate_all_attacks(rt);
        for (const auto& o : outcomes)
            std::cout << "contained " << security::attack_name(o.category) << " in "
                      << core::phase_name(o.phase) << " (audit seq " << o.incident_seq
                      << ")\n";
        std::cout << outcomes.size() << " cells contained\n";
        return 0;
    }
    if (category.empty() || phase.empty())
        throw usage_error("simulate attack needs --category and --phase (or --all)");
    const auto o = scenario::simulate_attack(rt, security::parse_attack(category),
                                             core::parse_phase(phase));
    std::cout << "contained " << security::attack_name(o.category) << " in "
              << core::phase_name(o.phase) << " (audit seq " << o.incident_seq << ")\n";
    std::cout << o.detail << "\n";
    return 0;
}

int cmd_demo(const GlobalOptions& g, std::size_t ticks, const std::string& transcript_file) {
    runtime::Runtime rt(load_config(g));
    const auto result = scenario::run_demo(rt, {ticks});
    std::cout << result.transcript;
    if (!transcript_file.empty()) util::write_file(transcript_file, result.transcript);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-domain network slice orchestration testbed"};
    app.require_subcommand(1);

    GlobalOptions g;
    std::uint64_t seed_value = 0;
    app.add_option("--config", g.config_file, "configuration file");
    app.add_option("--store-dir", g.store_dir, "state directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", seed_value, "global seed (overrides config)");

    auto* slice = app.add_subcommand("slice", "slice lifecycle operations");
    slice->require_subcommand(1);

    std::string intent_file, principal = "alice", secret = "alice-secret";
    auto* create = slice->add_subcommand("create", "build and instantiate a slice");
    create->add_option("intent-file", intent_file, "intent description file")->required();
    create->add_option("--principal", principal, "acting principal id");
    create->add_option("--secret", secret, "principal secret");

    std::string status_id;
    auto* status = slice->add_subcommand("status", "print one slice record");
    status->add_option("slice-id", status_id)->required();

    std::string decom_id;
    auto* decom = slice->add_subcommand("decommission", "tear a slice down");
    decom->add_option("slice-id", decom_id)->required();
    decom->add_option("--principal", principal, "acting principal id");
    decom->add_option("--secret", secret, "principal secret");

    auto* offers = app.add_subcommand("offers", "marketplace queries");
    offers->require_subcommand(1);
    offers->add_subcommand("list", "print the offer catalog");

    auto* experiment = app.add_subcommand("experiment", "scripted studies");
    experiment->require_subcommand(1);

    scenario::DdosOptions ddos_options;
    std::string ddos_dataset, ddos_out = "reports/ddos";
    bool ddos_synthetic = false;
    auto* ddos = experiment->add_subcommand("ddos", "flow classifier sweep and gate replay");
    ddos->add_option("--dataset", ddos_dataset, "labeled flow CSV");
    ddos->add_flag("--synthetic", ddos_synthetic, "use the generated dataset");
    ddos->add_option("--k-sweep", ddos_options.k_max, "largest k to try");
    ddos->add_option("--repeats", ddos_options.repeats, "splits per k");
    ddos->add_option("--out", ddos_out, "report directory");

    scenario::EnergyOptions energy_options;
    std::string energy_out = "reports/energy";
    auto* energy = experiment->add_subcommand("energy", "federated consumption forecasting");
    energy->add_option("--rounds", energy_options.rounds, "federation rounds");
    energy->add_option("--horizon", energy_options.horizon, "forecast steps");
    energy->add_option("--epochs-per-round", energy_options.epochs_per_round,
                       "local epochs each round");
    energy->add_option("--out", energy_out, "report directory");

    auto* audit = app.add_subcommand("audit", "print security database entries");
    std::string f_category, f_phase, f_principal;
    std::uint64_t f_min_seq = 0;
    audit->add_option("--category", f_category, "category filter");
    audit->add_option("--phase", f_phase, "phase filter");
    audit->add_option("--principal", f_principal, "principal filter");
    auto* min_seq_opt = audit->add_option("--min-seq", f_min_seq, "smallest seq to print");

    auto* simulate = app.add_subcommand("simulate", "containment scenarios");
    simulate->require_subcommand(1);
    std::string atk_category, atk_phase;
    bool atk_all = false;
    auto* attack = simulate->add_subcommand("attack", "inject one attack and verify audit");
    attack->add_option("--category", atk_category, "attack category");
    attack->add_option("--phase", atk_phase, "lifecycle phase");
    attack->add_flag("--all", atk_all, "every applicable cell");

    std::size_t demo_ticks = 3;
    std::string demo_transcript;
    auto* demo = app.add_subcommand("demo", "end-to-end slice story");
    demo->add_option("--ticks", demo_ticks, "supervision rounds");
    demo->add_option("--transcript", demo_transcript, "also write the transcript here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (*seed_opt) g.seed = seed_value;

    try {
        if (create->parsed()) return cmd_slice_create(g, intent_file, principal, secret);
        if (status->parsed()) return cmd_slice_status(g, status_id);
        if (decom->parsed()) return cmd_slice_decommission(g, decom_id, principal, secret);
        if (offers->parsed()) return cmd_offers_list(g);
        if (ddos->parsed()) {
            if (!ddos_dataset.empty()) ddos_options.dataset_file = ddos_dataset;
            else if (!ddos_synthetic)
                throw usage_error("experiment ddos needs --dataset or --synthetic");
            return cmd_experiment_ddos(g, ddos_options, ddos_out);
        }
        if (energy->parsed()) return cmd_experiment_energy(g, energy_options, energy_out);
        if (audit->parsed()) {
            security::AuditFilter filter;
            if (!f_category.empty()) filter.category = f_category;
            if (!f_phase.empty()) filter.phase = f_phase;
            if (!f_principal.empty()) filter.principal = f_principal;
            if (*min_seq_opt) filter.min_seq = f_min_seq;
            return cmd_audit(g, filter);
        }
        if (attack->parsed()) return cmd_simulate_attack(g, atk_category, atk_phase, atk_all);
        if (demo->parsed()) return cmd_demo(g, demo_ticks, demo_transcript);
        throw usage_error("no command given");
    } catch (const Error& e) {
        std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error (Internal): " << e.what() << "\n";
        return 1;
    }
}
