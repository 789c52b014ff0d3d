#include "bqc/protocol.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace bqc {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::BFK: return "bfk";
        case Variant::DoubleServer: return "double";
        case Variant::TripleServer: return "triple";
        case Variant::SingleServer: return "single";
    }
    throw SimError("unknown variant");
}

namespace {

Variant variant_from_string(const std::string& name) {
    if (name == "bfk") return Variant::BFK;
    if (name == "double") return Variant::DoubleServer;
    if (name == "triple") return Variant::TripleServer;
    if (name == "single") return Variant::SingleServer;
    throw ConfigError("unknown protocol variant: " + name);
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    if (j.contains("variant")) cfg.variant = variant_from_string(j.at("variant").get<std::string>());
    if (j.contains("classical_client")) cfg.classical_client = j.at("classical_client").get<bool>();
    if (j.contains("m")) cfg.m = j.at("m").get<int>();
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("p_forward")) cfg.p_forward = j.at("p_forward").get<double>();
    if (j.contains("decoys")) cfg.decoys = j.at("decoys").get<int>();
    if (j.contains("check_decoys")) cfg.check_decoys = j.at("check_decoys").get<int>();
    if (j.contains("adversary"))
        cfg.adversary = AdversarySpec::parse(j.at("adversary").get<std::string>());
    if (j.contains("adversary_role")) cfg.adversary_role = j.at("adversary_role").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("remote_basis_sign")) cfg.remote_basis_sign = j.at("remote_basis_sign").get<int>();
    if (j.contains("pattern_basis_sign"))
        cfg.pattern_basis_sign = j.at("pattern_basis_sign").get<int>();
    if (j.contains("forward_order")) {
        const std::string order = j.at("forward_order").get<std::string>();
        if (order == "original") {
            cfg.forward_order = ForwardOrder::Original;
        } else if (order == "shuffled") {
            cfg.forward_order = ForwardOrder::Shuffled;
        } else {
            throw ConfigError("forward_order must be 'original' or 'shuffled'");
        }
    }
    if (j.contains("hooks")) {
        const auto& h = j.at("hooks");
        if (h.contains("force_theta_zero"))
            cfg.hooks.force_theta_zero = h.at("force_theta_zero").get<bool>();
        if (h.contains("force_r_zero")) cfg.hooks.force_r_zero = h.at("force_r_zero").get<bool>();
    }
    return cfg;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["variant"] = to_string(cfg.variant);
    j["classical_client"] = cfg.classical_client;
    j["m"] = cfg.m;
    j["delta"] = cfg.delta;
    j["p_forward"] = cfg.p_forward;
    j["decoys"] = cfg.decoys;
    j["check_decoys"] = cfg.check_decoys;
    j["adversary"] = cfg.adversary.name();
    j["adversary_role"] = cfg.adversary_role;
    j["seed"] = cfg.seed;
    j["remote_basis_sign"] = cfg.remote_basis_sign;
    j["pattern_basis_sign"] = cfg.pattern_basis_sign;
    j["forward_order"] = cfg.forward_order == ForwardOrder::Original ? "original" : "shuffled";
    j["hooks"] = {{"force_theta_zero", cfg.hooks.force_theta_zero},
                  {"force_r_zero", cfg.hooks.force_r_zero}};
    return j;
}

void validate_config(RunConfig& cfg, const Computation& comp) {
    try {
        validate_computation(comp);
    } catch (const SimError& e) {
        throw ConfigError(std::string("invalid computation: ") + e.what());
    }
    if (cfg.m == 0) cfg.m = comp.graph.num_vertices;
    if (cfg.m != comp.graph.num_vertices)
        throw ConfigError("m does not match the computation's vertex count");
    if (cfg.m < 1) throw ConfigError("m must be positive");
    if (cfg.delta <= 0.0) throw ConfigError("delta must be positive");
    if (cfg.p_forward <= 0.0 || cfg.p_forward > 1.0)
        throw ConfigError("p_forward must be in (0, 1]");
    if (cfg.remote_basis_sign != 1 && cfg.remote_basis_sign != -1)
        throw ConfigError("remote_basis_sign must be +1 or -1");
    if (cfg.pattern_basis_sign != 1 && cfg.pattern_basis_sign != -1)
        throw ConfigError("pattern_basis_sign must be +1 or -1");
    if (cfg.classical_client && cfg.variant != Variant::SingleServer)
        throw ConfigError("classical_client applies to the single-server variant only");
    if (cfg.variant == Variant::SingleServer) {
        if (cfg.decoys < 1) throw ConfigError("need at least one decoy pair");
        if (cfg.check_decoys < 0 || cfg.check_decoys >= cfg.decoys)
            throw ConfigError("check_decoys must satisfy 0 <= l < h");
    }
    if (cfg.adversary_role != "auto") party_from_string(cfg.adversary_role);
}

std::vector<int> alice_forward(int count, double p_forward, Rng& rng) {
    if (p_forward < 0.0 || p_forward > 1.0) throw SimError("p_forward must be in [0, 1]");
    std::vector<int> forwarded;
    for (int k = 0; k < count; ++k)
        if (rng.bernoulli(p_forward)) forwarded.push_back(k);
    return forwarded;
}

PairingRecord choose_pairs(const std::vector<int>& first_half_survivors,
                           const std::vector<int>& second_half_survivors, int m, Rng& rng) {
    if (static_cast<int>(first_half_survivors.size()) < m ||
        static_cast<int>(second_half_survivors.size()) < m)
        throw ProtocolAbort(AbortReason::Retry, "fewer than m survivors in a half");
    auto pick = [&](std::vector<int> pool) {
        rng.shuffle(pool);
        pool.resize(static_cast<std::size_t>(m));
        std::sort(pool.begin(), pool.end());
        return pool;
    };
    PairingRecord rec;
    rec.s = pick(first_half_survivors);
    rec.t = pick(second_half_survivors);
    rng.shuffle(rec.t);  // uniform matching against the sorted s
    return rec;
}

bool residual_identity_holds(int remote_sign) {
    if (remote_sign != 1 && remote_sign != -1) return false;
    static int cache[2] = {-1, -1};
    int& slot = cache[(remote_sign + 1) / 2];
    if (slot < 0) {
        bool ok = true;
        for (int k = 0; k < 8 && ok; ++k) {
            for (int fi = 0; fi < 4 && ok; ++fi) {
                const BellLabel frame = BellLabel::from_index(fi);
                for (int b = 0; b < 2 && ok; ++b) {
                    Statevector sv = bell_state(frame);
                    ForcedBranchSource force({b});
                    try {
                        measure_rotated(sv, 0, tilde_angle(AngleS(k), frame), remote_sign, force);
                        Statevector partner = remove_qubits(sv, {0});
                        ok = equal_up_to_phase(partner, plus_state(AngleS(k).plus_pi(b)), 1e-12);
                    } catch (const SimError&) {
                        ok = false;
                    }
                }
            }
        }
        slot = ok ? 1 : 0;
    }
    return slot == 1;
}

bool pattern_sign_valid(int pattern_sign) {
    if (pattern_sign != 1 && pattern_sign != -1) return false;
    static int cache[2] = {-1, -1};
    int& slot = cache[(pattern_sign + 1) / 2];
    if (slot < 0) {
        bool ok = true;
        for (int k = 0; k < 8 && ok; ++k) {
            Statevector sv = plus_state(AngleS(k));
            ForcedBranchSource force({0});
            try {
                const MeasOutcome out = measure_rotated(sv, 0, AngleS(k), pattern_sign, force);
                ok = std::abs(out.probability - 1.0) <= 1e-12;
            } catch (const SimError&) {
                ok = false;
            }
        }
        slot = ok ? 1 : 0;
    }
    return slot == 1;
}

namespace {

ProtocolResult run_variant(const RunConfig& cfg, const Computation& comp, Variant expected,
                           bool classical, BranchSource* quantum, Observer* observer,
                           const char* fn) {
    if (cfg.variant != expected || cfg.classical_client != classical)
        throw ConfigError(std::string(fn) + " called with a mismatched variant config");
    return run_protocol(cfg, comp, quantum, observer);
}

}  // namespace

ProtocolResult run_bfk(const RunConfig& cfg, const Computation& comp, BranchSource* quantum,
                       Observer* observer) {
    return run_variant(cfg, comp, Variant::BFK, false, quantum, observer, "run_bfk");
}

ProtocolResult run_double_server(const RunConfig& cfg, const Computation& comp,
                                 BranchSource* quantum, Observer* observer) {
    return run_variant(cfg, comp, Variant::DoubleServer, false, quantum, observer,
                       "run_double_server");
}

ProtocolResult run_triple_server(const RunConfig& cfg, const Computation& comp,
                                 BranchSource* quantum, Observer* observer) {
    return run_variant(cfg, comp, Variant::TripleServer, false, quantum, observer,
                       "run_triple_server");
}

ProtocolResult run_single_server(const RunConfig& cfg, const Computation& comp,
                                 BranchSource* quantum, Observer* observer) {
    return run_variant(cfg, comp, Variant::SingleServer, false, quantum, observer,
                       "run_single_server");
}

ProtocolResult run_single_server_classical(const RunConfig& cfg, const Computation& comp,
                                           BranchSource* quantum, Observer* observer) {
    return run_variant(cfg, comp, Variant::SingleServer, true, quantum, observer,
                       "run_single_server_classical");
}

ProtocolResult run_with_retries(RunConfig cfg, const Computation& comp, std::uint64_t shot_seed,
                                int budget, Observer* observer) {
    const Rng shot(shot_seed);
    ProtocolResult result;
    for (int attempt = 0; attempt < budget; ++attempt) {
        cfg.seed = shot.substream(static_cast<std::uint64_t>(attempt)).seed();
        result = run_protocol(cfg, comp, nullptr, observer);
        if (!result.aborted || result.aborted->reason != AbortReason::Retry) return result;
    }
    return result;
}

std::map<std::string, double> exact_output_distribution(const RunConfig& cfg,
                                                        const Computation& comp,
                                                        BranchStats* stats) {
    return enumerate_branches(
        [&](BranchSource& src) {
            ProtocolResult r = run_protocol(cfg, comp, &src, nullptr);
            if (r.aborted)
                throw SimError("run aborted during exact enumeration: " + r.aborted->detail);
            std::string key;
            for (int b : r.output_bits) key.push_back(b ? '1' : '0');
            return key;
        },
        1e-12, stats);
}

}  // namespace bqc
