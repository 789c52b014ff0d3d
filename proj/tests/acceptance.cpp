// Acceptance suite: each criterion prints one PASS/FAIL line and the binary
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bqc/analysis.hpp"
#include "bqc/protocol.hpp"

using namespace bqc;

namespace {

double tv(const std::map<std::string, double>& p, const std::map<std::string, double>& q) {
    double d = 0.0;
    for (const auto& [k, v] : p) {
        auto it = q.find(k);
        d += std::abs(v - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : q)
        if (!p.count(k)) d += v;
    return d / 2.0;
}

std::map<std::string, double> sample_distribution(const RunConfig& cfg, const Computation& comp,
                                                  int shots, std::uint64_t seed_salt) {
    std::map<std::string, double> freq;
    Rng master(cfg.seed + seed_salt);
    RunConfig shot_cfg = cfg;
    for (int s = 0; s < shots; ++s) {
        ProtocolResult r = run_with_retries(
            shot_cfg, comp, master.substream(static_cast<std::uint64_t>(s)).seed());
        if (r.aborted) throw SimError("unexpected abort while sampling: " + r.aborted->detail);
        std::string key;
        for (int b : r.output_bits) key.push_back(b ? '1' : '0');
        freq[key] += 1.0 / shots;
    }
    return freq;
}

RunConfig base_config(Variant variant) {
    RunConfig cfg;
    cfg.variant = variant;
    cfg.delta = 2.0;
    cfg.p_forward = 0.5;
    cfg.decoys = 4;
    cfg.check_decoys = 2;
    cfg.seed = 20240915;
    return cfg;
}

RunConfig enumeration_config(Variant variant, bool classical = false) {
    RunConfig cfg = base_config(variant);
    cfg.classical_client = classical;
    cfg.delta = 0.1;
    cfg.p_forward = 1.0;
    cfg.decoys = 1;
    cfg.check_decoys = 0;
    return cfg;
}

// --------------------------------------------------------------------------

bool criterion1_swap_oracle(std::string& detail) {
    for (int outcome = 0; outcome < 4; ++outcome) {
        Statevector sv = tensor(bell_state({0, 0}), bell_state({0, 0}));
        ForcedBranchSource force({outcome});
        const BellMeasResult res = measure_bell(sv, 1, 3, force);
        if (std::abs(res.probability - 0.25) > 1e-12) {
            detail = "branch probability deviates from 0.25";
            return false;
        }
        if (res.label.index() != outcome) {
            detail = "sampled label disagrees with the forced branch";
            return false;
        }
        const Statevector residual = remove_qubits(sv, {1, 3});
        if (!equal_up_to_phase(residual, bell_state(res.label), 1e-12)) {
            detail = "residual pair is not the outcome Bell state";
            return false;
        }
    }
    detail = "4 branches, probability 0.25 +- 1e-12, residual matches the label";
    return true;
}

bool criterion2_residual_identity(std::string& detail) {
    int cases = 0;
    for (int k = 0; k < 8; ++k) {
        for (int fi = 0; fi < 4; ++fi) {
            const BellLabel frame = BellLabel::from_index(fi);
            for (int b = 0; b < 2; ++b) {
                Statevector sv = bell_state(frame);
                ForcedBranchSource force({b});
                measure_rotated(sv, 0, tilde_angle(AngleS(k), frame), -1, force);
                const Statevector partner = remove_qubits(sv, {0});
                if (!equal_up_to_phase(partner, plus_state(AngleS(k).plus_pi(b)), 1e-12)) {
                    detail = "identity fails at theta k=" + std::to_string(k);
                    return false;
                }
                ++cases;
            }
        }
    }
    detail = std::to_string(cases) + " theta/frame/outcome cases within 1e-12";
    return true;
}

bool criterion3_end_to_end(std::string& detail) {
    const std::vector<std::vector<AngleS>> patterns = {
        {AngleS(1)}, {AngleS(1), AngleS(6)}, {AngleS(1), AngleS(2), AngleS(7)}};
    const int shots = 100000;
    double worst_sampled = 0.0, worst_exact = 0.0;
    for (const auto& phi : patterns) {
        const int m = static_cast<int>(phi.size()) + 1;
        Computation comp = linear_cluster_computation(m, phi);
        const auto oracle = output_distribution(comp.graph, comp.pattern);

        RunConfig cfg = base_config(Variant::SingleServer);
        const double sampled_tv = tv(sample_distribution(cfg, comp, shots, 100 + m), oracle);
        worst_sampled = std::max(worst_sampled, sampled_tv);
        if (sampled_tv > 0.02) {
            detail = "sampled TV " + std::to_string(sampled_tv) + " at m=" + std::to_string(m);
            return false;
        }
        if (m <= 3) {
            const auto exact = exact_output_distribution(enumeration_config(Variant::SingleServer), comp);
            const double exact_tv = tv(exact, oracle);
            worst_exact = std::max(worst_exact, exact_tv);
            if (exact_tv > 1e-9) {
                detail = "exact enumeration TV " + std::to_string(exact_tv) +
                         " at m=" + std::to_string(m);
                return false;
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst sampled TV %.4f (<= 0.02), worst exact TV %.1e (<= 1e-9)",
                  worst_sampled, worst_exact);
    detail = buf;
    return true;
}

bool criterion4_cross_protocol(std::string& detail) {
    Computation comp = linear_cluster_computation(2, {AngleS(1)});
    const int shots = 100000;
    struct Case {
        const char* name;
        Variant variant;
        bool classical;
    };
    const std::vector<Case> cases = {{"bfk", Variant::BFK, false},
                                     {"double", Variant::DoubleServer, false},
                                     {"triple", Variant::TripleServer, false},
                                     {"single", Variant::SingleServer, false},
                                     {"single-classical", Variant::SingleServer, true}};
    std::vector<std::map<std::string, double>> dists;
    std::uint64_t salt = 500;
    for (const Case& c : cases) {
        RunConfig cfg = base_config(c.variant);
        cfg.classical_client = c.classical;
        dists.push_back(sample_distribution(cfg, comp, shots, salt++));
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < dists.size(); ++a) {
        for (std::size_t b = a + 1; b < dists.size(); ++b) {
            const double d = tv(dists[a], dists[b]);
            worst = std::max(worst, d);
            if (d > 0.02) {
                detail = std::string(cases[a].name) + " vs " + cases[b].name + " TV " +
                         std::to_string(d);
                return false;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "5 variants, worst pairwise TV %.4f (<= 0.02)", worst);
    detail = buf;
    return true;
}

bool criterion5_detection(std::string& detail) {
    const int trials = 100000;
    Rng rng(7777);
    const DetectionReport per_decoy =
        detection_rate(1, 4, trials, AdversarySpec::parse("guess_bell"), rng);
    const double catch_rate = static_cast<double>(per_decoy.caught) / trials;
    if (std::abs(catch_rate - 0.75) > 0.01) {
        detail = "per-decoy catch rate " + std::to_string(catch_rate);
        return false;
    }
    std::string accepts;
    for (int l = 1; l <= 4; ++l) {
        Rng lrng(9900 + static_cast<std::uint64_t>(l));
        const DetectionReport rep =
            detection_rate(l, 5, trials, AdversarySpec::parse("guess_bell"), lrng);
        const double accept = static_cast<double>(rep.accepted_incorrect) / trials;
        const double expected = std::pow(0.25, l);
        const double sigma = std::sqrt(expected * (1.0 - expected) / trials);
        if (std::abs(accept - expected) > 3.0 * sigma) {
            detail = "acceptance at l=" + std::to_string(l) + " is " + std::to_string(accept) +
                     ", expected " + std::to_string(expected);
            return false;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%.5f", l > 1 ? ", " : "", accept);
        accepts += buf;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "catch 0.75 +- 0.01 (got %.4f); 4^-l acceptance for l=1..4: %s",
                  catch_rate, accepts.c_str());
    detail = buf;
    return true;
}

bool criterion6_blindness(std::string& detail) {
    const double equalizing = leak_demo(LeakScenario::Equalizing);
    const double constant_zero = leak_demo(LeakScenario::ConstantZero);
    const double short_n = leak_demo(LeakScenario::ShortN);
    if (equalizing > 1e-9) {
        detail = "equalizing leak score " + std::to_string(equalizing);
        return false;
    }
    if (constant_zero <= 0.0 || short_n <= 0.0) {
        detail = "leaky paddings scored zero";
        return false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "leak scores: equalizing %.1e, constant-zero %.3f, n=4 %.3f",
                  equalizing, constant_zero, short_n);
    detail = buf;
    return true;
}

bool criterion7_padding(std::string& detail) {
    Rng rng(31337);
    long checked = 0;
    for (int n : {8, 16, 24}) {
        for (int m = 1; m <= n / 8; ++m) {
            for (int trial = 0; trial < 1000; ++trial) {
                std::map<int, PadInput> real;
                while (static_cast<int>(real.size()) < m) {
                    real[rng.uniform_int(0, n - 1)] = {
                        AngleS(rng.uniform_int(0, 7)),
                        BellLabel::from_index(rng.uniform_int(0, 3))};
                }
                const PaddingRecord rec = pad_angles(real, n, rng);
                if (histogram_angles(rec.tilde).max_minus_min() > 1) {
                    detail = "histogram spread > 1 at n=" + std::to_string(n) +
                             ", m=" + std::to_string(m);
                    return false;
                }
                ++checked;
            }
        }
    }
    detail = std::to_string(checked) + " random instances, histogram max-min <= 1";
    return true;
}

bool criterion8_noncommunication(std::string& detail) {
    Computation comp = linear_cluster_computation(2, {AngleS(1)});
    RunConfig cfg = enumeration_config(Variant::DoubleServer);
    cfg.adversary = AdversarySpec::parse("leak_to_partner");
    const int seeds = 1000;
    for (int s = 0; s < seeds; ++s) {
        cfg.seed = static_cast<std::uint64_t>(s) + 1;
        const ProtocolResult r = run_double_server(cfg, comp);
        if (!r.aborted || r.aborted->reason != AbortReason::PolicyViolation) {
            detail = "seed " + std::to_string(s) + " did not abort on the illegal channel";
            return false;
        }
    }
    detail = std::to_string(seeds) + "/" + std::to_string(seeds) +
             " Bob1->Bob2 attempts ended in a policy abort";
    return true;
}

bool criterion9_forwarding(std::string& detail) {
    Rng rng(2718);
    const ForwardingEstimate est = forwarding_stats(10, 2.0, 0.5, 10000, rng);
    const double sigma = std::sqrt(est.exact * (1.0 - est.exact) / est.trials);
    if (std::abs(est.estimate - est.exact) > 3.0 * sigma) {
        detail = "estimate " + std::to_string(est.estimate) + " vs exact " +
                 std::to_string(est.exact);
        return false;
    }
    if (est.estimate <= 0.99) {
        detail = "success probability " + std::to_string(est.estimate) + " not above 0.99";
        return false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "estimate %.5f vs exact %.5f (3 sigma = %.5f), above 0.99",
                  est.estimate, est.exact, 3.0 * sigma);
    detail = buf;
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::string&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "swap-decomposition oracle", criterion1_swap_oracle},
        {2, "residual-state identity", criterion2_residual_identity},
        {3, "single-server end-to-end correctness", criterion3_end_to_end},
        {4, "cross-protocol equivalence", criterion4_cross_protocol},
        {5, "decoy detection probabilities", criterion5_detection},
        {6, "blindness at desk scale", criterion6_blindness},
        {7, "padding homogeneity", criterion7_padding},
        {8, "noncommunication enforcement", criterion8_noncommunication},
        {9, "forwarding success probability", criterion9_forwarding},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = false;
        try {
            pass = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %d: %s (%.1fs) — %s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    secs, detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
