#include "bqc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "bqc/analysis.hpp"
#include "bqc/protocol.hpp"

namespace bqc {

namespace {

nlohmann::json load_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw ConfigError(std::string("cannot open ") + what + " file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed ") + what + " JSON (" + path + "): " + e.what());
    }
    return j;
}

RunConfig effective_config(const CliConfig& cli) {
    RunConfig cfg;
    if (!cli.config_path.empty()) {
        try {
            cfg = config_from_json(load_json_file(cli.config_path, "config"));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("bad config value: ") + e.what());
        }
    }
    if (cli.protocol) {
        const std::string& p = *cli.protocol;
        cfg.classical_client = false;
        if (p == "bfk") {
            cfg.variant = Variant::BFK;
        } else if (p == "double") {
            cfg.variant = Variant::DoubleServer;
        } else if (p == "triple") {
            cfg.variant = Variant::TripleServer;
        } else if (p == "single") {
            cfg.variant = Variant::SingleServer;
        } else if (p == "single-classical") {
            cfg.variant = Variant::SingleServer;
            cfg.classical_client = true;
        } else {
            throw ConfigError("unknown protocol: " + p);
        }
    }
    if (cli.m) cfg.m = *cli.m;
    if (cli.delta) cfg.delta = *cli.delta;
    if (cli.p_forward) cfg.p_forward = *cli.p_forward;
    if (cli.decoys) cfg.decoys = *cli.decoys;
    if (cli.check_decoys) cfg.check_decoys = *cli.check_decoys;
    if (cli.adversary) cfg.adversary = AdversarySpec::parse(*cli.adversary);
    if (cli.seed) cfg.seed = *cli.seed;
    return cfg;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::filesystem::path prepare_out_dir(const CliConfig& cli) {
    std::filesystem::path dir(cli.out_dir.empty() ? "." : cli.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string());
    return dir;
}

int shots_or(const CliConfig& cli, int fallback) {
    const int shots = cli.shots.value_or(fallback);
    if (shots < 1) throw ConfigError("shots must be positive");
    return shots;
}

}  // namespace

int cmd_run(const CliConfig& cli) {
    RunConfig cfg = effective_config(cli);
    if (cli.computation_path.empty())
        throw ConfigError("run needs --computation FILE");
    Computation comp = computation_from_json(load_json_file(cli.computation_path, "computation"));
    const int shots = shots_or(cli, 1000);
    const auto out_dir = prepare_out_dir(cli);

    Rng master(cfg.seed);
    std::map<std::string, long> counts;
    std::optional<AbortInfo> aborted;
    std::string first_transcript;
    int completed = 0;
    for (int s = 0; s < shots; ++s) {
        ProtocolResult r =
            run_with_retries(cfg, comp, master.substream(static_cast<std::uint64_t>(s)).seed());
        if (s == 0) first_transcript = r.transcript.to_json_lines();
        if (r.aborted) {
            aborted = r.aborted;
            break;
        }
        std::string key;
        for (int b : r.output_bits) key.push_back(b ? '1' : '0');
        ++counts[key];
        ++completed;
    }

    {
        std::ofstream out(out_dir / "transcript.jsonl");
        if (!out) throw ConfigError("cannot write transcript.jsonl");
        out << first_transcript;
    }
    nlohmann::json result;
    result["config"] = config_to_json(cfg);
    result["shots_requested"] = shots;
    result["shots_completed"] = completed;
    nlohmann::json freq = nlohmann::json::object();
    for (const auto& [key, c] : counts)
        freq[key] = static_cast<double>(c) / std::max(completed, 1);
    result["frequencies"] = freq;
    result["aborted"] = aborted ? nlohmann::json{{"reason", to_string(aborted->reason)},
                                                 {"detail", aborted->detail}}
                                : nlohmann::json(nullptr);
    write_json(out_dir / "result.json", result);
    return aborted ? 2 : 0;
}

int cmd_check(const CliConfig& cli) {
    RunConfig cfg = effective_config(cli);
    const auto out_dir = prepare_out_dir(cli);
    nlohmann::json checks = nlohmann::json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
    };

    {  // Swap decomposition over all 16 input label pairs.
        bool ok = true;
        std::string detail = "all 16 label pairs, 4 outcomes each";
        for (int i1 = 0; i1 < 4 && ok; ++i1) {
            for (int i2 = 0; i2 < 4 && ok; ++i2) {
                const BellLabel in1 = BellLabel::from_index(i1);
                const BellLabel in2 = BellLabel::from_index(i2);
                for (int outcome = 0; outcome < 4 && ok; ++outcome) {
                    Statevector sv = tensor(bell_state(in1), bell_state(in2));
                    ForcedBranchSource force({outcome});
                    const BellMeasResult res = measure_bell(sv, 1, 3, force);
                    if (std::abs(res.probability - 0.25) > 1e-12) ok = false;
                    const Statevector residual = remove_qubits(sv, {1, 3});
                    const BellLabel expect{in1.z ^ in2.z ^ res.label.z,
                                           in1.x ^ in2.x ^ res.label.x};
                    if (!equal_up_to_phase(residual, bell_state(expect), 1e-12)) ok = false;
                }
            }
        }
        record("swap_oracle", ok, detail);
    }

    record("residual_identity", residual_identity_holds(cfg.remote_basis_sign),
           "remote basis sign " + std::to_string(cfg.remote_basis_sign));
    record("pattern_sign", pattern_sign_valid(cfg.pattern_basis_sign),
           "pattern basis sign " + std::to_string(cfg.pattern_basis_sign));

    {  // Exact cross-protocol equivalence on a small computation.
        bool ok = true;
        std::string detail;
        try {
            Computation comp = linear_cluster_computation(2, {AngleS(1)});
            const auto oracle = output_distribution(comp.graph, comp.pattern);
            RunConfig base = cfg;
            base.m = 0;
            base.delta = 0.1;
            base.p_forward = 1.0;
            base.decoys = 1;
            base.check_decoys = 0;
            base.adversary = AdversarySpec{};
            struct Case {
                const char* name;
                Variant variant;
                bool classical;
            };
            for (const Case& c : {Case{"bfk", Variant::BFK, false},
                                  Case{"double", Variant::DoubleServer, false},
                                  Case{"triple", Variant::TripleServer, false},
                                  Case{"single", Variant::SingleServer, false},
                                  Case{"single-classical", Variant::SingleServer, true}}) {
                RunConfig run_cfg = base;
                run_cfg.variant = c.variant;
                run_cfg.classical_client = c.classical;
                const auto dist = exact_output_distribution(run_cfg, comp);
                double tv = 0.0;
                for (const auto& [k, v] : oracle) {
                    auto it = dist.find(k);
                    tv += std::abs(v - (it == dist.end() ? 0.0 : it->second));
                }
                for (const auto& [k, v] : dist)
                    if (!oracle.count(k)) tv += v;
                tv /= 2.0;
                if (tv > 1e-9) {
                    ok = false;
                    detail = std::string(c.name) + " deviates, TV = " + std::to_string(tv);
                    break;
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        record("cross_protocol_exact", ok,
               detail.empty() ? "five variants vs exact oracle" : detail);
    }

    {  // Padding homogeneity sweep.
        bool ok = true;
        Rng rng(cfg.seed);
        for (int n : {8, 16, 24}) {
            for (int m = 1; m <= n / 8; ++m) {
                for (int trial = 0; trial < 50; ++trial) {
                    std::map<int, PadInput> real;
                    while (static_cast<int>(real.size()) < m) {
                        real[rng.uniform_int(0, n - 1)] = {
                            AngleS(rng.uniform_int(0, 7)),
                            BellLabel::from_index(rng.uniform_int(0, 3))};
                    }
                    PaddingRecord rec = pad_angles(real, n, rng);
                    if (histogram_angles(rec.tilde).max_minus_min() > 1) ok = false;
                }
            }
        }
        record("padding_homogeneity", ok, "m <= n/8 for n in {8, 16, 24}");
    }

    nlohmann::json report;
    report["checks"] = checks;
    report["pass"] = all_pass;
    write_json(out_dir / "check_report.json", report);
    return all_pass ? 0 : 1;
}

int cmd_blindness(const CliConfig& cli) {
    const auto out_dir = prepare_out_dir(cli);
    const double equalizing = leak_demo(LeakScenario::Equalizing);
    const double constant_zero = leak_demo(LeakScenario::ConstantZero);
    const double short_n = leak_demo(LeakScenario::ShortN);

    nlohmann::json reports = nlohmann::json::array();
    const bool pass = equalizing <= 1e-9 && constant_zero > 0.0 && short_n > 0.0;
    reports.push_back(claim_report_json(
        {"equalizing padding leak score (m=1, n=8)", 0.0, equalizing, 0.0, 1, equalizing <= 1e-9}));
    reports.push_back(claim_report_json({"constant-zero padding leak score", std::nullopt,
                                         constant_zero, 0.0, 1, constant_zero > 0.0}));
    reports.push_back(claim_report_json(
        {"short sequence (n=4) leak score", std::nullopt, short_n, 0.0, 1, short_n > 0.0}));
    write_json(out_dir / "blindness_report.json", reports);
    return pass ? 0 : 1;
}

int cmd_detect(const CliConfig& cli) {
    RunConfig cfg = effective_config(cli);
    if (!cli.adversary) cfg.adversary = AdversarySpec::parse("guess_bell");
    const int trials = shots_or(cli, 100000);
    const int l = cli.check_decoys.value_or(1);
    const int h = cli.decoys.value_or(std::max(l + 1, 4));
    if (l < 1 || l > h) throw ConfigError("detect needs 1 <= l <= h");
    const auto out_dir = prepare_out_dir(cli);

    Rng rng(cfg.seed);
    const DetectionReport rep = detection_rate(l, h, trials, cfg.adversary, rng);
    const double catch_rate = static_cast<double>(rep.caught) / trials;
    const double accept_rate = static_cast<double>(rep.accepted_incorrect) / trials;

    const bool dishonest = cfg.adversary.kind == AdversaryKind::GuessBell;
    const double expected_catch = dishonest ? 1.0 - std::pow(0.25, l) : 0.0;
    const double expected_accept = dishonest ? std::pow(0.25, l) : 0.0;
    const double catch_sigma =
        std::sqrt(std::max(expected_catch * (1 - expected_catch), 1e-12) / trials);
    const double accept_sigma =
        std::sqrt(std::max(expected_accept * (1 - expected_accept), 1e-12) / trials);
    const bool catch_ok = std::abs(catch_rate - expected_catch) <= std::max(3 * catch_sigma, 1e-2);
    const bool accept_ok =
        std::abs(accept_rate - expected_accept) <= std::max(3 * accept_sigma, 1e-4);

    nlohmann::json reports = nlohmann::json::array();
    reports.push_back(claim_report_json({"decoy catch rate, l = " + std::to_string(l),
                                         expected_catch, catch_rate,
                                         std::sqrt(std::max(catch_rate * (1 - catch_rate), 1e-12) /
                                                   trials),
                                         trials, catch_ok}));
    reports.push_back(claim_report_json(
        {"incorrect-output acceptance rate (4^-l)", expected_accept, accept_rate,
         std::sqrt(std::max(accept_rate * (1 - accept_rate), 1e-12) / trials), trials,
         accept_ok}));
    write_json(out_dir / "detect_report.json", reports);
    return catch_ok && accept_ok ? 0 : 1;
}

int cmd_forward_stats(const CliConfig& cli) {
    RunConfig cfg = effective_config(cli);
    const int trials = shots_or(cli, 10000);
    const int m = cli.m.value_or(cfg.m > 0 ? cfg.m : 10);
    if (m < 1) throw ConfigError("forward-stats needs m >= 1");
    const auto out_dir = prepare_out_dir(cli);

    Rng rng(cfg.seed);
    const ForwardingEstimate est = forwarding_stats(m, cfg.delta, cfg.p_forward, trials, rng);
    const double sigma = std::sqrt(std::max(est.exact * (1 - est.exact), 1e-12) / trials);
    const bool pass = std::abs(est.estimate - est.exact) <= std::max(3 * sigma, 1e-3);

    nlohmann::json report = claim_report_json(
        {"both halves keep >= m survivors", est.exact, est.estimate, est.stderr_value, trials,
         pass});
    write_json(out_dir / "forward_stats_report.json", report);
    return pass ? 0 : 1;
}

int dispatch(const CliConfig& cli) {
    try {
        if (cli.command == "run") return cmd_run(cli);
        if (cli.command == "check") return cmd_check(cli);
        if (cli.command == "blindness") return cmd_blindness(cli);
        if (cli.command == "detect") return cmd_detect(cli);
        if (cli.command == "forward-stats") return cmd_forward_stats(cli);
        std::cerr << "unknown command: " << cli.command << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bqc
