#include <algorithm>
#include <array>
#include <set>

#include "doctest.h"

#include "bqc/analysis.hpp"
#include "bqc/decoy.hpp"
#include "bqc/protocol.hpp"
#include "test_support.hpp"

using namespace bqc;
using bqc::test::total_variation;

namespace {

RunConfig enum_config(Variant variant, bool classical = false) {
    // Exact-enumeration setting: everything forwarded, decoys never checked.
    RunConfig cfg;
    cfg.variant = variant;
    cfg.classical_client = classical;
    cfg.delta = 0.1;
    cfg.p_forward = 1.0;
    cfg.decoys = 1;
    cfg.check_decoys = 0;
    cfg.seed = 11;
    return cfg;
}

std::map<std::string, double> sampled_distribution(const RunConfig& cfg, const Computation& comp,
                                                   int shots, std::uint64_t seed) {
    std::map<std::string, double> freq;
    Rng master(seed);
    RunConfig shot_cfg = cfg;
    for (int s = 0; s < shots; ++s) {
        shot_cfg.seed = master.substream(static_cast<std::uint64_t>(s)).seed();
        ProtocolResult r = run_with_retries(shot_cfg, comp, shot_cfg.seed);
        REQUIRE_FALSE(r.aborted.has_value());
        std::string key;
        for (int b : r.output_bits) key.push_back(b ? '1' : '0');
        freq[key] += 1.0 / shots;
    }
    return freq;
}

}  // namespace

TEST_CASE("alice_forward") {
    Rng rng(3);
    CHECK(alice_forward(5, 1.0, rng) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(alice_forward(5, 0.0, rng).empty());

    // Survivor counts follow Binomial(16, 1/2): chi-square with the low-mass
    // tails merged into the neighbouring bins.
    const int trials = 10000;
    std::array<int, 17> counts{};
    Rng sample_rng(99);
    for (int t = 0; t < trials; ++t)
        ++counts[alice_forward(16, 0.5, sample_rng).size()];
    double chi2 = 0.0;
    int df = -1;
    double binom = 1.0 / 65536.0;  // C(16,0)/2^16, updated iteratively
    double merged_obs = 0.0, merged_exp = 0.0;
    for (int k = 0; k <= 16; ++k) {
        merged_obs += counts[static_cast<std::size_t>(k)];
        merged_exp += trials * binom;
        if (merged_exp >= 5.0) {
            chi2 += (merged_obs - merged_exp) * (merged_obs - merged_exp) / merged_exp;
            merged_obs = merged_exp = 0.0;
            ++df;
        }
        binom *= static_cast<double>(16 - k) / (k + 1);
    }
    if (merged_exp > 0.0) chi2 += merged_obs * merged_obs / merged_exp;
    CHECK(chi_square_p_value(chi2, df) > 0.01);
}

TEST_CASE("choose_pairs") {
    Rng rng(5);
    SUBCASE("forced selection when exactly m survive") {
        PairingRecord rec = choose_pairs({2, 5, 7}, {9, 11, 12}, 3, rng);
        CHECK(rec.s == std::vector<int>{2, 5, 7});
        std::vector<int> t_sorted = rec.t;
        std::sort(t_sorted.begin(), t_sorted.end());
        CHECK(t_sorted == std::vector<int>{9, 11, 12});
    }
    SUBCASE("m = 1 picks one pair") {
        PairingRecord rec = choose_pairs({1, 2, 3}, {4, 5}, 1, rng);
        CHECK(rec.s.size() == 1);
        CHECK(rec.t.size() == 1);
    }
    SUBCASE("insufficient survivors abort with retry") {
        CHECK_THROWS_AS(choose_pairs({1}, {2, 3}, 2, rng), ProtocolAbort);
    }
    SUBCASE("matching is roughly uniform") {
        std::map<std::vector<int>, int> counts;
        Rng match_rng(17);
        for (int t = 0; t < 6000; ++t)
            ++counts[choose_pairs({0, 1, 2}, {3, 4, 5}, 3, match_rng).t];
        CHECK(counts.size() == 6);
        for (const auto& [perm, c] : counts) CHECK(std::abs(c - 1000) < 200);
    }
}

TEST_CASE("pad_angles") {
    SUBCASE("m=1, n=8 fills every angle once") {
        Rng rng(7);
        std::map<int, PadInput> real{{3, {AngleS(5), {1, 0}}}};
        PaddingRecord rec = pad_angles(real, 8, rng);
        CHECK(rec.tilde[3] == tilde_angle(AngleS(5), {1, 0}));
        std::array<int, 8> counts{};
        for (AngleS a : rec.tilde) ++counts[static_cast<std::size_t>(a.k())];
        for (int c : counts) CHECK(c == 1);
    }
    SUBCASE("m=0, n=8 is a random arrangement of all eight angles") {
        Rng rng(8);
        PaddingRecord rec = pad_angles({}, 8, rng);
        std::set<int> seen;
        for (AngleS a : rec.tilde) seen.insert(a.k());
        CHECK(seen.size() == 8);
    }
    SUBCASE("m=2, n=16 with equal real angles still equalizes") {
        Rng rng(9);
        std::map<int, PadInput> real{{0, {AngleS(2), {0, 0}}}, {9, {AngleS(2), {0, 0}}}};
        PaddingRecord rec = pad_angles(real, 16, rng);
        std::array<int, 8> counts{};
        for (AngleS a : rec.tilde) ++counts[static_cast<std::size_t>(a.k())];
        for (int c : counts) CHECK(c == 2);
    }
    SUBCASE("secret record solves back through the tilde inverse") {
        Rng rng(10);
        PaddingRecord rec = pad_angles({{1, {AngleS(3), {1, 1}}}}, 8, rng);
        for (int k = 0; k < 8; ++k)
            CHECK(tilde_angle(rec.theta[static_cast<std::size_t>(k)],
                              rec.frames[static_cast<std::size_t>(k)]) ==
                  rec.tilde[static_cast<std::size_t>(k)]);
    }
    SUBCASE("best-effort when real counts exceed the ceiling") {
        Rng rng(11);
        std::map<int, PadInput> real{{0, {AngleS(0), {0, 0}}}, {1, {AngleS(0), {0, 0}}}};
        PaddingRecord rec = pad_angles(real, 8, rng);  // two real zeros, 6 pads
        std::array<int, 8> counts{};
        for (AngleS a : rec.tilde) ++counts[static_cast<std::size_t>(a.k())];
        CHECK(counts[0] == 2);
        CHECK(*std::max_element(counts.begin(), counts.end()) -
                  *std::min_element(counts.begin(), counts.end()) <=
              2);
    }
}

TEST_CASE("make_decoys and verify_decoys") {
    SUBCASE("labels are uniform over the four Bell states") {
        Rng rng(21);
        std::array<int, 4> counts{};
        const int draws = 10000;
        for (int batch = 0; batch < draws / 500; ++batch) {
            QuantumSystem sys;  // fresh system per batch to bound factor count
            DecoySet set = make_decoys(500, sys, rng);
            for (BellLabel l : set.labels) ++counts[static_cast<std::size_t>(l.index())];
        }
        double chi2 = 0.0;
        for (int c : counts) chi2 += (c - 2500.0) * (c - 2500.0) / 2500.0;
        CHECK(chi_square_p_value(chi2, 3) > 0.01);
    }
    SUBCASE("honest measurement always passes") {
        QuantumSystem sys;
        Rng rng(22);
        RngBranchSource src{Rng(23)};
        DecoySet set = make_decoys(16, sys, rng);
        std::vector<BellLabel> reported;
        for (const auto& [q1, q2] : set.pairs)
            reported.push_back(sys.measure_bell(q1, q2, src).label);
        CHECK_NOTHROW(verify_decoys(reported, set.labels));
    }
    SUBCASE("guessing is caught with probability 3/4 per decoy") {
        const int trials = 100000;
        Rng rng(24);
        int caught = 0;
        for (int t = 0; t < trials; ++t) {
            const BellLabel truth = BellLabel::from_index(rng.uniform_int(0, 3));
            const BellLabel guess = BellLabel::from_index(rng.uniform_int(0, 3));
            if (guess != truth) ++caught;
        }
        CHECK(std::abs(caught / static_cast<double>(trials) - 0.75) < 0.01);
    }
    SUBCASE("length mismatch is an error, not a cheating verdict") {
        CHECK_THROWS_AS(verify_decoys({BellLabel{0, 0}}, {}), SimError);
    }
}

TEST_CASE("sign convention oracles") {
    CHECK(residual_identity_holds(-1));
    CHECK_FALSE(residual_identity_holds(+1));
    CHECK(pattern_sign_valid(+1));
    CHECK_FALSE(pattern_sign_valid(-1));
}

TEST_CASE("BFK matches the exact oracle branch for branch") {
    Computation comp = linear_cluster_computation(3, {AngleS(1), AngleS(6)});
    RunConfig cfg = enum_config(Variant::BFK);
    auto oracle = output_distribution(comp.graph, comp.pattern);
    auto protocol = exact_output_distribution(cfg, comp);
    CHECK(total_variation(oracle, protocol) <= 1e-9);
}

TEST_CASE("BFK with blinding disabled degenerates to the direct pattern") {
    Computation comp = linear_cluster_computation(3, {AngleS(2), AngleS(3)});
    RunConfig cfg = enum_config(Variant::BFK);
    cfg.hooks.force_theta_zero = true;
    cfg.hooks.force_r_zero = true;

    auto oracle = output_distribution(comp.graph, comp.pattern);
    auto protocol = exact_output_distribution(cfg, comp);
    CHECK(total_variation(oracle, protocol) <= 1e-12);

    // With blinding off, the first announced delta is phi itself.
    ProtocolResult r = run_bfk(cfg, comp);
    for (const TranscriptRecord& rec : r.transcript.records()) {
        if (rec.msg.kind == MessageKind::AngleSeq) {
            CHECK(rec.msg.angles[0] == AngleS(2));
            break;
        }
    }
}

TEST_CASE("same seed gives identical transcripts") {
    Computation comp = linear_cluster_computation(2, {AngleS(3)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    cfg.p_forward = 0.5;
    cfg.delta = 2.0;
    cfg.seed = 77;
    ProtocolResult a = run_with_retries(cfg, comp, 123);
    ProtocolResult b = run_with_retries(cfg, comp, 123);
    CHECK(a.transcript.to_json_lines() == b.transcript.to_json_lines());
    CHECK(a.output_bits == b.output_bits);
}

TEST_CASE("double server matches the oracle and enforces noncommunication") {
    Computation comp = linear_cluster_computation(2, {AngleS(1)});
    RunConfig cfg = enum_config(Variant::DoubleServer);

    SUBCASE("honest run equals the exact oracle") {
        auto oracle = output_distribution(comp.graph, comp.pattern);
        auto protocol = exact_output_distribution(cfg, comp);
        CHECK(total_variation(oracle, protocol) <= 1e-9);
    }
    SUBCASE("Bob1 steers Bob2's qubits into plus states") {
        Observer obs = [&](const Checkpoint& cp) {
            if (cp.name != "remote.steered") return;
            for (std::size_t i = 0; i < cp.qubits.size(); ++i) {
                Statevector held = cp.sys->state_of({cp.qubits[i]});
                CHECK(equal_up_to_phase(held, plus_state(cp.angles[i]), 1e-10));
            }
        };
        RunConfig mc = cfg;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            mc.seed = seed;
            ProtocolResult r = run_double_server(mc, comp, nullptr, &obs);
            CHECK_FALSE(r.aborted.has_value());
        }
    }
    SUBCASE("a Bob1 message to Bob2 aborts with a policy violation") {
        RunConfig leak = cfg;
        leak.adversary = AdversarySpec::parse("leak_to_partner");
        ProtocolResult r = run_double_server(leak, comp);
        REQUIRE(r.aborted.has_value());
        CHECK(r.aborted->reason == AbortReason::PolicyViolation);
        // The transcript never contains the illegal record.
        for (const TranscriptRecord& rec : r.transcript.records()) {
            CHECK_FALSE((rec.from == PartyId::Bob1 && rec.to == PartyId::Bob2));
            CHECK_FALSE((rec.from == PartyId::Bob2 && rec.to == PartyId::Bob1));
        }
    }
}

TEST_CASE("triple server matches the oracle") {
    Computation comp = linear_cluster_computation(2, {AngleS(5)});
    RunConfig cfg = enum_config(Variant::TripleServer);
    auto oracle = output_distribution(comp.graph, comp.pattern);
    auto protocol = exact_output_distribution(cfg, comp);
    CHECK(total_variation(oracle, protocol) <= 1e-9);
}

TEST_CASE("triple server swap bookkeeping is sound") {
    Computation comp = linear_cluster_computation(2, {AngleS(2)});
    RunConfig cfg = enum_config(Variant::TripleServer);
    cfg.p_forward = 0.7;
    cfg.delta = 2.0;
    int checked = 0;
    Observer obs = [&](const Checkpoint& cp) {
        if (cp.name == "swap.residual") {
            for (std::size_t i = 0; i + 1 < cp.qubits.size(); i += 2) {
                Statevector residual = cp.sys->state_of({cp.qubits[i], cp.qubits[i + 1]});
                CHECK(equal_up_to_phase(residual, bell_state(cp.labels[i / 2]), 1e-10));
                ++checked;
            }
        }
        if (cp.name == "remote.steered") {
            for (std::size_t i = 0; i < cp.qubits.size(); ++i)
                CHECK(equal_up_to_phase(cp.sys->state_of({cp.qubits[i]}),
                                        plus_state(cp.angles[i]), 1e-10));
        }
    };
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        ProtocolResult r = run_with_retries(cfg, comp, seed, 16, &obs);
        CHECK_FALSE(r.aborted.has_value());
    }
    CHECK(checked >= 12);
}

TEST_CASE("single server matches the oracle exactly") {
    Computation comp = linear_cluster_computation(2, {AngleS(3)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    auto oracle = output_distribution(comp.graph, comp.pattern);
    auto protocol = exact_output_distribution(cfg, comp);
    CHECK(total_variation(oracle, protocol) <= 1e-9);
}

TEST_CASE("classical-client variant matches the oracle and moves no client qubits") {
    Computation comp = linear_cluster_computation(2, {AngleS(3)});
    RunConfig cfg = enum_config(Variant::SingleServer, true);
    auto oracle = output_distribution(comp.graph, comp.pattern);
    auto protocol = exact_output_distribution(cfg, comp);
    CHECK(total_variation(oracle, protocol) <= 1e-9);

    RunConfig mc = cfg;
    mc.p_forward = 0.5;
    mc.delta = 2.0;
    ProtocolResult r = run_with_retries(mc, comp, 5);
    REQUIRE_FALSE(r.aborted.has_value());
    for (const TranscriptRecord& rec : r.transcript.records()) {
        if (rec.msg.kind == MessageKind::QubitTransfer) {
            CHECK(rec.from != PartyId::Alice);
            CHECK(rec.to != PartyId::Alice);
        }
    }
}

TEST_CASE("single server steers the kept qubits into plus states") {
    Computation comp = linear_cluster_computation(3, {AngleS(1), AngleS(4)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    cfg.p_forward = 0.5;
    cfg.delta = 2.0;
    Observer obs = [&](const Checkpoint& cp) {
        if (cp.name == "swap.residual") {
            for (std::size_t i = 0; i + 1 < cp.qubits.size(); i += 2) {
                Statevector residual = cp.sys->state_of({cp.qubits[i], cp.qubits[i + 1]});
                CHECK(equal_up_to_phase(residual, bell_state(cp.labels[i / 2]), 1e-10));
            }
        }
        if (cp.name == "remote.steered") {
            for (std::size_t i = 0; i < cp.qubits.size(); ++i)
                CHECK(equal_up_to_phase(cp.sys->state_of({cp.qubits[i]}),
                                        plus_state(cp.angles[i]), 1e-10));
        }
    };
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        ProtocolResult r = run_with_retries(cfg, comp, seed, 16, &obs);
        CHECK_FALSE(r.aborted.has_value());
    }
}

TEST_CASE("step-3 requests carry stream positions, not original indices") {
    Computation comp = linear_cluster_computation(2, {AngleS(0)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    cfg.p_forward = 0.5;
    cfg.delta = 2.0;
    ProtocolResult r = run_with_retries(cfg, comp, 9);
    REQUIRE_FALSE(r.aborted.has_value());
    int stream_len = 0;
    bool checked = false;
    for (const TranscriptRecord& rec : r.transcript.records()) {
        if (rec.msg.kind == MessageKind::QubitTransfer && rec.to == PartyId::Bob &&
            rec.from == PartyId::Alice)
            stream_len = static_cast<int>(rec.msg.qubits.size());
        if (rec.msg.kind == MessageKind::PositionList && rec.from == PartyId::Alice &&
            !checked) {
            REQUIRE(stream_len > 0);
            for (int pos : rec.msg.positions) {
                CHECK(pos >= 0);
                CHECK(pos < stream_len);
            }
            checked = true;
        }
    }
    CHECK(checked);
}

TEST_CASE("guess_bell adversary is caught at the decoy rate") {
    Computation comp = linear_cluster_computation(2, {AngleS(0)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    cfg.p_forward = 0.5;
    cfg.delta = 2.0;
    cfg.decoys = 2;
    cfg.check_decoys = 1;
    cfg.adversary = AdversarySpec::parse("guess_bell");

    int caught = 0;
    const int runs = 400;
    for (int i = 0; i < runs; ++i) {
        ProtocolResult r = run_with_retries(cfg, comp, static_cast<std::uint64_t>(i));
        if (r.aborted && r.aborted->reason == AbortReason::Cheating) ++caught;
    }
    // One checked decoy: catch probability 3/4.
    CHECK(caught > runs * 0.75 - 3 * std::sqrt(runs * 0.1875));
    CHECK(caught < runs * 0.75 + 3 * std::sqrt(runs * 0.1875));
}

TEST_CASE("flip_bits adversary garbles BFK outputs") {
    Computation comp = linear_cluster_computation(2, {AngleS(0)});
    RunConfig honest_cfg = enum_config(Variant::BFK);
    RunConfig flip_cfg = honest_cfg;
    flip_cfg.adversary = AdversarySpec::parse("flip_bits");

    auto oracle = output_distribution(comp.graph, comp.pattern);
    auto flipped = sampled_distribution(flip_cfg, comp, 2000, 31);
    CHECK(total_variation(oracle, flipped) > 0.1);

    auto honest = sampled_distribution(honest_cfg, comp, 2000, 32);
    CHECK(total_variation(oracle, honest) < 0.05);
}

TEST_CASE("wrong_basis adversary is physically applied") {
    // Offsetting every measurement by pi flips the pattern outcome exactly,
    // which the r-unflip does not undo, so outputs flip relative to oracle.
    Computation comp = linear_cluster_computation(2, {AngleS(0)});
    RunConfig cfg = enum_config(Variant::BFK);
    cfg.adversary = AdversarySpec::parse("wrong_basis:4");
    auto dist = exact_output_distribution(cfg, comp);
    CHECK(dist.at("1") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("honest adversary spec behaves byte-identically") {
    Computation comp = linear_cluster_computation(2, {AngleS(2)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    cfg.seed = 5;
    ProtocolResult a = run_single_server(cfg, comp);
    RunConfig explicit_honest = cfg;
    explicit_honest.adversary = AdversarySpec::parse("honest");
    ProtocolResult b = run_single_server(explicit_honest, comp);
    CHECK(a.transcript.to_json_lines() == b.transcript.to_json_lines());
}

TEST_CASE("p_forward = 1 forwards deterministically") {
    Computation comp = linear_cluster_computation(2, {AngleS(1)});
    RunConfig cfg = enum_config(Variant::TripleServer);
    cfg.m = 2;
    ProtocolResult r = run_triple_server(cfg, comp);
    REQUIRE_FALSE(r.aborted.has_value());
    for (const TranscriptRecord& rec : r.transcript.records())
        if (rec.msg.kind == MessageKind::QubitTransfer && rec.to == PartyId::Bob3)
            CHECK(rec.msg.qubits.size() == 2 * static_cast<std::size_t>(cfg.n()));
}

TEST_CASE("retry exhaustion reports the retry abort") {
    Computation comp = linear_cluster_computation(2, {AngleS(0)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    cfg.delta = 0.1;        // n = 5
    cfg.p_forward = 0.02;   // survivors almost surely short
    ProtocolResult r = run_with_retries(cfg, comp, 3, 4);
    REQUIRE(r.aborted.has_value());
    CHECK(r.aborted->reason == AbortReason::Retry);
}

TEST_CASE("config validation") {
    Computation comp = linear_cluster_computation(2, {AngleS(0)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    SUBCASE("mismatched m") {
        cfg.m = 3;
        CHECK_THROWS_AS(run_protocol(cfg, comp), ConfigError);
    }
    SUBCASE("l >= h") {
        cfg.check_decoys = 1;
        cfg.decoys = 1;
        CHECK_THROWS_AS(run_protocol(cfg, comp), ConfigError);
    }
    SUBCASE("classical client only for single server") {
        RunConfig bad = enum_config(Variant::BFK);
        bad.classical_client = true;
        CHECK_THROWS_AS(run_protocol(bad, comp), ConfigError);
    }
    SUBCASE("flipped remote sign is rejected by the oracle") {
        cfg.remote_basis_sign = +1;
        CHECK_THROWS_AS(run_protocol(cfg, comp), ConfigError);
    }
    SUBCASE("unknown adversary") {
        CHECK_THROWS_AS(AdversarySpec::parse("quantum_caper"), ConfigError);
    }
}

TEST_CASE("decoy announcements are never routed to the server") {
    Computation comp = linear_cluster_computation(2, {AngleS(1)});
    for (bool classical : {false, true}) {
        RunConfig cfg = enum_config(Variant::SingleServer, classical);
        cfg.p_forward = 0.5;
        cfg.delta = 2.0;
        ProtocolResult r = run_with_retries(cfg, comp, 17);
        REQUIRE_FALSE(r.aborted.has_value());
        bool saw_announce = false;
        for (const TranscriptRecord& rec : r.transcript.records()) {
            if (rec.msg.kind == MessageKind::DecoyAnnounce) {
                saw_announce = true;
                CHECK(rec.from == PartyId::Center);
                CHECK(rec.to == PartyId::Alice);
            }
        }
        CHECK(saw_announce);
    }
}

TEST_CASE("ownership discipline") {
    QubitRegistry reg;
    reg.created(7, PartyId::Alice);
    CHECK_NOTHROW(reg.require_owner(7, PartyId::Alice));
    CHECK_THROWS_AS(reg.require_owner(7, PartyId::Bob), SimError);
    CHECK_THROWS_AS(reg.transfer(7, PartyId::Bob, PartyId::Alice), SimError);
    reg.transfer(7, PartyId::Alice, PartyId::Bob);
    CHECK_NOTHROW(reg.require_owner(7, PartyId::Bob));
    reg.measured(7, PartyId::Bob);
    // Measured at most once: the handle is gone.
    CHECK_THROWS_AS(reg.require_owner(7, PartyId::Bob), SimError);
    CHECK_THROWS_AS(reg.measured(7, PartyId::Bob), SimError);
}

TEST_CASE("first-attempt success rate matches the two-binomial tail") {
    // m=2, delta=2, p=1/2: each half needs >= 2 of Binomial(8, 1/2).
    Computation comp = linear_cluster_computation(2, {AngleS(0)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    cfg.p_forward = 0.5;
    cfg.delta = 2.0;
    const double one_side = binomial_tail_geq(8, 0.5, 2);
    const double expected = one_side * one_side;
    const int runs = 2000;
    int ok = 0;
    for (int s = 0; s < runs; ++s) {
        cfg.seed = static_cast<std::uint64_t>(s) + 1;
        ProtocolResult r = run_single_server(cfg, comp);
        if (!r.aborted) ++ok;
    }
    const double sigma = std::sqrt(expected * (1 - expected) / runs);
    CHECK(std::abs(ok / static_cast<double>(runs) - expected) <= 3 * sigma);
}

TEST_CASE("bob_view contains only classical traffic and outcome reports") {
    Computation comp = linear_cluster_computation(2, {AngleS(1)});
    RunConfig cfg = enum_config(Variant::SingleServer);
    ProtocolResult r = run_single_server(cfg, comp);
    REQUIRE_FALSE(r.aborted.has_value());
    CHECK_FALSE(r.bob_view.empty());
    for (const TranscriptRecord& rec : r.bob_view) {
        if (rec.to == PartyId::Bob) CHECK(rec.msg.kind != MessageKind::QubitTransfer);
        if (rec.from == PartyId::Bob)
            CHECK((rec.msg.kind == MessageKind::BitSeq ||
                   rec.msg.kind == MessageKind::BellLabelSeq));
    }
}
