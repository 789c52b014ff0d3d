#include <cmath>

#include "doctest.h"

#include <nlohmann/json.hpp>

#include "bqc/analysis.hpp"
#include "bqc/padding.hpp"
#include "test_support.hpp"

using namespace bqc;

TEST_CASE("histogram_angles") {
    std::vector<AngleS> all;
    for (int k = 0; k < 8; ++k) all.emplace_back(k);
    AngleHistogram h = histogram_angles(all);
    for (long c : h.counts) CHECK(c == 1);
    CHECK(h.total() == 8);

    AngleHistogram empty = histogram_angles({});
    for (long c : empty.counts) CHECK(c == 0);

    Rng rng(4);
    std::map<int, PadInput> real{{1, {AngleS(3), {0, 1}}}, {9, {AngleS(3), {0, 1}}}};
    PaddingRecord rec = pad_angles(real, 16, rng);
    CHECK(histogram_angles(rec.tilde).max_minus_min() <= 1);
}

TEST_CASE("uniformity_tv") {
    AngleHistogram equal;
    equal.counts = {3, 3, 3, 3, 3, 3, 3, 3};
    CHECK(uniformity_tv(equal) == doctest::Approx(0.0));

    AngleHistogram spike;
    spike.counts = {9, 0, 0, 0, 0, 0, 0, 0};
    CHECK(uniformity_tv(spike) == doctest::Approx(7.0 / 8.0));

    AngleHistogram lumpy;
    lumpy.counts = {2, 1, 1, 1, 1, 1, 1, 0};
    CHECK(uniformity_tv(lumpy) == doctest::Approx(1.0 / 8.0));

    AngleHistogram empty;
    CHECK_THROWS_AS(uniformity_tv(empty), SimError);
}

TEST_CASE("blindness enumeration rejects oversized instances") {
    BlindnessConfig cfg;
    cfg.n = 9;
    CHECK_THROWS_AS(blindness_enumeration(cfg), SimError);
}

TEST_CASE("equalizing padding hides the secret completely") {
    ViewTable table = blindness_enumeration({});
    for (const auto& row : table.rows) {
        double total = 0.0;
        for (const auto& [k, v] : row) total += v;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(max_pairwise_tv(table) <= 1e-9);
}

TEST_CASE("leaky paddings have positive leak scores") {
    CHECK(leak_demo(LeakScenario::Equalizing) <= 1e-9);
    CHECK(leak_demo(LeakScenario::ConstantZero) > 0.1);
    CHECK(leak_demo(LeakScenario::ShortN) > 0.01);
}

TEST_CASE("degenerate single-position view reveals theta") {
    BlindnessConfig cfg;
    cfg.n = 1;
    cfg.fixed_frame = BellLabel{0, 0};
    ViewTable table = blindness_enumeration(cfg);
    for (int secret = 0; secret < 8; ++secret) {
        const auto& row = table.rows[static_cast<std::size_t>(secret)];
        REQUIRE(row.size() == 1);
        CHECK(row.begin()->first == std::string(1, static_cast<char>('0' + secret)));
    }
    CHECK(max_pairwise_tv(table) == doctest::Approx(1.0));
}

TEST_CASE("detection_rate") {
    SUBCASE("honest servers are never caught") {
        Rng rng(1);
        DetectionReport rep = detection_rate(3, 6, 2000, AdversarySpec{}, rng);
        CHECK(rep.caught == 0);
        CHECK(rep.accepted_incorrect == 0);
    }
    SUBCASE("guessing is caught at 3/4 per decoy") {
        Rng rng(2);
        const int trials = 100000;
        DetectionReport rep =
            detection_rate(1, 4, trials, AdversarySpec::parse("guess_bell"), rng);
        CHECK(std::abs(rep.caught / static_cast<double>(trials) - 0.75) < 0.01);
    }
    SUBCASE("acceptance falls as 4^-l") {
        Rng rng(3);
        const int trials = 100000;
        DetectionReport rep =
            detection_rate(3, 5, trials, AdversarySpec::parse("guess_bell"), rng);
        const double expected = std::pow(0.25, 3);
        const double sigma = std::sqrt(expected * (1 - expected) / trials);
        CHECK(std::abs(rep.accepted_incorrect / static_cast<double>(trials) - expected) <
              3 * sigma);
        CHECK(rep.caught + rep.accepted_incorrect == trials);
    }
}

TEST_CASE("binomial_tail_geq") {
    CHECK(binomial_tail_geq(16, 0.5, 0) == doctest::Approx(1.0));
    CHECK(binomial_tail_geq(16, 0.5, 17) == doctest::Approx(0.0));
    CHECK(binomial_tail_geq(16, 0.5, 4) == doctest::Approx(64839.0 / 65536.0).epsilon(1e-12));
    CHECK(binomial_tail_geq(16, 1.0, 16) == doctest::Approx(1.0));
    CHECK(binomial_tail_geq(16, 0.0, 1) == doctest::Approx(0.0));
}

TEST_CASE("forwarding_stats") {
    SUBCASE("p = 1 always succeeds") {
        Rng rng(5);
        ForwardingEstimate est = forwarding_stats(4, 2.0, 1.0, 500, rng);
        CHECK(est.estimate == doctest::Approx(1.0));
        CHECK(est.exact == doctest::Approx(1.0));
    }
    SUBCASE("p = 0 always fails") {
        Rng rng(6);
        ForwardingEstimate est = forwarding_stats(4, 2.0, 0.0, 500, rng);
        CHECK(est.estimate == doctest::Approx(0.0));
        CHECK(est.exact == doctest::Approx(0.0));
    }
    SUBCASE("matches the exact two-binomial value") {
        Rng rng(7);
        ForwardingEstimate est = forwarding_stats(10, 2.0, 0.5, 10000, rng);
        const double sigma = std::sqrt(est.exact * (1 - est.exact) / est.trials);
        CHECK(std::abs(est.estimate - est.exact) <= 3 * std::max(sigma, 1e-4));
        CHECK(est.exact > 0.99);
    }
    SUBCASE("m=4 delta=2 first-attempt success probability, pinned exactly") {
        // Two independent Binomial(16, 1/2) >= 4 events.
        Rng rng(8);
        ForwardingEstimate est = forwarding_stats(4, 2.0, 0.5, 20000, rng);
        const double one_side = 64839.0 / 65536.0;
        CHECK(est.exact == doctest::Approx(one_side * one_side).epsilon(1e-12));
        CHECK(std::abs(est.estimate - est.exact) < 0.005);
    }
}

TEST_CASE("pad_angles sampling agrees with the enumerated padding model") {
    // m=1, n=8 equalizing: conditional on the real value and its position,
    // every other angle should land on every free position with rate 1/7.
    const int real_pos = 2;
    const AngleS theta(3);
    const BellLabel frame{0, 0};
    const int real_value = tilde_angle(theta, frame).k();
    const int draws = 7000;
    std::array<std::array<int, 8>, 8> at{};  // [position][value]
    Rng rng(55);
    for (int d = 0; d < draws; ++d) {
        PaddingRecord rec = pad_angles({{real_pos, {theta, frame}}}, 8, rng);
        REQUIRE(rec.tilde[real_pos].k() == real_value);
        for (int pos = 0; pos < 8; ++pos)
            ++at[static_cast<std::size_t>(pos)][static_cast<std::size_t>(rec.tilde
                 [static_cast<std::size_t>(pos)].k())];
    }
    for (int pos = 0; pos < 8; ++pos) {
        if (pos == real_pos) continue;
        for (int value = 0; value < 8; ++value) {
            const double expected = value == real_value ? 0.0 : draws / 7.0;
            CHECK(std::abs(at[static_cast<std::size_t>(pos)][static_cast<std::size_t>(value)] -
                           expected) < 5 * std::sqrt(draws / 7.0));
        }
    }
}

TEST_CASE("chi_square_p_value sanity") {
    CHECK(chi_square_p_value(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(chi_square_p_value(0.0, 4) == doctest::Approx(1.0));
    CHECK(chi_square_p_value(100.0, 4) < 1e-10);
}

TEST_CASE("claim report JSON shape") {
    ClaimReport rep{"catch rate", 0.75, 0.749, 0.0014, 100000, true};
    nlohmann::json j = claim_report_json(rep);
    CHECK(j.at("claim") == "catch rate");
    CHECK(j.at("expected").get<double>() == doctest::Approx(0.75));
    CHECK(j.at("pass").get<bool>());
    ClaimReport no_expected{"leak", std::nullopt, 0.0, 0.0, 1, true};
    CHECK(claim_report_json(no_expected).at("expected").is_null());
}
