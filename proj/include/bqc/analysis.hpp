#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bqc/adversary.hpp"
#include "bqc/padding.hpp"

namespace bqc {

struct AngleHistogram {
    std::array<long, 8> counts{};
    long total() const;
    int max_minus_min() const;
};

AngleHistogram histogram_angles(const std::vector<AngleS>& seq);

// Total-variation distance between the empirical angle distribution and the
// uniform distribution over S.
double uniformity_tv(const AngleHistogram& h);

// Conditional distribution of the server-visible tilde sequence, one row per
// secret value of theta_{s_1}. Keys are digit strings over 0..7.
struct ViewTable {
    std::array<std::map<std::string, double>, 8> rows;
};

struct BlindnessConfig {
    int n = 8;
    PaddingStrategy strategy = PaddingStrategy::Equalizing;
    // When set, conditions on this swap outcome instead of marginalizing
    // the uniform frame (the no-blinding degenerate check).
    std::optional<BellLabel> fixed_frame;
};

// Exact enumeration over the frame, the real position, and the padding
// process for the m = 1 instance. Rows must coincide exactly iff the
// published sequence carries no information about the secret.
ViewTable blindness_enumeration(const BlindnessConfig& cfg);

double max_pairwise_tv(const ViewTable& table);

enum class LeakScenario { Equalizing, ConstantZero, ShortN };

// Leak score: max pairwise TV between conditional view distributions.
// Zero for equalizing padding at n = 8; strictly positive otherwise.
double leak_demo(LeakScenario scenario);

struct DetectionReport {
    int l = 0;
    int trials = 0;
    int caught = 0;
    int accepted_incorrect = 0;
};

// Runs the decoy phase (with real Bell pairs) against the strategy.
DetectionReport detection_rate(int l, int h, int trials, const AdversarySpec& strategy, Rng& rng);

// P[Binomial(n, p) >= m], computed by direct summation.
double binomial_tail_geq(int n, double p, int m);

struct ForwardingEstimate {
    double estimate = 0.0;
    double stderr_value = 0.0;
    int trials = 0;
    double exact = 0.0;  // two-sided binomial-tail value
};

// Empirical probability that both halves of the 2n stream keep at least m
// survivors, against the exact two-binomial value.
ForwardingEstimate forwarding_stats(int m, double delta, double p_forward, int trials, Rng& rng);

// Upper-tail p-value of a chi-square statistic (regularized gamma Q).
double chi_square_p_value(double stat, int df);

struct ClaimReport {
    std::string claim;
    std::optional<double> expected;
    double estimate = 0.0;
    double stderr_value = 0.0;
    long trials = 0;
    bool pass = false;
};

nlohmann::json claim_report_json(const ClaimReport& report);

}  // namespace bqc
