#include "bqc/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bqc/decoy.hpp"
#include "bqc/network.hpp"
#include "bqc/statevector.hpp"

namespace bqc {

long AngleHistogram::total() const {
    long t = 0;
    for (long c : counts) t += c;
    return t;
}

int AngleHistogram::max_minus_min() const {
    return static_cast<int>(*std::max_element(counts.begin(), counts.end()) -
                            *std::min_element(counts.begin(), counts.end()));
}

AngleHistogram histogram_angles(const std::vector<AngleS>& seq) {
    AngleHistogram h;
    for (AngleS a : seq) ++h.counts[static_cast<std::size_t>(a.k())];
    return h;
}

double uniformity_tv(const AngleHistogram& h) {
    const long n = h.total();
    if (n == 0) throw SimError("uniformity_tv of an empty histogram");
    double tv = 0.0;
    for (long c : h.counts) tv += std::abs(static_cast<double>(c) / n - 0.125);
    return tv / 2.0;
}

namespace {

using Counts = std::array<int, 8>;

// Distribution over final histograms under the greedy least-count rule.
void pad_count_distribution(Counts counts, int pads, double prob,
                            std::map<Counts, double>& out) {
    if (pads == 0) {
        out[counts] += prob;
        return;
    }
    const int min_count = *std::min_element(counts.begin(), counts.end());
    std::vector<int> ties;
    for (int a = 0; a < 8; ++a)
        if (counts[static_cast<std::size_t>(a)] == min_count) ties.push_back(a);
    for (int a : ties) {
        Counts next = counts;
        ++next[static_cast<std::size_t>(a)];
        pad_count_distribution(next, pads - 1, prob / static_cast<double>(ties.size()), out);
    }
}

void accumulate_views(std::map<std::string, double>& row, int n, int real_pos, int real_value,
                      const std::vector<int>& pad_values_sorted, double prob) {
    // Every distinct arrangement of the pad multiset over the free slots is
    // equally likely.
    std::vector<int> arrangement = pad_values_sorted;
    long distinct = 0;
    do {
        ++distinct;
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    const double slice = prob / static_cast<double>(distinct);

    arrangement = pad_values_sorted;
    do {
        std::string key(static_cast<std::size_t>(n), '0');
        key[static_cast<std::size_t>(real_pos)] = static_cast<char>('0' + real_value);
        std::size_t next_free = 0;
        for (int pos = 0; pos < n; ++pos) {
            if (pos == real_pos) continue;
            key[static_cast<std::size_t>(pos)] =
                static_cast<char>('0' + arrangement[next_free++]);
        }
        row[key] += slice;
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
}

}  // namespace

ViewTable blindness_enumeration(const BlindnessConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 8)
        throw SimError("blindness enumeration supports 1 <= n <= 8");
    ViewTable table;
    std::vector<BellLabel> frames;
    if (cfg.fixed_frame) {
        frames.push_back(*cfg.fixed_frame);
    } else {
        for (int i = 0; i < 4; ++i) frames.push_back(BellLabel::from_index(i));
    }

    for (int secret = 0; secret < 8; ++secret) {
        auto& row = table.rows[static_cast<std::size_t>(secret)];
        const double frame_prob = 1.0 / static_cast<double>(frames.size());
        for (const BellLabel frame : frames) {
            const int real_value = tilde_angle(AngleS(secret), frame).k();
            for (int pos = 0; pos < cfg.n; ++pos) {
                const double base_prob = frame_prob / cfg.n;
                const int pads = cfg.n - 1;
                if (cfg.strategy == PaddingStrategy::ConstantZero) {
                    std::vector<int> zeros(static_cast<std::size_t>(pads), 0);
                    accumulate_views(row, cfg.n, pos, real_value, zeros, base_prob);
                    continue;
                }
                Counts base{};
                ++base[static_cast<std::size_t>(real_value)];
                std::map<Counts, double> finals;
                pad_count_distribution(base, pads, 1.0, finals);
                for (const auto& [final_counts, p] : finals) {
                    std::vector<int> values;
                    for (int a = 0; a < 8; ++a) {
                        const int copies = final_counts[static_cast<std::size_t>(a)] -
                                           base[static_cast<std::size_t>(a)];
                        values.insert(values.end(), static_cast<std::size_t>(copies), a);
                    }
                    accumulate_views(row, cfg.n, pos, real_value, values, base_prob * p);
                }
            }
        }
    }
    return table;
}

double max_pairwise_tv(const ViewTable& table) {
    double worst = 0.0;
    for (int a = 0; a < 8; ++a) {
        for (int b = a + 1; b < 8; ++b) {
            const auto& pa = table.rows[static_cast<std::size_t>(a)];
            const auto& pb = table.rows[static_cast<std::size_t>(b)];
            double tv = 0.0;
            for (const auto& [k, v] : pa) {
                auto it = pb.find(k);
                tv += std::abs(v - (it == pb.end() ? 0.0 : it->second));
            }
            for (const auto& [k, v] : pb)
                if (!pa.count(k)) tv += v;
            worst = std::max(worst, tv / 2.0);
        }
    }
    return worst;
}

double leak_demo(LeakScenario scenario) {
    BlindnessConfig cfg;
    switch (scenario) {
        case LeakScenario::Equalizing:
            break;
        case LeakScenario::ConstantZero:
            cfg.strategy = PaddingStrategy::ConstantZero;
            break;
        case LeakScenario::ShortN:
            cfg.n = 4;
            break;
    }
    return max_pairwise_tv(blindness_enumeration(cfg));
}

DetectionReport detection_rate(int l, int h, int trials, const AdversarySpec& strategy,
                               Rng& rng) {
    if (l > h) throw SimError("cannot check more decoys than exist");
    if (trials < 1) throw SimError("need at least one trial");
    DetectionReport report{l, trials, 0, 0};
    Rng pick_rng = rng.substream("detection.pick");
    Rng guess_rng = rng.substream("detection.guess");
    RngBranchSource quantum{rng.substream("detection.quantum")};

    for (int t = 0; t < trials; ++t) {
        QuantumSystem sys;
        Rng decoy_rng = rng.substream("detection.decoys").substream(static_cast<std::uint64_t>(t));
        DecoySet set = make_decoys(h, sys, decoy_rng);
        std::vector<int> ids(static_cast<std::size_t>(h));
        for (int i = 0; i < h; ++i) ids[static_cast<std::size_t>(i)] = i;
        pick_rng.shuffle(ids);

        bool mismatch = false;
        for (int i = 0; i < l; ++i) {
            const int d = ids[static_cast<std::size_t>(i)];
            const auto& [q1, q2] = set.pairs[static_cast<std::size_t>(d)];
            BellLabel reported{0, 0};
            switch (strategy.kind) {
                case AdversaryKind::GuessBell:
                    reported = BellLabel::from_index(guess_rng.uniform_int(0, 3));
                    break;
                case AdversaryKind::FlipBits: {
                    const BellLabel real = sys.measure_bell(q1, q2, quantum).label;
                    reported = BellLabel{real.z ^ 1, real.x ^ 1};
                    break;
                }
                default:
                    reported = sys.measure_bell(q1, q2, quantum).label;
                    break;
            }
            if (reported != set.labels[static_cast<std::size_t>(d)]) mismatch = true;
        }
        if (mismatch) {
            ++report.caught;
        } else if (strategy.kind != AdversaryKind::Honest &&
                   strategy.kind != AdversaryKind::WrongBasis && l > 0) {
            ++report.accepted_incorrect;
        }
    }
    return report;
}

double binomial_tail_geq(int n, double p, int m) {
    if (m <= 0) return 1.0;
    if (m > n) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    long double pmf = std::pow(1.0L - static_cast<long double>(p), n);  // P[X = 0]
    long double below = 0.0L;
    for (int k = 0; k < m; ++k) {
        below += pmf;
        pmf *= static_cast<long double>(n - k) / (k + 1) *
               (static_cast<long double>(p) / (1.0L - static_cast<long double>(p)));
    }
    return static_cast<double>(1.0L - below);
}

ForwardingEstimate forwarding_stats(int m, double delta, double p_forward, int trials,
                                    Rng& rng) {
    if (trials < 1) throw SimError("need at least one trial");
    const int n = static_cast<int>(std::ceil((2.0 + delta) * m));
    int successes = 0;
    Rng draw = rng.substream("forwarding");
    for (int t = 0; t < trials; ++t) {
        int first = 0, second = 0;
        for (int k = 0; k < n; ++k)
            if (draw.bernoulli(p_forward)) ++first;
        for (int k = 0; k < n; ++k)
            if (draw.bernoulli(p_forward)) ++second;
        if (first >= m && second >= m) ++successes;
    }
    ForwardingEstimate est;
    est.trials = trials;
    est.estimate = static_cast<double>(successes) / trials;
    est.stderr_value = std::sqrt(std::max(est.estimate * (1.0 - est.estimate), 1e-12) / trials);
    const double one_side = binomial_tail_geq(n, p_forward, m);
    est.exact = one_side * one_side;
    return est;
}

namespace {

// Regularized incomplete gamma functions (series / continued fraction).
double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int k = 1; k < 500; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 500; ++k) {
        const double an = -k * (k - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_p_value(double stat, int df) {
    if (df < 1) throw SimError("chi-square needs df >= 1");
    if (stat <= 0.0) return 1.0;
    const double a = df / 2.0;
    const double x = stat / 2.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

nlohmann::json claim_report_json(const ClaimReport& report) {
    nlohmann::json j;
    j["claim"] = report.claim;
    j["expected"] = report.expected ? nlohmann::json(*report.expected) : nlohmann::json(nullptr);
    j["estimate"] = report.estimate;
    j["stderr"] = report.stderr_value;
    j["trials"] = report.trials;
    j["pass"] = report.pass;
    return j;
}

}  // namespace bqc
