#include "bqc/padding.hpp"

#include "bqc/error.hpp"

namespace bqc {

std::vector<int> equalizing_pad_values(std::array<int, 8> counts, int num_pads, Rng& rng) {
    std::vector<int> values;
    values.reserve(static_cast<std::size_t>(num_pads));
    for (int step = 0; step < num_pads; ++step) {
        int min_count = counts[0];
        for (int a = 1; a < 8; ++a) min_count = std::min(min_count, counts[static_cast<std::size_t>(a)]);
        std::vector<int> ties;
        for (int a = 0; a < 8; ++a)
            if (counts[static_cast<std::size_t>(a)] == min_count) ties.push_back(a);
        const int pick = ties[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(ties.size()) - 1))];
        ++counts[static_cast<std::size_t>(pick)];
        values.push_back(pick);
    }
    return values;
}

PaddingRecord pad_angles(const std::map<int, PadInput>& real, int n, Rng& rng,
                         PaddingStrategy strategy) {
    if (n < 1) throw SimError("pad_angles needs n >= 1");
    if (static_cast<int>(real.size()) > n) throw SimError("more real angles than positions");

    PaddingRecord rec;
    rec.tilde.assign(static_cast<std::size_t>(n), AngleS(0));
    rec.theta.assign(static_cast<std::size_t>(n), AngleS(0));
    rec.frames.assign(static_cast<std::size_t>(n), BellLabel{0, 0});

    std::array<int, 8> counts{};
    std::vector<int> free_positions;
    for (int k = 0; k < n; ++k) {
        auto it = real.find(k);
        if (it == real.end()) {
            free_positions.push_back(k);
            continue;
        }
        const AngleS t = tilde_angle(it->second.theta, it->second.frame);
        rec.tilde[static_cast<std::size_t>(k)] = t;
        rec.theta[static_cast<std::size_t>(k)] = it->second.theta;
        rec.frames[static_cast<std::size_t>(k)] = it->second.frame;
        ++counts[static_cast<std::size_t>(t.k())];
    }
    if (free_positions.size() + real.size() != static_cast<std::size_t>(n))
        throw SimError("real angle position out of range");

    std::vector<int> values;
    if (strategy == PaddingStrategy::Equalizing) {
        values = equalizing_pad_values(counts, static_cast<int>(free_positions.size()), rng);
    } else {
        values.assign(free_positions.size(), 0);
    }
    rng.shuffle(values);

    for (std::size_t i = 0; i < free_positions.size(); ++i) {
        const int k = free_positions[i];
        const AngleS target(values[i]);
        const BellLabel frame = BellLabel::from_index(rng.uniform_int(0, 3));
        rec.tilde[static_cast<std::size_t>(k)] = target;
        rec.frames[static_cast<std::size_t>(k)] = frame;
        rec.theta[static_cast<std::size_t>(k)] = tilde_angle_inverse(target, frame);
    }
    return rec;
}

}  // namespace bqc
