#pragma once

#include <array>
#include <map>
#include <vector>

#include "bqc/angles.hpp"
#include "bqc/rng.hpp"

namespace bqc {

enum class PaddingStrategy { Equalizing, ConstantZero };

struct PadInput {
    AngleS theta;
    BellLabel frame;
};

// Alice's Step-5 secrets: the published tilde sequence plus the theta_k and
// (z_k, x_k) behind every position, real and padding alike.
struct PaddingRecord {
    std::vector<AngleS> tilde;
    std::vector<AngleS> theta;
    std::vector<BellLabel> frames;
};

// Greedy equalizer: draws `num_pads` angle values one at a time, each uniform
// among the angles currently holding the minimum count. Whenever the real
// counts allow it, the final histogram satisfies max - min <= 1.
std::vector<int> equalizing_pad_values(std::array<int, 8> counts, int num_pads, Rng& rng);

// Builds the full n-entry tilde sequence: real positions carry
// tilde_angle(theta, frame); padding positions get target values from the
// strategy, shuffled onto the free slots, with (z, x) drawn uniformly and
// theta solved through the tilde inverse.
PaddingRecord pad_angles(const std::map<int, PadInput>& real, int n, Rng& rng,
                         PaddingStrategy strategy = PaddingStrategy::Equalizing);

}  // namespace bqc
