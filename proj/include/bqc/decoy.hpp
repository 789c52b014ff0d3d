#pragma once

#include <utility>
#include <vector>

#include "bqc/quantum_system.hpp"
#include "bqc/rng.hpp"

namespace bqc {

struct DecoySet {
    std::vector<std::pair<QuantumSystem::Qubit, QuantumSystem::Qubit>> pairs;
    std::vector<BellLabel> labels;
};

// h Bell pairs with uniformly random labels; the labels are disclosed to
// Alice only (via DecoyAnnounce), never to the server.
DecoySet make_decoys(int h, QuantumSystem& sys, Rng& rng);

// Passes iff every reported label matches; a mismatch means the server did
// not actually perform the Bell measurements.
void verify_decoys(const std::vector<BellLabel>& reported,
                   const std::vector<BellLabel>& expected);

}  // namespace bqc
