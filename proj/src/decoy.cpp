#include "bqc/decoy.hpp"

#include "bqc/network.hpp"

namespace bqc {

DecoySet make_decoys(int h, QuantumSystem& sys, Rng& rng) {
    if (h < 1) throw SimError("need at least one decoy pair");
    DecoySet set;
    for (int i = 0; i < h; ++i) {
        const BellLabel label = BellLabel::from_index(rng.uniform_int(0, 3));
        set.pairs.push_back(sys.add_bell_pair(label));
        set.labels.push_back(label);
    }
    return set;
}

void verify_decoys(const std::vector<BellLabel>& reported,
                   const std::vector<BellLabel>& expected) {
    if (reported.size() != expected.size()) throw SimError("decoy label count mismatch");
    for (std::size_t i = 0; i < reported.size(); ++i) {
        if (reported[i] != expected[i])
            throw ProtocolAbort(AbortReason::Cheating,
                                "decoy " + std::to_string(i) + " reported wrong Bell label");
    }
}

}  // namespace bqc
