#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bqc/error.hpp"
#include "bqc/rng.hpp"

namespace bqc {

// Every projective measurement asks a BranchSource to pick one branch from
// the Born probabilities. Sampling runs plug in an Rng; exact enumeration
// replays the same computation once per branch path.
class BranchSource {
public:
    virtual ~BranchSource() = default;
    virtual int choose(std::span<const double> probs) = 0;
};

class RngBranchSource : public BranchSource {
public:
    explicit RngBranchSource(Rng rng) : rng_(rng) {}

    int choose(std::span<const double> probs) override {
        double total = 0.0;
        for (double p : probs) total += p;
        double u = rng_.uniform() * total;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            u -= probs[i];
            if (u < 0.0) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    }

private:
    Rng rng_;
};

// Deterministic replay: follows a prescribed outcome sequence, then errors.
// Requesting a branch whose probability is below `floor` is an error, since
// the replayed trajectory would be impossible.
class ForcedBranchSource : public BranchSource {
public:
    explicit ForcedBranchSource(std::vector<int> picks, double floor = 1e-12)
        : picks_(std::move(picks)), floor_(floor) {}

    int choose(std::span<const double> probs) override {
        if (cursor_ >= picks_.size()) throw SimError("forced branch sequence exhausted");
        int pick = picks_[cursor_++];
        if (pick < 0 || pick >= static_cast<int>(probs.size()))
            throw SimError("forced branch index out of range");
        if (probs[static_cast<std::size_t>(pick)] < floor_)
            throw SimError("zero-probability branch requested in deterministic replay mode");
        return pick;
    }

private:
    std::vector<int> picks_;
    double floor_;
    std::size_t cursor_ = 0;
};

struct BranchStats {
    std::size_t leaves = 0;
    double total_probability = 0.0;
};

// Exhaustive branch enumeration by replay. `run` must be deterministic apart
// from its BranchSource choices; it is re-executed once per leaf of the
// branch tree. Returns the exact probability of each leaf key. Branches with
// conditional probability below `floor` are pruned.
std::map<std::string, double> enumerate_branches(
    const std::function<std::string(BranchSource&)>& run, double floor = 1e-12,
    BranchStats* stats = nullptr);

}  // namespace bqc
