#include "bqc/branch.hpp"

namespace bqc {

namespace {

// Follows a forced prefix, then takes the first surviving branch at every
// new decision point while logging the probability vectors seen.
class ReplayBranchSource : public BranchSource {
public:
    ReplayBranchSource(const std::vector<int>& prefix, double floor)
        : prefix_(prefix), floor_(floor) {}

    int choose(std::span<const double> probs) override {
        probs_log_.emplace_back(probs.begin(), probs.end());
        int pick;
        if (cursor_ < prefix_.size()) {
            pick = prefix_[cursor_];
            if (probs[static_cast<std::size_t>(pick)] < floor_)
                throw SimError("zero-probability branch requested in deterministic replay mode");
        } else {
            pick = -1;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                if (probs[i] >= floor_) {
                    pick = static_cast<int>(i);
                    break;
                }
            }
            if (pick < 0) throw SimError("all branches below probability floor");
        }
        ++cursor_;
        chosen_.push_back(pick);
        return pick;
    }

    const std::vector<std::vector<double>>& probs_log() const { return probs_log_; }
    const std::vector<int>& chosen() const { return chosen_; }

private:
    const std::vector<int>& prefix_;
    double floor_;
    std::size_t cursor_ = 0;
    std::vector<std::vector<double>> probs_log_;
    std::vector<int> chosen_;
};

}  // namespace

std::map<std::string, double> enumerate_branches(
    const std::function<std::string(BranchSource&)>& run, double floor, BranchStats* stats) {
    std::map<std::string, double> dist;
    std::size_t leaves = 0;
    double total = 0.0;

    std::vector<int> prefix;
    for (;;) {
        ReplayBranchSource src(prefix, floor);
        std::string key = run(src);

        double p = 1.0;
        const auto& log = src.probs_log();
        const auto& chosen = src.chosen();
        for (std::size_t i = 0; i < chosen.size(); ++i)
            p *= log[i][static_cast<std::size_t>(chosen[i])];
        dist[key] += p;
        ++leaves;
        total += p;

        // Advance to the next unexplored path (depth-first).
        std::size_t depth = chosen.size();
        bool advanced = false;
        while (depth > 0) {
            --depth;
            const auto& probs = log[depth];
            for (std::size_t j = static_cast<std::size_t>(chosen[depth]) + 1; j < probs.size();
                 ++j) {
                if (probs[j] >= floor) {
                    prefix.assign(chosen.begin(), chosen.begin() + static_cast<long>(depth));
                    prefix.push_back(static_cast<int>(j));
                    advanced = true;
                    break;
                }
            }
            if (advanced) break;
        }
        if (!advanced) break;
    }

    if (stats) {
        stats->leaves = leaves;
        stats->total_probability = total;
    }
    return dist;
}

}  // namespace bqc
