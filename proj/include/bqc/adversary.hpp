#pragma once

#include <string>
#include <vector>

#include "bqc/angles.hpp"
#include "bqc/messages.hpp"
#include "bqc/rng.hpp"

namespace bqc {

struct RunContext;

enum class AdversaryKind { Honest, GuessBell, FlipBits, WrongBasis, LeakToPartner };

struct AdversarySpec {
    AdversaryKind kind = AdversaryKind::Honest;
    AngleS offset{};  // WrongBasis only

    static AdversarySpec parse(const std::string& name);
    std::string name() const;
};

// Overrides a server's measure-and-report steps. The quantum state always
// evolves according to what the adversary physically does: guess_bell skips
// the Bell measurement entirely, wrong_basis really measures off-axis.
class Adversary {
public:
    Adversary(AdversarySpec spec, Rng rng) : spec_(spec), rng_(rng) {}

    int measure_rotated(RunContext& ctx, PartyId who, int qubit, AngleS basis, int sign);
    BellLabel measure_bell(RunContext& ctx, PartyId who, int a, int b);
    int measure_computational(RunContext& ctx, PartyId who, int qubit);

    // Applied to every BitSeq the server reports.
    void filter_bits(std::vector<int>& bits) const;

    bool leaks_to_partner() const { return spec_.kind == AdversaryKind::LeakToPartner; }
    const AdversarySpec& spec() const { return spec_; }

private:
    AdversarySpec spec_;
    Rng rng_;
};

}  // namespace bqc
