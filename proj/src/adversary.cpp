#include "bqc/adversary.hpp"

#include "bqc/protocol.hpp"

namespace bqc {

AdversarySpec AdversarySpec::parse(const std::string& name) {
    AdversarySpec spec;
    if (name == "honest") {
        spec.kind = AdversaryKind::Honest;
    } else if (name == "guess_bell") {
        spec.kind = AdversaryKind::GuessBell;
    } else if (name == "flip_bits") {
        spec.kind = AdversaryKind::FlipBits;
    } else if (name.rfind("wrong_basis", 0) == 0) {
        spec.kind = AdversaryKind::WrongBasis;
        const auto colon = name.find(':');
        if (colon == std::string::npos || colon + 1 >= name.size())
            throw ConfigError("wrong_basis needs an offset, e.g. wrong_basis:2");
        spec.offset = AngleS(std::stoi(name.substr(colon + 1)));
    } else if (name == "leak_to_partner") {
        spec.kind = AdversaryKind::LeakToPartner;
    } else {
        throw ConfigError("unknown adversary strategy: " + name);
    }
    return spec;
}

std::string AdversarySpec::name() const {
    switch (kind) {
        case AdversaryKind::Honest: return "honest";
        case AdversaryKind::GuessBell: return "guess_bell";
        case AdversaryKind::FlipBits: return "flip_bits";
        case AdversaryKind::WrongBasis: return "wrong_basis:" + std::to_string(offset.k());
        case AdversaryKind::LeakToPartner: return "leak_to_partner";
    }
    throw SimError("unknown adversary kind");
}

int Adversary::measure_rotated(RunContext& ctx, PartyId who, int qubit, AngleS basis, int sign) {
    const AngleS use = spec_.kind == AdversaryKind::WrongBasis ? basis + spec_.offset : basis;
    return ctx.measure_rotated(who, qubit, use, sign);
}

BellLabel Adversary::measure_bell(RunContext& ctx, PartyId who, int a, int b) {
    if (spec_.kind == AdversaryKind::GuessBell) {
        // Skips the measurement; the pairs stay untouched.
        return BellLabel::from_index(rng_.uniform_int(0, 3));
    }
    return ctx.measure_bell(who, a, b);
}

int Adversary::measure_computational(RunContext& ctx, PartyId who, int qubit) {
    return ctx.measure_computational(who, qubit);
}

void Adversary::filter_bits(std::vector<int>& bits) const {
    if (spec_.kind == AdversaryKind::FlipBits)
        for (int& b : bits) b ^= 1;
}

}  // namespace bqc
