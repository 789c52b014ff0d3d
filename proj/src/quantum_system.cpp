#include "bqc/quantum_system.hpp"

#include <algorithm>

namespace bqc {

QuantumSystem::Qubit QuantumSystem::add_qubit(const Statevector& single_qubit_state) {
    if (single_qubit_state.num_qubits() != 1)
        throw SimError("add_qubit expects a single-qubit state");
    const Qubit q = next_qubit_++;
    const int f = next_factor_++;
    factors_.emplace(f, Factor{single_qubit_state, {q}});
    where_[q] = {f, 0};
    return q;
}

std::pair<QuantumSystem::Qubit, QuantumSystem::Qubit> QuantumSystem::add_bell_pair(
    BellLabel label) {
    const Qubit q1 = next_qubit_++;
    const Qubit q2 = next_qubit_++;
    const int f = next_factor_++;
    factors_.emplace(f, Factor{bell_state(label), {q1, q2}});
    where_[q1] = {f, 0};
    where_[q2] = {f, 1};
    return {q1, q2};
}

QuantumSystem::Location QuantumSystem::locate(Qubit q) const {
    auto it = where_.find(q);
    if (it == where_.end()) throw SimError("qubit handle is not live");
    return it->second;
}

QuantumSystem::Factor& QuantumSystem::factor_of(Qubit q) {
    return factors_.at(locate(q).factor);
}

const QuantumSystem::Factor& QuantumSystem::factor_of(Qubit q) const {
    return factors_.at(locate(q).factor);
}

int QuantumSystem::merge(int fa, int fb) {
    if (fa == fb) return fa;
    Factor& a = factors_.at(fa);
    Factor& b = factors_.at(fb);
    Factor merged{tensor(a.sv, b.sv), a.qubits};
    merged.qubits.insert(merged.qubits.end(), b.qubits.begin(), b.qubits.end());
    const int f = next_factor_++;
    for (std::size_t i = 0; i < merged.qubits.size(); ++i)
        where_[merged.qubits[i]] = {f, static_cast<int>(i)};
    factors_.erase(fa);
    factors_.erase(fb);
    factors_.emplace(f, std::move(merged));
    return f;
}

void QuantumSystem::drop_qubits(const std::vector<Qubit>& qs) {
    const int fid = locate(qs.front()).factor;
    std::vector<int> positions;
    for (Qubit q : qs) {
        const Location loc = locate(q);
        if (loc.factor != fid) throw SimError("drop_qubits spans factors");
        positions.push_back(loc.pos);
    }
    Factor& f = factors_.at(fid);
    if (f.qubits.size() == qs.size()) {
        factors_.erase(fid);
    } else {
        f.sv = remove_qubits(f.sv, positions);
        std::sort(positions.begin(), positions.end(), std::greater<>());
        for (int pos : positions) f.qubits.erase(f.qubits.begin() + pos);
        for (std::size_t i = 0; i < f.qubits.size(); ++i)
            where_[f.qubits[i]] = {fid, static_cast<int>(i)};
    }
    for (Qubit q : qs) where_.erase(q);
}

void QuantumSystem::cz(Qubit a, Qubit b) {
    if (a == b) throw SimError("CZ needs two distinct qubits");
    const int f = merge(locate(a).factor, locate(b).factor);
    Factor& fac = factors_.at(f);
    apply_cz(fac.sv, locate(a).pos, locate(b).pos);
}

MeasOutcome QuantumSystem::measure_rotated(Qubit q, AngleS theta, int sign, BranchSource& src) {
    const Location loc = locate(q);
    MeasOutcome out = bqc::measure_rotated(factors_.at(loc.factor).sv, loc.pos, theta, sign, src);
    drop_qubits({q});
    return out;
}

MeasOutcome QuantumSystem::measure_computational(Qubit q, BranchSource& src) {
    const Location loc = locate(q);
    MeasOutcome out = bqc::measure_computational(factors_.at(loc.factor).sv, loc.pos, src);
    drop_qubits({q});
    return out;
}

BellMeasResult QuantumSystem::measure_bell(Qubit a, Qubit b, BranchSource& src) {
    if (a == b) throw SimError("Bell measurement needs two distinct qubits");
    const int f = merge(locate(a).factor, locate(b).factor);
    BellMeasResult out = bqc::measure_bell(factors_.at(f).sv, locate(a).pos, locate(b).pos, src);
    drop_qubits({a, b});
    return out;
}

void QuantumSystem::discard(Qubit q, BranchSource& src) {
    measure_computational(q, src);
}

Statevector QuantumSystem::state_of(const std::vector<Qubit>& qs) const {
    if (qs.empty()) throw SimError("state_of needs at least one qubit");
    std::vector<int> factor_ids;
    for (Qubit q : qs) {
        const int f = locate(q).factor;
        if (std::find(factor_ids.begin(), factor_ids.end(), f) == factor_ids.end())
            factor_ids.push_back(f);
    }
    std::vector<Qubit> combined_qubits;
    std::size_t total = 0;
    for (int f : factor_ids) total += factors_.at(f).qubits.size();
    if (total != qs.size())
        throw SimError("state_of: factors contain qubits outside the request");

    Statevector joint = factors_.at(factor_ids[0]).sv;
    combined_qubits = factors_.at(factor_ids[0]).qubits;
    for (std::size_t i = 1; i < factor_ids.size(); ++i) {
        const Factor& f = factors_.at(factor_ids[i]);
        joint = tensor(joint, f.sv);
        combined_qubits.insert(combined_qubits.end(), f.qubits.begin(), f.qubits.end());
    }

    std::vector<int> new_pos(combined_qubits.size());
    for (std::size_t i = 0; i < combined_qubits.size(); ++i) {
        auto it = std::find(qs.begin(), qs.end(), combined_qubits[i]);
        if (it == qs.end()) throw SimError("state_of: request does not cover its factors");
        new_pos[i] = static_cast<int>(it - qs.begin());
    }
    return permute_qubits(joint, new_pos);
}

}  // namespace bqc
