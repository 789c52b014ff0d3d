#include "bqc/statevector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace bqc {

namespace {

constexpr int kMaxQubits = 24;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw SimError("statevector qubit count out of range");
    amps_.assign(std::size_t{1} << num_qubits, cx{});
    amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<cx> amps) {
    std::size_t d = amps.size();
    if (d < 2 || (d & (d - 1)) != 0) throw SimError("amplitude count must be a power of two");
    int n = 0;
    while ((std::size_t{1} << n) < d) ++n;
    Statevector sv(n);
    sv.amps_ = std::move(amps);
    if (std::abs(sv.norm() - 1.0) > 1e-6) throw SimError("amplitudes are not normalized");
    sv.renormalize();
    return sv;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const cx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void Statevector::renormalize() {
    double n = norm();
    if (n <= 0.0) throw SimError("cannot renormalize a zero vector");
    for (cx& a : amps_) a /= n;
}

void Statevector::dump(std::ostream& os) const {
    char buf[96];
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu %.17g %.17g", i, amps_[i].real(), amps_[i].imag());
        os << buf << '\n';
    }
}

void Statevector::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) throw SimError("qubit index out of range");
}

Statevector plus_state(AngleS theta) {
    Statevector sv(1);
    sv.amplitudes()[0] = kInvSqrt2;
    sv.amplitudes()[1] = theta.phase() * kInvSqrt2;
    return sv;
}

Statevector bell_state(BellLabel label) {
    // (1/sqrt2) sum_a (-1)^{z a} |a>_0 |a^x>_1
    Statevector sv(2);
    auto amps = sv.amplitudes();
    amps[0] = 0.0;
    for (int a = 0; a <= 1; ++a) {
        std::size_t idx = static_cast<std::size_t>(a) | (static_cast<std::size_t>(a ^ label.x) << 1);
        amps[idx] = ((label.z && a) ? -1.0 : 1.0) * kInvSqrt2;
    }
    return sv;
}

Statevector tensor(const Statevector& a, const Statevector& b) {
    if (a.num_qubits() + b.num_qubits() > kMaxQubits)
        throw SimError("tensor product exceeds qubit limit");
    Statevector out(a.num_qubits() + b.num_qubits());
    auto oa = out.amplitudes();
    for (std::size_t ib = 0; ib < b.dim(); ++ib) {
        const cx vb = b.amp(ib);
        const std::size_t base = ib << a.num_qubits();
        for (std::size_t ia = 0; ia < a.dim(); ++ia) oa[base | ia] = vb * a.amp(ia);
    }
    return out;
}

Statevector permute_qubits(const Statevector& sv, const std::vector<int>& new_pos) {
    const int n = sv.num_qubits();
    if (static_cast<int>(new_pos.size()) != n) throw SimError("permutation size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : new_pos) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
            throw SimError("invalid qubit permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    Statevector out(n);
    auto oa = out.amplitudes();
    for (std::size_t idx = 0; idx < sv.dim(); ++idx) {
        std::size_t idx2 = 0;
        for (int q = 0; q < n; ++q)
            if (idx & (std::size_t{1} << q)) idx2 |= std::size_t{1} << new_pos[static_cast<std::size_t>(q)];
        oa[idx2] = sv.amp(idx);
    }
    return out;
}

void apply_cz(Statevector& sv, int i, int j) {
    sv.check_qubit(i);
    sv.check_qubit(j);
    if (i == j) throw SimError("CZ needs two distinct qubits");
    const std::size_t mask = (std::size_t{1} << i) | (std::size_t{1} << j);
    auto amps = sv.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx)
        if ((idx & mask) == mask) amps[idx] = -amps[idx];
}

void apply_pauli_x(Statevector& sv, int q) {
    sv.check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    auto amps = sv.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx)
        if (!(idx & bit)) std::swap(amps[idx], amps[idx | bit]);
}

void apply_pauli_z(Statevector& sv, int q) {
    sv.check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    auto amps = sv.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx)
        if (idx & bit) amps[idx] = -amps[idx];
}

MeasOutcome measure_rotated(Statevector& sv, int q, AngleS theta, int sign, BranchSource& src) {
    sv.check_qubit(q);
    if (sign != 1 && sign != -1) throw SimError("basis sign must be +1 or -1");
    const cx phase = std::polar(1.0, sign * theta.radians());
    const cx phase_conj = std::conj(phase);
    const std::size_t bit = std::size_t{1} << q;
    auto amps = sv.amplitudes();

    std::array<double, 2> probs{0.0, 0.0};
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (idx & bit) continue;
        const cx a0 = amps[idx], a1 = amps[idx | bit];
        probs[0] += std::norm((a0 + phase_conj * a1) * kInvSqrt2);
        probs[1] += std::norm((a0 - phase_conj * a1) * kInvSqrt2);
    }

    const int b = src.choose(probs);
    const double p = probs[static_cast<std::size_t>(b)];
    if (p < 1e-300) throw SimError("chose a zero-probability measurement branch");
    const double inv = 1.0 / std::sqrt(p);
    const cx u1 = (b ? -phase : phase) * kInvSqrt2;  // basis element amplitudes (1, +-e^{i s theta})/sqrt2
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (idx & bit) continue;
        const cx a0 = amps[idx], a1 = amps[idx | bit];
        const cx c = (a0 + (b ? -phase_conj : phase_conj) * a1) * kInvSqrt2 * inv;
        amps[idx] = c * kInvSqrt2;
        amps[idx | bit] = c * u1;
    }
    return {b, p};
}

MeasOutcome measure_computational(Statevector& sv, int q, BranchSource& src) {
    sv.check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    auto amps = sv.amplitudes();
    std::array<double, 2> probs{0.0, 0.0};
    for (std::size_t idx = 0; idx < amps.size(); ++idx)
        probs[(idx & bit) ? 1 : 0] += std::norm(amps[idx]);

    const int b = src.choose(probs);
    const double p = probs[static_cast<std::size_t>(b)];
    if (p < 1e-300) throw SimError("chose a zero-probability measurement branch");
    const double inv = 1.0 / std::sqrt(p);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const bool hit = ((idx & bit) != 0) == (b == 1);
        amps[idx] = hit ? amps[idx] * inv : cx{};
    }
    return {b, p};
}

BellMeasResult measure_bell(Statevector& sv, int i, int j, BranchSource& src) {
    sv.check_qubit(i);
    sv.check_qubit(j);
    if (i == j) throw SimError("Bell measurement needs two distinct qubits");
    const std::size_t bi = std::size_t{1} << i;
    const std::size_t bj = std::size_t{1} << j;
    auto amps = sv.amplitudes();

    // Overlap with |psi_{z,x}> on (i, j), qubit i as the first particle:
    // c_{z,x}(rest) = (amp[a=0, b=x] + (-1)^z amp[a=1, b=x^1]) / sqrt2.
    std::array<double, 4> probs{};
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (idx & (bi | bj)) continue;
        for (int label = 0; label < 4; ++label) {
            const int z = (label >> 1) & 1, x = label & 1;
            const cx lo = amps[idx | (x ? bj : 0)];
            const cx hi = amps[idx | bi | (x ? 0 : bj)];
            probs[static_cast<std::size_t>(label)] +=
                std::norm((lo + (z ? -hi : hi)) * kInvSqrt2);
        }
    }

    const int label = src.choose(probs);
    const double p = probs[static_cast<std::size_t>(label)];
    if (p < 1e-300) throw SimError("chose a zero-probability measurement branch");
    const int z = (label >> 1) & 1, x = label & 1;
    const double inv = 1.0 / std::sqrt(p);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (idx & (bi | bj)) continue;
        const std::size_t slot0 = idx | (x ? bj : 0);
        const std::size_t slot1 = idx | bi | (x ? 0 : bj);
        const cx c = (amps[slot0] + (z ? -amps[slot1] : amps[slot1])) * kInvSqrt2 * inv;
        const std::size_t other0 = idx | (x ? 0 : bj);
        const std::size_t other1 = idx | bi | (x ? bj : 0);
        amps[slot0] = c * kInvSqrt2;
        amps[slot1] = (z ? -c : c) * kInvSqrt2;
        if (other0 != slot0) amps[other0] = cx{};
        if (other1 != slot1) amps[other1] = cx{};
    }
    return {BellLabel::from_index(label), p};
}

Statevector remove_qubits(const Statevector& sv, std::vector<int> removed) {
    std::sort(removed.begin(), removed.end());
    removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
    for (int q : removed) sv.check_qubit(q);
    if (removed.empty()) return sv;
    const int n = sv.num_qubits();
    if (static_cast<int>(removed.size()) == n)
        throw SimError("cannot remove every qubit of a statevector");

    std::vector<int> kept;
    for (int q = 0; q < n; ++q)
        if (!std::binary_search(removed.begin(), removed.end(), q)) kept.push_back(q);

    auto gather = [](std::size_t idx, const std::vector<int>& bits) {
        std::size_t out = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (idx & (std::size_t{1} << bits[i])) out |= std::size_t{1} << i;
        return out;
    };
    auto compose = [&](std::size_t a_part, std::size_t b_part) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < removed.size(); ++i)
            if (a_part & (std::size_t{1} << i)) idx |= std::size_t{1} << removed[i];
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (b_part & (std::size_t{1} << i)) idx |= std::size_t{1} << kept[i];
        return idx;
    };

    // Pivot on the largest amplitude, then verify the state factors as
    // chi(removed) x phi(kept) before extracting phi.
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t idx = 0; idx < sv.dim(); ++idx) {
        const double m = std::norm(sv.amp(idx));
        if (m > best) {
            best = m;
            pivot = idx;
        }
    }
    const std::size_t a_star = gather(pivot, removed);
    const std::size_t b_star = gather(pivot, kept);
    const cx pivot_amp = sv.amp(pivot);

    const std::size_t dim_a = std::size_t{1} << removed.size();
    const std::size_t dim_b = std::size_t{1} << kept.size();
    std::vector<cx> chi(dim_a), phi(dim_b);
    for (std::size_t a = 0; a < dim_a; ++a) chi[a] = sv.amp(compose(a, b_star));
    for (std::size_t b = 0; b < dim_b; ++b) phi[b] = sv.amp(compose(a_star, b));

    double worst = 0.0;
    for (std::size_t a = 0; a < dim_a; ++a)
        for (std::size_t b = 0; b < dim_b; ++b)
            worst = std::max(worst,
                             std::abs(sv.amp(compose(a, b)) - chi[a] * phi[b] / pivot_amp));
    if (worst > 1e-8) throw SimError("removed qubits are entangled with the rest");

    double nrm = 0.0;
    for (const cx& v : phi) nrm += std::norm(v);
    nrm = std::sqrt(nrm);
    for (cx& v : phi) v /= nrm;
    return Statevector::from_amplitudes(std::move(phi));
}

bool equal_up_to_phase(const Statevector& a, const Statevector& b, double tol) {
    if (a.num_qubits() != b.num_qubits()) throw SimError("statevector dimension mismatch");
    cx inner{};
    for (std::size_t i = 0; i < a.dim(); ++i) inner += std::conj(b.amp(i)) * a.amp(i);
    const cx c = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cx{1.0};
    double err = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) err += std::norm(a.amp(i) - c * b.amp(i));
    return std::sqrt(err) <= tol;
}

}  // namespace bqc
