#pragma once

#include <map>
#include <vector>

#include "bqc/statevector.hpp"

namespace bqc {

// Global quantum state of a run, kept as a product of independent factors so
// that protocols with many Bell pairs stay cheap: factors merge when an
// operation entangles them and shrink as qubits are measured out. Handles
// are stable; a measured qubit's handle becomes invalid.
class QuantumSystem {
public:
    using Qubit = int;

    Qubit add_qubit(const Statevector& single_qubit_state);
    std::pair<Qubit, Qubit> add_bell_pair(BellLabel label);  // (first, second) particle

    bool alive(Qubit q) const { return where_.count(q) != 0; }
    int num_live() const { return static_cast<int>(where_.size()); }

    void cz(Qubit a, Qubit b);

    // Measurements collapse and then strip the measured qubits.
    MeasOutcome measure_rotated(Qubit q, AngleS theta, int sign, BranchSource& src);
    MeasOutcome measure_computational(Qubit q, BranchSource& src);
    BellMeasResult measure_bell(Qubit a, Qubit b, BranchSource& src);

    // Tracing out: measure in the computational basis and forget the result.
    void discard(Qubit q, BranchSource& src);

    // Joint state of exactly the given qubits, in the given order. The
    // qubits' factors must not contain any other live qubit.
    Statevector state_of(const std::vector<Qubit>& qs) const;

private:
    struct Factor {
        Statevector sv;
        std::vector<Qubit> qubits;  // qubits[i] sits at statevector position i
    };

    struct Location {
        int factor = -1;
        int pos = -1;
    };

    Factor& factor_of(Qubit q);
    const Factor& factor_of(Qubit q) const;
    Location locate(Qubit q) const;
    int merge(int fa, int fb);                        // returns surviving factor id
    void drop_qubits(const std::vector<Qubit>& qs);   // removes collapsed qubits, one factor

    std::map<int, Factor> factors_;
    std::map<Qubit, Location> where_;
    int next_qubit_ = 0;
    int next_factor_ = 0;
};

}  // namespace bqc
