#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "bqc/angles.hpp"
#include "bqc/branch.hpp"
#include "bqc/error.hpp"

namespace bqc {

using cx = std::complex<double>;

inline constexpr double kNormTol = 1e-10;

// Dense normalized state over n labeled qubits. Qubit 0 is the
// least-significant bit of the basis index, everywhere.
class Statevector {
public:
    explicit Statevector(int num_qubits);  // |0...0>
    static Statevector from_amplitudes(std::vector<cx> amps);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    cx amp(std::size_t index) const { return amps_[index]; }
    std::span<const cx> amplitudes() const { return amps_; }
    std::span<cx> amplitudes() { return amps_; }

    double norm() const;
    void renormalize();

    // One line per basis state: "index real imag", 17 significant digits.
    void dump(std::ostream& os) const;

    void check_qubit(int q) const;

private:
    int num_qubits_;
    std::vector<cx> amps_;
};

// (|0> + e^{i k pi/4}|1>)/sqrt(2)
Statevector plus_state(AngleS theta);

// |psi_{z,x}> = (I (x) X^x Z^z)(|00>+|11>)/sqrt(2); qubit 0 is the first
// particle, qubit 1 carries the X^x Z^z twist (Z applied first).
Statevector bell_state(BellLabel label);

// Tensor product; `a` keeps the low qubit indices, `b` is shifted up.
Statevector tensor(const Statevector& a, const Statevector& b);

// Moves qubit q to position new_pos[q]; new_pos must be a permutation.
Statevector permute_qubits(const Statevector& sv, const std::vector<int>& new_pos);

void apply_cz(Statevector& sv, int i, int j);
void apply_pauli_x(Statevector& sv, int q);
void apply_pauli_z(Statevector& sv, int q);

// Projective measurement in the basis {(|0> + (-1)^b e^{i sign theta}|1>)/sqrt2};
// bit 0 is the + element. Collapses in place, returns the sampled branch.
MeasOutcome measure_rotated(Statevector& sv, int q, AngleS theta, int sign, BranchSource& src);

MeasOutcome measure_computational(Statevector& sv, int q, BranchSource& src);

struct BellMeasResult {
    BellLabel label;
    double probability = 0.0;
};

// Projects qubits (i, j) onto one of the four Bell states, with qubit i as
// the first particle. Branch order for the chooser is label index 00,01,10,11.
BellMeasResult measure_bell(Statevector& sv, int i, int j, BranchSource& src);

// Strips qubits that are in a product state with the rest; throws SimError
// when the requested cut is entangled. Remaining qubits keep their relative
// order and are renumbered from 0.
Statevector remove_qubits(const Statevector& sv, std::vector<int> removed);

// True iff there is a unit complex c with ||a - c*b|| <= tol.
bool equal_up_to_phase(const Statevector& a, const Statevector& b, double tol);

}  // namespace bqc
