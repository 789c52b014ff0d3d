#pragma once

#include <cmath>
#include <compare>
#include <complex>

#include "bqc/error.hpp"

namespace bqc {

inline constexpr double kPi = 3.14159265358979323846;

// An angle from the set S = {k*pi/4 | k = 0..7}, stored as k mod 8.
// All protocol angles (theta, phi, delta, theta-tilde) live here.
class AngleS {
public:
    constexpr AngleS() : k_(0) {}
    constexpr explicit AngleS(int k) : k_(((k % 8) + 8) % 8) {}

    constexpr int k() const { return k_; }
    double radians() const { return k_ * (kPi / 4.0); }
    std::complex<double> phase() const { return std::polar(1.0, radians()); }

    constexpr AngleS operator+(AngleS o) const { return AngleS(k_ + o.k_); }
    constexpr AngleS operator-(AngleS o) const { return AngleS(k_ - o.k_); }
    constexpr AngleS operator-() const { return AngleS(-k_); }

    // theta + b*pi, the outcome-dependent flip used all over the protocols.
    constexpr AngleS plus_pi(int bit) const { return AngleS(k_ + 4 * (bit & 1)); }

    constexpr auto operator<=>(const AngleS&) const = default;

private:
    int k_;
};

// (z, x) in {0,1}^2: names a Bell state and doubles as a Pauli frame.
struct BellLabel {
    int z = 0;
    int x = 0;

    constexpr BellLabel() = default;
    constexpr BellLabel(int z_, int x_) : z(z_), x(x_) {
        if ((z & ~1) || (x & ~1)) throw SimError("BellLabel bits must be 0 or 1");
    }

    constexpr int index() const { return (z << 1) | x; }  // 0..3, order 00,01,10,11
    static constexpr BellLabel from_index(int i) { return BellLabel((i >> 1) & 1, i & 1); }

    constexpr auto operator<=>(const BellLabel&) const = default;
};

struct MeasOutcome {
    int bit = 0;
    double probability = 0.0;
};

// theta-tilde = (-1)^x * theta + z*pi, the frame-twisted angle of Step 5 / T5.
constexpr AngleS tilde_angle(AngleS theta, BellLabel frame) {
    int signed_k = frame.x ? -theta.k() : theta.k();
    return AngleS(signed_k + 4 * frame.z);
}

// Solves tilde_angle(theta, frame) == tilde for theta; a bijection on S per frame.
constexpr AngleS tilde_angle_inverse(AngleS tilde, BellLabel frame) {
    int unshifted = tilde.k() - 4 * frame.z;
    return AngleS(frame.x ? -unshifted : unshifted);
}

}  // namespace bqc
