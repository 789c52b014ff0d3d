#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "bqc/rng.hpp"
#include "bqc/statevector.hpp"

namespace bqc::test {

inline Statevector sv_from(std::initializer_list<cx> amps) {
    return Statevector::from_amplitudes(std::vector<cx>(amps));
}

inline bool amp_close(cx a, cx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

inline Statevector random_state(int num_qubits, Rng& rng) {
    std::vector<cx> amps(std::size_t{1} << num_qubits);
    // Box-Muller over the rng's uniforms; any full-support distribution works.
    for (auto& a : amps) {
        const double u1 = rng.uniform() + 1e-18;
        const double u2 = rng.uniform();
        const double u3 = rng.uniform() + 1e-18;
        const double u4 = rng.uniform();
        a = cx{std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2),
               std::sqrt(-2.0 * std::log(u3)) * std::cos(2.0 * kPi * u4)};
    }
    double norm = 0.0;
    for (const auto& a : amps) norm += std::norm(a);
    norm = std::sqrt(norm);
    for (auto& a : amps) a /= norm;
    return Statevector::from_amplitudes(std::move(amps));
}

inline double total_variation(const std::map<std::string, double>& p,
                              const std::map<std::string, double>& q) {
    double tv = 0.0;
    auto value = [](const std::map<std::string, double>& m, const std::string& k) {
        auto it = m.find(k);
        return it == m.end() ? 0.0 : it->second;
    };
    for (const auto& [k, v] : p) tv += std::abs(v - value(q, k));
    for (const auto& [k, v] : q)
        if (!p.count(k)) tv += v;
    return tv / 2.0;
}

}  // namespace bqc::test
