#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bqc/adversary.hpp"
#include "bqc/mbqc.hpp"
#include "bqc/network.hpp"
#include "bqc/padding.hpp"
#include "bqc/quantum_system.hpp"

namespace bqc {

// Configuration / input problems; the CLI maps these to exit code 1.
struct ConfigError : SimError {
    explicit ConfigError(const std::string& what) : SimError(what) {}
};

enum class Variant { BFK, DoubleServer, TripleServer, SingleServer };

std::string to_string(Variant v);

enum class ForwardOrder { Original, Shuffled };

struct TestHooks {
    bool force_theta_zero = false;
    bool force_r_zero = false;
};

struct RunConfig {
    Variant variant = Variant::BFK;
    bool classical_client = false;
    int m = 0;  // qubits of computation; 0 = infer from the computation
    double delta = 2.0;
    double p_forward = 0.5;
    int decoys = 4;       // h
    int check_decoys = 2; // l < h
    AdversarySpec adversary;
    std::string adversary_role = "auto";
    std::uint64_t seed = 1;
    int remote_basis_sign = -1;   // steering measurements (D3, Step 6)
    int pattern_basis_sign = +1;  // pattern measurements (S5)
    ForwardOrder forward_order = ForwardOrder::Original;
    TestHooks hooks;

    int n() const { return static_cast<int>(std::ceil((2.0 + delta) * m)); }
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

// Throws ConfigError; fills cfg.m from the computation when unset.
void validate_config(RunConfig& cfg, const Computation& comp);

// Who owns which live qubit; transfers follow QubitTransfer messages.
class QubitRegistry {
public:
    void created(int qubit, PartyId owner) { owner_[qubit] = owner; }
    void require_owner(int qubit, PartyId party) const;
    void transfer(int qubit, PartyId from, PartyId to);
    void measured(int qubit, PartyId party);

private:
    std::map<int, PartyId> owner_;
};

// Mid-run inspection points for tests: the simulator state plus whatever the
// emitting party knows (pairings, expected angles, frames).
struct Checkpoint {
    std::string name;
    const QuantumSystem* sys = nullptr;
    std::vector<int> qubits;
    std::vector<AngleS> angles;
    std::vector<BellLabel> labels;
    std::vector<int> s, t;
};

using Observer = std::function<void(const Checkpoint&)>;

// Out-of-band bookkeeping for checkpoints; never visible to parties' logic.
struct DebugNotes {
    std::vector<int> pair_first;    // server-side handle per center pair index
    std::vector<int> pair_second;   // client-side handle per center pair index
    std::vector<int> pair2_first;   // triple server only: Bob2's handles
    std::vector<int> pair2_second;  // triple server only: Alice's A' handles
};

struct RunContext {
    const RunConfig& cfg;
    const Computation& comp;
    QuantumSystem& sys;
    QubitRegistry& reg;
    Network& net;
    BranchSource& quantum;
    Rng master;
    DebugNotes notes;
    Observer* observer = nullptr;

    void send(PartyId from, PartyId to, Message msg);
    int measure_rotated(PartyId who, int qubit, AngleS basis, int sign);
    int measure_computational(PartyId who, int qubit);
    BellLabel measure_bell(PartyId who, int a, int b);
    void discard(PartyId who, int qubit);
    void observe(Checkpoint cp) const {
        if (observer) (*observer)(cp);
    }
};

struct AbortInfo {
    AbortReason reason;
    std::string detail;
};

struct ProtocolResult {
    std::vector<int> output_bits;  // empty when aborted
    Transcript transcript;
    std::optional<AbortInfo> aborted;

    // The server side's view: classical messages it received plus the
    // outcome reports it sent, in transcript order.
    std::vector<TranscriptRecord> bob_view;
};

ProtocolResult run_protocol(const RunConfig& cfg, const Computation& comp,
                            BranchSource* quantum = nullptr, Observer* observer = nullptr);

ProtocolResult run_bfk(const RunConfig& cfg, const Computation& comp,
                       BranchSource* quantum = nullptr, Observer* observer = nullptr);
ProtocolResult run_double_server(const RunConfig& cfg, const Computation& comp,
                                 BranchSource* quantum = nullptr, Observer* observer = nullptr);
ProtocolResult run_triple_server(const RunConfig& cfg, const Computation& comp,
                                 BranchSource* quantum = nullptr, Observer* observer = nullptr);
ProtocolResult run_single_server(const RunConfig& cfg, const Computation& comp,
                                 BranchSource* quantum = nullptr, Observer* observer = nullptr);
ProtocolResult run_single_server_classical(const RunConfig& cfg, const Computation& comp,
                                           BranchSource* quantum = nullptr,
                                           Observer* observer = nullptr);

// Survivor-shortfall aborts restart with a seed derived from the shot seed;
// other aborts are terminal.
ProtocolResult run_with_retries(RunConfig cfg, const Computation& comp,
                                std::uint64_t shot_seed, int budget = 16,
                                Observer* observer = nullptr);

// Exact output distribution of one run (classical randomness fixed by the
// seed, every quantum branch enumerated). Keys are output bit strings.
std::map<std::string, double> exact_output_distribution(const RunConfig& cfg,
                                                        const Computation& comp,
                                                        BranchStats* stats = nullptr);

// Step 2: independent forwarding. Returns the surviving original indices in
// forwarding order; entry i is the original index at forwarded position i.
std::vector<int> alice_forward(int count, double p_forward, Rng& rng);

struct PairingRecord {
    std::vector<int> s;  // m indices from the first half
    std::vector<int> t;  // m indices from the second half, matched to s by slot
    std::vector<BellLabel> frames;  // filled once the swap outcomes arrive
};

// Uniform m-subsets of each survivor list plus a uniform matching.
PairingRecord choose_pairs(const std::vector<int>& first_half_survivors,
                           const std::vector<int>& second_half_survivors, int m, Rng& rng);

// Oracle checks for the two basis-sign conventions (cached per sign).
bool residual_identity_holds(int remote_sign);
bool pattern_sign_valid(int pattern_sign);

}  // namespace bqc
