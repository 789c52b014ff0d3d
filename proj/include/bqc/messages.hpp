#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bqc/angles.hpp"
#include "bqc/graph.hpp"

namespace bqc {

enum class PartyId { Alice, Bob, Bob1, Bob2, Bob3, Center };

std::string to_string(PartyId id);
PartyId party_from_string(const std::string& name);

enum class MessageKind {
    QubitTransfer,
    AngleSeq,
    BitSeq,
    BellLabelSeq,
    PositionList,
    Computation,
    DecoyAnnounce,
    Abort,
};

std::string to_string(MessageKind kind);

// One wire message. Only the fields for its kind are populated.
struct Message {
    MessageKind kind = MessageKind::Abort;
    std::vector<int> qubits;                      // QubitTransfer: opaque handles
    std::vector<AngleS> angles;                   // AngleSeq
    std::vector<int> bits;                        // BitSeq
    std::vector<BellLabel> labels;                // BellLabelSeq, DecoyAnnounce
    std::vector<int> positions;                   // PositionList, DecoyAnnounce
    std::shared_ptr<const GraphSpec> graph;       // Computation (graph only; the
                                                  // pattern never leaves the client)
    std::string text;                             // Abort reason

    static Message qubit_transfer(std::vector<int> handles);
    static Message angle_seq(std::vector<AngleS> angles);
    static Message bit_seq(std::vector<int> bits);
    static Message bell_label_seq(std::vector<BellLabel> labels);
    static Message position_list(std::vector<int> positions);
    static Message computation(std::shared_ptr<const GraphSpec> graph);
    static Message decoy_announce(std::vector<BellLabel> labels, std::vector<int> positions);
    static Message abort(std::string reason);
};

nlohmann::json message_payload_json(const Message& msg);

struct TranscriptRecord {
    int seq = 0;
    PartyId from;
    PartyId to;
    Message msg;
};

// Ordered log of every inter-party message; Bob's view derives from it.
class Transcript {
public:
    int append(PartyId from, PartyId to, Message msg);
    const std::vector<TranscriptRecord>& records() const { return records_; }
    void write_json_lines(std::ostream& os) const;
    std::string to_json_lines() const;

private:
    std::vector<TranscriptRecord> records_;
};

}  // namespace bqc
