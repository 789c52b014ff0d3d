#include "bqc/messages.hpp"

#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bqc {

std::string to_string(PartyId id) {
    switch (id) {
        case PartyId::Alice: return "Alice";
        case PartyId::Bob: return "Bob";
        case PartyId::Bob1: return "Bob1";
        case PartyId::Bob2: return "Bob2";
        case PartyId::Bob3: return "Bob3";
        case PartyId::Center: return "Center";
    }
    throw SimError("unknown party id");
}

PartyId party_from_string(const std::string& name) {
    for (PartyId id : {PartyId::Alice, PartyId::Bob, PartyId::Bob1, PartyId::Bob2, PartyId::Bob3,
                       PartyId::Center})
        if (to_string(id) == name) return id;
    throw SimError("unknown party name: " + name);
}

std::string to_string(MessageKind kind) {
    switch (kind) {
        case MessageKind::QubitTransfer: return "QubitTransfer";
        case MessageKind::AngleSeq: return "AngleSeq";
        case MessageKind::BitSeq: return "BitSeq";
        case MessageKind::BellLabelSeq: return "BellLabelSeq";
        case MessageKind::PositionList: return "PositionList";
        case MessageKind::Computation: return "Computation";
        case MessageKind::DecoyAnnounce: return "DecoyAnnounce";
        case MessageKind::Abort: return "Abort";
    }
    throw SimError("unknown message kind");
}

Message Message::qubit_transfer(std::vector<int> handles) {
    Message m;
    m.kind = MessageKind::QubitTransfer;
    m.qubits = std::move(handles);
    return m;
}

Message Message::angle_seq(std::vector<AngleS> angles) {
    Message m;
    m.kind = MessageKind::AngleSeq;
    m.angles = std::move(angles);
    return m;
}

Message Message::bit_seq(std::vector<int> bits) {
    Message m;
    m.kind = MessageKind::BitSeq;
    m.bits = std::move(bits);
    return m;
}

Message Message::bell_label_seq(std::vector<BellLabel> labels) {
    Message m;
    m.kind = MessageKind::BellLabelSeq;
    m.labels = std::move(labels);
    return m;
}

Message Message::position_list(std::vector<int> positions) {
    Message m;
    m.kind = MessageKind::PositionList;
    m.positions = std::move(positions);
    return m;
}

Message Message::computation(std::shared_ptr<const GraphSpec> graph) {
    Message m;
    m.kind = MessageKind::Computation;
    m.graph = std::move(graph);
    return m;
}

Message Message::decoy_announce(std::vector<BellLabel> labels, std::vector<int> positions) {
    Message m;
    m.kind = MessageKind::DecoyAnnounce;
    m.labels = std::move(labels);
    m.positions = std::move(positions);
    return m;
}

Message Message::abort(std::string reason) {
    Message m;
    m.kind = MessageKind::Abort;
    m.text = std::move(reason);
    return m;
}

nlohmann::json message_payload_json(const Message& msg) {
    nlohmann::json payload = nlohmann::json::object();
    switch (msg.kind) {
        case MessageKind::QubitTransfer:
            payload["handles"] = msg.qubits;  // opaque ids only, never amplitudes
            break;
        case MessageKind::AngleSeq: {
            std::vector<int> ks;
            for (AngleS a : msg.angles) ks.push_back(a.k());
            payload["k"] = ks;
            break;
        }
        case MessageKind::BitSeq:
            payload["bits"] = msg.bits;
            break;
        case MessageKind::BellLabelSeq: {
            nlohmann::json labels = nlohmann::json::array();
            for (BellLabel l : msg.labels) labels.push_back({l.z, l.x});
            payload["labels"] = labels;
            break;
        }
        case MessageKind::PositionList:
            payload["positions"] = msg.positions;
            break;
        case MessageKind::Computation: {
            payload["vertices"] = msg.graph ? msg.graph->num_vertices : 0;
            nlohmann::json edges = nlohmann::json::array();
            if (msg.graph)
                for (const auto& [a, b] : msg.graph->edges) edges.push_back({a, b});
            payload["edges"] = edges;
            if (msg.graph) {
                payload["order"] = msg.graph->measurement_order;
                payload["outputs"] = msg.graph->output_vertices;
            }
            break;
        }
        case MessageKind::DecoyAnnounce: {
            nlohmann::json labels = nlohmann::json::array();
            for (BellLabel l : msg.labels) labels.push_back({l.z, l.x});
            payload["labels"] = labels;
            payload["positions"] = msg.positions;
            break;
        }
        case MessageKind::Abort:
            payload["reason"] = msg.text;
            break;
    }
    return payload;
}

int Transcript::append(PartyId from, PartyId to, Message msg) {
    const int seq = static_cast<int>(records_.size());
    records_.push_back({seq, from, to, std::move(msg)});
    return seq;
}

void Transcript::write_json_lines(std::ostream& os) const {
    for (const auto& rec : records_) {
        nlohmann::json j;
        j["seq"] = rec.seq;
        j["from"] = to_string(rec.from);
        j["to"] = to_string(rec.to);
        j["kind"] = to_string(rec.msg.kind);
        j["payload"] = message_payload_json(rec.msg);
        os << j.dump() << '\n';
    }
}

std::string Transcript::to_json_lines() const {
    std::ostringstream os;
    write_json_lines(os);
    return os.str();
}

}  // namespace bqc
