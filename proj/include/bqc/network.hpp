#pragma once

#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "bqc/messages.hpp"

namespace bqc {

enum class AbortReason { Retry, Cheating, PolicyViolation };

std::string to_string(AbortReason reason);

// Terminates the current run; the runner turns it into ProtocolResult::aborted.
struct ProtocolAbort : std::exception {
    AbortReason reason;
    std::string detail;

    ProtocolAbort(AbortReason r, std::string d) : reason(r), detail(std::move(d)) {}
    const char* what() const noexcept override { return detail.c_str(); }
};

// Which ordered (sender, receiver) pairs may exchange messages.
struct ChannelPolicy {
    std::set<std::pair<PartyId, PartyId>> allowed;

    bool allows(PartyId from, PartyId to) const { return allowed.count({from, to}) != 0; }
    void allow(PartyId from, PartyId to) { allowed.insert({from, to}); }
    void allow_both(PartyId a, PartyId b) {
        allow(a, b);
        allow(b, a);
    }
};

// Per-channel FIFO queues behind the policy; every accepted send is logged.
// Delivery scans channels in a fixed order, so runs are reproducible.
class Network {
public:
    explicit Network(ChannelPolicy policy) : policy_(std::move(policy)) {}

    void send(PartyId from, PartyId to, Message msg) {
        if (!policy_.allows(from, to))
            throw ProtocolAbort(AbortReason::PolicyViolation,
                                "illegal channel " + to_string(from) + "->" + to_string(to));
        Message logged = msg;
        transcript_.append(from, to, std::move(logged));
        queues_[{from, to}].push_back(std::move(msg));
    }

    bool deliver_one(const std::function<void(PartyId, PartyId, const Message&)>& sink) {
        for (auto& [chan, q] : queues_) {
            if (q.empty()) continue;
            Message msg = std::move(q.front());
            q.pop_front();
            sink(chan.first, chan.second, msg);
            return true;
        }
        return false;
    }

    const ChannelPolicy& policy() const { return policy_; }
    Transcript& transcript() { return transcript_; }
    const Transcript& transcript() const { return transcript_; }

private:
    ChannelPolicy policy_;
    Transcript transcript_;
    std::map<std::pair<PartyId, PartyId>, std::deque<Message>> queues_;
};

}  // namespace bqc
