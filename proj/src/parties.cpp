#include <algorithm>
#include <deque>
#include <memory>

#include "bqc/decoy.hpp"
#include "bqc/protocol.hpp"

namespace bqc {

// ---------------------------------------------------------------------------
// Ownership and context plumbing
// ---------------------------------------------------------------------------

void QubitRegistry::require_owner(int qubit, PartyId party) const {
    auto it = owner_.find(qubit);
    if (it == owner_.end()) throw SimError("qubit handle is not registered or already measured");
    if (it->second != party)
        throw SimError(to_string(party) + " does not own qubit " + std::to_string(qubit));
}

void QubitRegistry::transfer(int qubit, PartyId from, PartyId to) {
    require_owner(qubit, from);
    owner_[qubit] = to;
}

void QubitRegistry::measured(int qubit, PartyId party) {
    require_owner(qubit, party);
    owner_.erase(qubit);
}

void RunContext::send(PartyId from, PartyId to, Message msg) {
    if (msg.kind == MessageKind::QubitTransfer) {
        for (int q : msg.qubits) {
            reg.require_owner(q, from);
            if (!sys.alive(q)) throw SimError("transfer of a dead qubit handle");
        }
    }
    net.send(from, to, msg);  // policy check + transcript happen here
    if (msg.kind == MessageKind::QubitTransfer)
        for (int q : msg.qubits) reg.transfer(q, from, to);
}

int RunContext::measure_rotated(PartyId who, int qubit, AngleS basis, int sign) {
    reg.require_owner(qubit, who);
    const int bit = sys.measure_rotated(qubit, basis, sign, quantum).bit;
    reg.measured(qubit, who);
    return bit;
}

int RunContext::measure_computational(PartyId who, int qubit) {
    reg.require_owner(qubit, who);
    const int bit = sys.measure_computational(qubit, quantum).bit;
    reg.measured(qubit, who);
    return bit;
}

BellLabel RunContext::measure_bell(PartyId who, int a, int b) {
    reg.require_owner(a, who);
    reg.require_owner(b, who);
    const BellLabel label = sys.measure_bell(a, b, quantum).label;
    reg.measured(a, who);
    reg.measured(b, who);
    return label;
}

void RunContext::discard(PartyId who, int qubit) {
    reg.require_owner(qubit, who);
    sys.discard(qubit, quantum);
    reg.measured(qubit, who);
}

namespace {

void cz_owned(RunContext& ctx, PartyId who, int a, int b) {
    ctx.reg.require_owner(a, who);
    ctx.reg.require_owner(b, who);
    ctx.sys.cz(a, b);
}

// ---------------------------------------------------------------------------
// Party base: buffers messages whose prerequisites have not arrived yet
// ---------------------------------------------------------------------------

class Party {
public:
    explicit Party(PartyId id) : id_(id) {}
    virtual ~Party() = default;

    PartyId id() const { return id_; }
    virtual void start(RunContext&) {}
    virtual const std::vector<int>* output_bits() const { return nullptr; }

    void on_message(RunContext& ctx, PartyId from, const Message& msg) {
        if (try_handle(ctx, from, msg)) {
            drain(ctx);
        } else {
            pending_.emplace_back(from, msg);
        }
    }

protected:
    // Return false to requeue until prerequisites are met.
    virtual bool try_handle(RunContext& ctx, PartyId from, const Message& msg) = 0;

private:
    void drain(RunContext& ctx) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto it = pending_.begin(); it != pending_.end(); ++it) {
                if (try_handle(ctx, it->first, it->second)) {
                    pending_.erase(it);
                    progress = true;
                    break;
                }
            }
        }
    }

    PartyId id_;
    std::deque<std::pair<PartyId, Message>> pending_;
};

// ---------------------------------------------------------------------------
// Server side: builds the graph state and serves measurement requests
// ---------------------------------------------------------------------------

class PatternServerCore {
public:
    PatternServerCore(PartyId self, PartyId client, Adversary* adv)
        : self_(self), client_(client), adv_(adv) {}

    void add_qubits(RunContext& ctx, const std::vector<int>& qs) {
        qubits_.insert(qubits_.end(), qs.begin(), qs.end());
        try_build(ctx);
    }

    void set_graph(RunContext& ctx, std::shared_ptr<const GraphSpec> graph) {
        graph_ = std::move(graph);
        try_build(ctx);
    }

    bool built() const { return built_; }

    void on_delta(RunContext& ctx, const Message& msg) {
        if (msg.angles.size() != 1) throw SimError("expected a single delta angle");
        if (next_meas_ >= graph_->measurement_order.size())
            throw SimError("more measurement requests than pattern vertices");
        const int vertex = graph_->measurement_order[next_meas_++];
        std::vector<int> bits{adv_->measure_rotated(ctx, self_, qubits_[static_cast<std::size_t>(vertex)],
                                                    msg.angles[0], ctx.cfg.pattern_basis_sign)};
        adv_->filter_bits(bits);
        ctx.send(self_, client_, Message::bit_seq(bits));
    }

    void on_output_request(RunContext& ctx, const Message& msg) {
        // flip_bits targets the basis-measurement reports (the b_k), not the
        // final computational readout.
        std::vector<int> bits;
        for (int vertex : msg.positions)
            bits.push_back(adv_->measure_computational(ctx, self_,
                                                       qubits_[static_cast<std::size_t>(vertex)]));
        ctx.send(self_, client_, Message::bit_seq(bits));
    }

private:
    void try_build(RunContext& ctx) {
        if (built_ || !graph_) return;
        if (static_cast<int>(qubits_.size()) != graph_->num_vertices) return;
        for (const auto& [a, b] : graph_->edges)
            cz_owned(ctx, self_, qubits_[static_cast<std::size_t>(a)],
                     qubits_[static_cast<std::size_t>(b)]);
        built_ = true;
    }

    PartyId self_;
    PartyId client_;
    Adversary* adv_;
    std::shared_ptr<const GraphSpec> graph_;
    std::vector<int> qubits_;  // by vertex id
    bool built_ = false;
    std::size_t next_meas_ = 0;
};

// ---------------------------------------------------------------------------
// Client side: runs S2..S5 plus the output readout against one server
// ---------------------------------------------------------------------------

class BfkClientCore {
public:
    BfkClientCore(PartyId self, PartyId server) : self_(self), server_(server) {}

    void begin(RunContext& ctx, std::vector<AngleS> theta_eff, std::vector<int> r) {
        theta_eff_ = std::move(theta_eff);
        r_ = std::move(r);
        ctx.send(self_, server_,
                 Message::computation(std::make_shared<GraphSpec>(ctx.comp.graph)));
        send_next(ctx);
    }

    bool active() const { return started_ && !finished_; }
    bool finished() const { return finished_; }
    const std::vector<int>& output_bits() const { return output_bits_; }

    void on_bits(RunContext& ctx, const Message& msg) {
        const auto& g = ctx.comp.graph;
        const auto& p = ctx.comp.pattern;
        if (awaiting_outputs_) {
            if (msg.bits.size() != g.output_vertices.size())
                throw SimError("wrong output bit count");
            for (std::size_t i = 0; i < msg.bits.size(); ++i) {
                const int v = g.output_vertices[i];
                output_bits_.push_back(msg.bits[i] ^ outcome_parity(outcomes_, p.x_dep(v)));
            }
            finished_ = true;
            return;
        }
        if (msg.bits.size() != 1) throw SimError("expected a single pattern outcome bit");
        const int v = g.measurement_order[next_];
        outcomes_[v] = msg.bits[0] ^ r_[static_cast<std::size_t>(v)];
        ++next_;
        send_next(ctx);
    }

private:
    void send_next(RunContext& ctx) {
        started_ = true;
        const auto& g = ctx.comp.graph;
        const auto& p = ctx.comp.pattern;
        if (next_ < g.measurement_order.size()) {
            const int v = g.measurement_order[next_];
            const AngleS phi_prime = adapted_angle(p.phi.at(v), outcomes_, p.x_dep(v), p.z_dep(v));
            const AngleS delta =
                delta_angle(theta_eff_[static_cast<std::size_t>(v)], phi_prime,
                            r_[static_cast<std::size_t>(v)]);
            ctx.send(self_, server_, Message::angle_seq({delta}));
        } else {
            ctx.send(self_, server_, Message::position_list(g.output_vertices));
            awaiting_outputs_ = true;
        }
    }

    PartyId self_;
    PartyId server_;
    std::vector<AngleS> theta_eff_;  // by vertex
    std::vector<int> r_;             // by vertex
    std::map<int, int> outcomes_;    // r-unflipped pattern outcomes
    std::size_t next_ = 0;
    bool started_ = false;
    bool awaiting_outputs_ = false;
    bool finished_ = false;
    std::vector<int> output_bits_;
};

std::vector<AngleS> draw_thetas(RunContext& ctx, int count, const char* stream) {
    Rng rng = ctx.master.substream(stream);
    std::vector<AngleS> out;
    for (int i = 0; i < count; ++i)
        out.emplace_back(ctx.cfg.hooks.force_theta_zero ? 0 : rng.uniform_int(0, 7));
    return out;
}

std::vector<int> draw_r_bits(RunContext& ctx, int count) {
    Rng rng = ctx.master.substream("client.r");
    std::vector<int> out;
    for (int i = 0; i < count; ++i)
        out.push_back(ctx.cfg.hooks.force_r_zero ? 0 : rng.uniform_int(0, 1));
    return out;
}

// ---------------------------------------------------------------------------
// Generic pattern server party (BFK Bob, double-server Bob2)
// ---------------------------------------------------------------------------

class PatternServerParty : public Party {
public:
    PatternServerParty(PartyId self, PartyId client, AdversarySpec spec, Rng rng)
        : Party(self), adv_(spec, rng), core_(self, client, &adv_) {}

protected:
    bool try_handle(RunContext& ctx, PartyId, const Message& msg) override {
        switch (msg.kind) {
            case MessageKind::QubitTransfer:
                core_.add_qubits(ctx, msg.qubits);
                return true;
            case MessageKind::Computation:
                core_.set_graph(ctx, msg.graph);
                return true;
            case MessageKind::AngleSeq:
                if (!core_.built()) return false;
                core_.on_delta(ctx, msg);
                return true;
            case MessageKind::PositionList:
                if (!core_.built()) return false;
                core_.on_output_request(ctx, msg);
                return true;
            case MessageKind::Abort:
                return true;
            default:
                throw SimError("unexpected message at pattern server");
        }
    }

private:
    Adversary adv_;
    PatternServerCore core_;
};

// ---------------------------------------------------------------------------
// BFK (single server, quantum client)
// ---------------------------------------------------------------------------

class AliceBfk : public Party {
public:
    explicit AliceBfk(PartyId server) : Party(PartyId::Alice), server_(server), core_(PartyId::Alice, server) {}

    void start(RunContext& ctx) override {
        const int m = ctx.comp.graph.num_vertices;
        theta_ = draw_thetas(ctx, m, "client.theta");
        std::vector<int> handles;
        for (int v = 0; v < m; ++v) {
            const int q = ctx.sys.add_qubit(plus_state(theta_[static_cast<std::size_t>(v)]));
            ctx.reg.created(q, PartyId::Alice);
            handles.push_back(q);
        }
        ctx.send(PartyId::Alice, server_, Message::qubit_transfer(handles));
        core_.begin(ctx, theta_, draw_r_bits(ctx, m));
    }

    const std::vector<int>* output_bits() const override {
        return core_.finished() ? &core_.output_bits() : nullptr;
    }

protected:
    bool try_handle(RunContext& ctx, PartyId from, const Message& msg) override {
        if (from == server_ && msg.kind == MessageKind::BitSeq) {
            core_.on_bits(ctx, msg);
            return true;
        }
        throw SimError("unexpected message at BFK client");
    }

private:
    PartyId server_;
    std::vector<AngleS> theta_;
    BfkClientCore core_;
};

// ---------------------------------------------------------------------------
// Double server
// ---------------------------------------------------------------------------

class CenterDouble : public Party {
public:
    CenterDouble() : Party(PartyId::Center) {}

    void start(RunContext& ctx) override {
        const int m = ctx.cfg.m;
        std::vector<int> to_bob1, to_bob2;
        for (int i = 0; i < m; ++i) {
            auto [q1, q2] = ctx.sys.add_bell_pair({0, 0});
            ctx.reg.created(q1, PartyId::Center);
            ctx.reg.created(q2, PartyId::Center);
            to_bob1.push_back(q1);
            to_bob2.push_back(q2);
        }
        ctx.notes.pair_first = to_bob1;
        ctx.notes.pair_second = to_bob2;
        ctx.send(PartyId::Center, PartyId::Bob1, Message::qubit_transfer(to_bob1));
        ctx.send(PartyId::Center, PartyId::Bob2, Message::qubit_transfer(to_bob2));
    }

protected:
    bool try_handle(RunContext&, PartyId, const Message&) override {
        throw SimError("center expects no messages");
    }
};

// Bob1 in the double- and triple-server protocols: measures each held qubit
// in the announced basis with the remote sign and reports the bits.
class RemoteMeasureParty : public Party {
public:
    RemoteMeasureParty(PartyId self, PartyId partner, AdversarySpec spec, Rng rng)
        : Party(self), partner_(partner), adv_(spec, rng) {}

protected:
    bool try_handle(RunContext& ctx, PartyId, const Message& msg) override {
        switch (msg.kind) {
            case MessageKind::QubitTransfer:
                qubits_.insert(qubits_.end(), msg.qubits.begin(), msg.qubits.end());
                return true;
            case MessageKind::AngleSeq: {
                if (qubits_.size() < msg.angles.size()) return false;
                if (qubits_.size() != msg.angles.size())
                    throw SimError("basis count does not match held qubits");
                if (adv_.leaks_to_partner())
                    ctx.send(id(), partner_, Message::angle_seq(msg.angles));
                std::vector<int> bits;
                for (std::size_t i = 0; i < qubits_.size(); ++i)
                    bits.push_back(adv_.measure_rotated(ctx, id(), qubits_[i], msg.angles[i],
                                                        ctx.cfg.remote_basis_sign));
                adv_.filter_bits(bits);
                ctx.send(id(), PartyId::Alice, Message::bit_seq(bits));
                return true;
            }
            case MessageKind::Abort:
                return true;
            default:
                throw SimError("unexpected message at remote measurement server");
        }
    }

private:
    PartyId partner_;
    Adversary adv_;
    std::vector<int> qubits_;
};

class AliceDouble : public Party {
public:
    AliceDouble() : Party(PartyId::Alice), core_(PartyId::Alice, PartyId::Bob2) {}

    void start(RunContext& ctx) override {
        const int m = ctx.cfg.m;
        theta_ = draw_thetas(ctx, m, "client.theta");
        ctx.send(PartyId::Alice, PartyId::Bob1, Message::angle_seq(theta_));
    }

    const std::vector<int>* output_bits() const override {
        return core_.finished() ? &core_.output_bits() : nullptr;
    }

protected:
    bool try_handle(RunContext& ctx, PartyId from, const Message& msg) override {
        if (msg.kind != MessageKind::BitSeq) throw SimError("unexpected message at client");
        if (from == PartyId::Bob1 && !remote_done_) {
            if (msg.bits.size() != theta_.size()) throw SimError("wrong remote bit count");
            std::vector<AngleS> theta_eff;
            for (std::size_t i = 0; i < theta_.size(); ++i)
                theta_eff.push_back(theta_[i].plus_pi(msg.bits[i]));
            remote_done_ = true;
            ctx.observe({"remote.steered", &ctx.sys, ctx.notes.pair_second, theta_eff, {}, {}, {}});
            core_.begin(ctx, theta_eff, draw_r_bits(ctx, ctx.cfg.m));
            return true;
        }
        if (from == PartyId::Bob2 && core_.active()) {
            core_.on_bits(ctx, msg);
            return true;
        }
        return false;
    }

private:
    std::vector<AngleS> theta_;
    bool remote_done_ = false;
    BfkClientCore core_;
};

// ---------------------------------------------------------------------------
// Triple server
// ---------------------------------------------------------------------------

class CenterTriple : public Party {
public:
    CenterTriple() : Party(PartyId::Center) {}

    void start(RunContext& ctx) override {
        const int n = ctx.cfg.n();
        auto make_family = [&](std::vector<int>& firsts, std::vector<int>& seconds) {
            for (int k = 0; k < n; ++k) {
                auto [q1, q2] = ctx.sys.add_bell_pair({0, 0});
                ctx.reg.created(q1, PartyId::Center);
                ctx.reg.created(q2, PartyId::Center);
                firsts.push_back(q1);
                seconds.push_back(q2);
            }
        };
        make_family(ctx.notes.pair_first, ctx.notes.pair_second);
        make_family(ctx.notes.pair2_first, ctx.notes.pair2_second);
        ctx.send(PartyId::Center, PartyId::Bob1, Message::qubit_transfer(ctx.notes.pair_first));
        ctx.send(PartyId::Center, PartyId::Alice, Message::qubit_transfer(ctx.notes.pair_second));
        ctx.send(PartyId::Center, PartyId::Bob2, Message::qubit_transfer(ctx.notes.pair2_first));
        ctx.send(PartyId::Center, PartyId::Alice, Message::qubit_transfer(ctx.notes.pair2_second));
    }

protected:
    bool try_handle(RunContext&, PartyId, const Message&) override {
        throw SimError("center expects no messages");
    }
};

// Bob3: swaps entanglement on the designated position pairs.
class SwapServerParty : public Party {
public:
    SwapServerParty(AdversarySpec spec, Rng rng) : Party(PartyId::Bob3), adv_(spec, rng) {}

protected:
    bool try_handle(RunContext& ctx, PartyId, const Message& msg) override {
        switch (msg.kind) {
            case MessageKind::QubitTransfer:
                register_.insert(register_.end(), msg.qubits.begin(), msg.qubits.end());
                return true;
            case MessageKind::PositionList: {
                if (register_.empty()) return false;
                if (msg.positions.size() % 2 != 0) throw SimError("odd position pair list");
                std::vector<BellLabel> labels;
                for (std::size_t i = 0; i < msg.positions.size(); i += 2) {
                    const int a = register_.at(static_cast<std::size_t>(msg.positions[i]));
                    const int b = register_.at(static_cast<std::size_t>(msg.positions[i + 1]));
                    labels.push_back(adv_.measure_bell(ctx, id(), a, b));
                }
                ctx.send(id(), PartyId::Alice, Message::bell_label_seq(labels));
                return true;
            }
            case MessageKind::Abort:
                return true;
            default:
                throw SimError("unexpected message at swap server");
        }
    }

private:
    Adversary adv_;
    std::vector<int> register_;
};

// Bob2 in the triple-server protocol: holds a family of halves, keeps the
// announced subset as computation qubits, then serves the pattern.
class HoldingServerParty : public Party {
public:
    HoldingServerParty(AdversarySpec spec, Rng rng)
        : Party(PartyId::Bob2), adv_(spec, rng), core_(PartyId::Bob2, PartyId::Alice, &adv_) {}

protected:
    bool try_handle(RunContext& ctx, PartyId, const Message& msg) override {
        switch (msg.kind) {
            case MessageKind::QubitTransfer:
                raw_.insert(raw_.end(), msg.qubits.begin(), msg.qubits.end());
                return true;
            case MessageKind::PositionList:
                if (!selected_) {
                    if (raw_.empty()) return false;
                    std::vector<int> kept;
                    for (int t : msg.positions) kept.push_back(raw_.at(static_cast<std::size_t>(t)));
                    for (int q : raw_)
                        if (std::find(kept.begin(), kept.end(), q) == kept.end())
                            ctx.discard(id(), q);
                    selected_ = true;
                    core_.add_qubits(ctx, kept);
                    return true;
                }
                if (!core_.built()) return false;
                core_.on_output_request(ctx, msg);
                return true;
            case MessageKind::Computation:
                core_.set_graph(ctx, msg.graph);
                return true;
            case MessageKind::AngleSeq:
                if (!core_.built()) return false;
                core_.on_delta(ctx, msg);
                return true;
            case MessageKind::Abort:
                return true;
            default:
                throw SimError("unexpected message at holding server");
        }
    }

private:
    Adversary adv_;
    PatternServerCore core_;
    std::vector<int> raw_;
    bool selected_ = false;
};

class AliceTriple : public Party {
public:
    AliceTriple() : Party(PartyId::Alice), core_(PartyId::Alice, PartyId::Bob2) {}

    const std::vector<int>* output_bits() const override {
        return core_.finished() ? &core_.output_bits() : nullptr;
    }

protected:
    bool try_handle(RunContext& ctx, PartyId from, const Message& msg) override {
        switch (msg.kind) {
            case MessageKind::QubitTransfer:
                if (from != PartyId::Center) throw SimError("unexpected qubit source");
                if (family_a_.empty()) {
                    family_a_ = msg.qubits;
                } else {
                    family_a2_ = msg.qubits;
                    forward_and_request(ctx);
                }
                return true;
            case MessageKind::BellLabelSeq:
                on_labels(ctx, msg);
                return true;
            case MessageKind::BitSeq:
                if (from == PartyId::Bob1 && !remote_done_) {
                    on_remote_bits(ctx, msg);
                    return true;
                }
                if (from == PartyId::Bob2 && core_.active()) {
                    core_.on_bits(ctx, msg);
                    return true;
                }
                return false;
            default:
                throw SimError("unexpected message at triple-server client");
        }
    }

private:
    void forward_and_request(RunContext& ctx) {
        const int n = ctx.cfg.n();
        Rng fwd_rng = ctx.master.substream("alice.forward");
        fwd_a_ = alice_forward(n, ctx.cfg.p_forward, fwd_rng);
        Rng fwd2_rng = ctx.master.substream("alice.forward2");
        fwd_a2_ = alice_forward(n, ctx.cfg.p_forward, fwd2_rng);
        if (static_cast<int>(fwd_a_.size()) < ctx.cfg.m ||
            static_cast<int>(fwd_a2_.size()) < ctx.cfg.m)
            throw ProtocolAbort(AbortReason::Retry, "fewer than m surviving particles in a family");

        struct Entry {
            int family;
            int index;
        };
        std::vector<Entry> stream;
        for (int k : fwd_a_) stream.push_back({0, k});
        for (int l : fwd_a2_) stream.push_back({1, l});
        if (ctx.cfg.forward_order == ForwardOrder::Shuffled) {
            Rng order_rng = ctx.master.substream("alice.order");
            order_rng.shuffle(stream);
        }
        std::map<std::pair<int, int>, int> position;
        std::vector<int> handles;
        for (std::size_t pos = 0; pos < stream.size(); ++pos) {
            const auto& e = stream[pos];
            position[{e.family, e.index}] = static_cast<int>(pos);
            handles.push_back(e.family == 0 ? family_a_[static_cast<std::size_t>(e.index)]
                                            : family_a2_[static_cast<std::size_t>(e.index)]);
        }
        auto discard_unforwarded = [&](const std::vector<int>& family,
                                       const std::vector<int>& kept) {
            std::vector<bool> keep(family.size(), false);
            for (int k : kept) keep[static_cast<std::size_t>(k)] = true;
            for (std::size_t k = 0; k < family.size(); ++k)
                if (!keep[k]) ctx.discard(PartyId::Alice, family[k]);
        };
        discard_unforwarded(family_a_, fwd_a_);
        discard_unforwarded(family_a2_, fwd_a2_);
        ctx.send(PartyId::Alice, PartyId::Bob3, Message::qubit_transfer(handles));

        Rng pair_rng = ctx.master.substream("alice.pairing");
        pairing_ = choose_pairs(fwd_a_, fwd_a2_, ctx.cfg.m, pair_rng);
        std::vector<int> request;
        for (int i = 0; i < ctx.cfg.m; ++i) {
            request.push_back(position.at({0, pairing_.s[static_cast<std::size_t>(i)]}));
            request.push_back(position.at({1, pairing_.t[static_cast<std::size_t>(i)]}));
        }
        ctx.send(PartyId::Alice, PartyId::Bob3, Message::position_list(request));
    }

    void on_labels(RunContext& ctx, const Message& msg) {
        if (msg.labels.size() != static_cast<std::size_t>(ctx.cfg.m))
            throw SimError("wrong swap outcome count");
        pairing_.frames = msg.labels;
        std::vector<int> pair_qubits;
        for (int i = 0; i < ctx.cfg.m; ++i) {
            pair_qubits.push_back(
                ctx.notes.pair_first[static_cast<std::size_t>(pairing_.s[static_cast<std::size_t>(i)])]);
            pair_qubits.push_back(
                ctx.notes.pair2_first[static_cast<std::size_t>(pairing_.t[static_cast<std::size_t>(i)])]);
        }
        ctx.observe({"swap.residual", &ctx.sys, pair_qubits, {}, pairing_.frames, pairing_.s,
                     pairing_.t});

        theta_ = draw_thetas(ctx, ctx.cfg.m, "client.theta");
        std::map<int, PadInput> real;
        for (int i = 0; i < ctx.cfg.m; ++i)
            real[pairing_.s[static_cast<std::size_t>(i)]] = {theta_[static_cast<std::size_t>(i)],
                                                             pairing_.frames[static_cast<std::size_t>(i)]};
        Rng pad_rng = ctx.master.substream("alice.padding");
        padding_ = pad_angles(real, ctx.cfg.n(), pad_rng);
        ctx.send(PartyId::Alice, PartyId::Bob1, Message::angle_seq(padding_.tilde));
    }

    void on_remote_bits(RunContext& ctx, const Message& msg) {
        if (msg.bits.size() != static_cast<std::size_t>(ctx.cfg.n()))
            throw SimError("wrong remote bit count");
        std::vector<AngleS> theta_eff;
        std::vector<int> partner_qubits;
        for (int i = 0; i < ctx.cfg.m; ++i) {
            const int s = pairing_.s[static_cast<std::size_t>(i)];
            const int t = pairing_.t[static_cast<std::size_t>(i)];
            theta_eff.push_back(theta_[static_cast<std::size_t>(i)].plus_pi(
                msg.bits[static_cast<std::size_t>(s)]));
            partner_qubits.push_back(ctx.notes.pair2_first[static_cast<std::size_t>(t)]);
        }
        remote_done_ = true;
        ctx.observe({"remote.steered", &ctx.sys, partner_qubits, theta_eff, {}, pairing_.s,
                     pairing_.t});
        ctx.send(PartyId::Alice, PartyId::Bob2, Message::position_list(pairing_.t));
        core_.begin(ctx, theta_eff, draw_r_bits(ctx, ctx.cfg.m));
    }

    std::vector<int> family_a_, family_a2_;
    std::vector<int> fwd_a_, fwd_a2_;
    PairingRecord pairing_;
    std::vector<AngleS> theta_;
    PaddingRecord padding_;
    bool remote_done_ = false;
    BfkClientCore core_;
};

// ---------------------------------------------------------------------------
// Single server (and the classical-client variant)
// ---------------------------------------------------------------------------

struct StreamEntry {
    enum Kind { Real, DecoyHalf } kind;
    int index;  // original pair index k, or decoy half index d = 2*pair + half
};

class CenterSingle : public Party {
public:
    CenterSingle() : Party(PartyId::Center) {}

    void start(RunContext& ctx) override {
        const int n2 = 2 * ctx.cfg.n();
        std::vector<int> b_handles, a_handles;
        for (int k = 0; k < n2; ++k) {
            auto [qb, qa] = ctx.sys.add_bell_pair({0, 0});
            ctx.reg.created(qb, PartyId::Center);
            ctx.reg.created(qa, PartyId::Center);
            b_handles.push_back(qb);
            a_handles.push_back(qa);
        }
        ctx.notes.pair_first = b_handles;
        ctx.notes.pair_second = a_handles;
        ctx.send(PartyId::Center, PartyId::Bob, Message::qubit_transfer(b_handles));

        Rng decoy_rng = ctx.master.substream("center.decoys");
        DecoySet decoys = make_decoys(ctx.cfg.decoys, ctx.sys, decoy_rng);
        std::vector<int> decoy_handles;
        for (const auto& [q1, q2] : decoys.pairs) {
            ctx.reg.created(q1, PartyId::Center);
            ctx.reg.created(q2, PartyId::Center);
            decoy_handles.push_back(q1);
            decoy_handles.push_back(q2);
        }

        if (!ctx.cfg.classical_client) {
            ctx.send(PartyId::Center, PartyId::Alice, Message::qubit_transfer(a_handles));
            ctx.send(PartyId::Center, PartyId::Alice, Message::qubit_transfer(decoy_handles));
            ctx.send(PartyId::Center, PartyId::Alice,
                     Message::decoy_announce(decoys.labels, {}));
            return;
        }

        // Steps 1'/2': the center forwards on Alice's behalf and tells only
        // her the stream layout.
        Rng fwd_rng = ctx.master.substream("center.forward");
        std::vector<int> fwd = alice_forward(n2, ctx.cfg.p_forward, fwd_rng);
        std::vector<StreamEntry> stream;
        for (int k : fwd) stream.push_back({StreamEntry::Real, k});
        Rng mix_rng = ctx.master.substream("center.decoy_mix");
        for (int d = 0; d < 2 * ctx.cfg.decoys; ++d) {
            const int pos = mix_rng.uniform_int(0, static_cast<int>(stream.size()));
            stream.insert(stream.begin() + pos, {StreamEntry::DecoyHalf, d});
        }
        if (ctx.cfg.forward_order == ForwardOrder::Shuffled) {
            Rng order_rng = ctx.master.substream("center.order");
            order_rng.shuffle(stream);
        }
        std::vector<bool> forwarded(static_cast<std::size_t>(n2), false);
        for (int k : fwd) forwarded[static_cast<std::size_t>(k)] = true;
        for (int k = 0; k < n2; ++k)
            if (!forwarded[static_cast<std::size_t>(k)])
                ctx.discard(PartyId::Center, a_handles[static_cast<std::size_t>(k)]);

        std::vector<int> handles, layout, decoy_positions(static_cast<std::size_t>(2 * ctx.cfg.decoys));
        for (std::size_t pos = 0; pos < stream.size(); ++pos) {
            const StreamEntry& e = stream[pos];
            if (e.kind == StreamEntry::Real) {
                handles.push_back(a_handles[static_cast<std::size_t>(e.index)]);
                layout.push_back(e.index);
            } else {
                handles.push_back(decoy_handles[static_cast<std::size_t>(e.index)]);
                layout.push_back(n2 + e.index);  // >= 2n marks decoy half (index - 2n)
                decoy_positions[static_cast<std::size_t>(e.index)] = static_cast<int>(pos);
            }
        }
        ctx.send(PartyId::Center, PartyId::Bob, Message::qubit_transfer(handles));
        ctx.send(PartyId::Center, PartyId::Alice, Message::position_list(layout));
        ctx.send(PartyId::Center, PartyId::Alice,
                 Message::decoy_announce(decoys.labels, decoy_positions));
    }

protected:
    bool try_handle(RunContext&, PartyId, const Message&) override {
        throw SimError("center expects no messages");
    }
};

class AliceSingle : public Party {
public:
    AliceSingle() : Party(PartyId::Alice), core_(PartyId::Alice, PartyId::Bob) {}

    const std::vector<int>* output_bits() const override {
        return core_.finished() ? &core_.output_bits() : nullptr;
    }

protected:
    bool try_handle(RunContext& ctx, PartyId from, const Message& msg) override {
        switch (msg.kind) {
            case MessageKind::QubitTransfer:
                if (ctx.cfg.classical_client) throw SimError("classical client received qubits");
                if (a_handles_.empty()) {
                    a_handles_ = msg.qubits;
                } else {
                    decoy_handles_ = msg.qubits;
                }
                maybe_setup(ctx);
                return true;
            case MessageKind::PositionList:
                if (from != PartyId::Center) throw SimError("unexpected position list source");
                layout_ = msg.positions;
                have_layout_ = true;
                maybe_setup(ctx);
                return true;
            case MessageKind::DecoyAnnounce:
                decoy_labels_ = msg.labels;
                announced_decoy_positions_ = msg.positions;
                have_announce_ = true;
                maybe_setup(ctx);
                return true;
            case MessageKind::BellLabelSeq:
                on_labels(ctx, msg);
                return true;
            case MessageKind::BitSeq:
                if (!step6_done_) {
                    on_step6_bits(ctx, msg);
                    return true;
                }
                if (core_.active()) {
                    core_.on_bits(ctx, msg);
                    return true;
                }
                return false;
            default:
                throw SimError("unexpected message at single-server client");
        }
    }

private:
    void maybe_setup(RunContext& ctx) {
        if (setup_done_ || !have_announce_) return;
        if (ctx.cfg.classical_client) {
            if (!have_layout_) return;
            const int n2 = 2 * ctx.cfg.n();
            for (int value : layout_) {
                if (value < n2) {
                    stream_.push_back({StreamEntry::Real, value});
                } else {
                    stream_.push_back({StreamEntry::DecoyHalf, value - n2});
                }
            }
        } else {
            if (a_handles_.empty() || decoy_handles_.empty()) return;
            const int n2 = 2 * ctx.cfg.n();
            Rng fwd_rng = ctx.master.substream("alice.forward");
            std::vector<int> fwd = alice_forward(n2, ctx.cfg.p_forward, fwd_rng);
            for (int k : fwd) stream_.push_back({StreamEntry::Real, k});
            Rng mix_rng = ctx.master.substream("alice.decoy_mix");
            for (int d = 0; d < 2 * ctx.cfg.decoys; ++d) {
                const int pos = mix_rng.uniform_int(0, static_cast<int>(stream_.size()));
                stream_.insert(stream_.begin() + pos, {StreamEntry::DecoyHalf, d});
            }
            if (ctx.cfg.forward_order == ForwardOrder::Shuffled) {
                Rng order_rng = ctx.master.substream("alice.order");
                order_rng.shuffle(stream_);
            }
            std::vector<bool> forwarded(static_cast<std::size_t>(n2), false);
            for (int k : fwd) forwarded[static_cast<std::size_t>(k)] = true;
            for (int k = 0; k < n2; ++k)
                if (!forwarded[static_cast<std::size_t>(k)])
                    ctx.discard(PartyId::Alice, a_handles_[static_cast<std::size_t>(k)]);
            std::vector<int> handles;
            for (const StreamEntry& e : stream_)
                handles.push_back(e.kind == StreamEntry::Real
                                      ? a_handles_[static_cast<std::size_t>(e.index)]
                                      : decoy_handles_[static_cast<std::size_t>(e.index)]);
            ctx.send(PartyId::Alice, PartyId::Bob, Message::qubit_transfer(handles));
        }
        setup_done_ = true;
        request_swaps(ctx);
    }

    void request_swaps(RunContext& ctx) {
        const int n = ctx.cfg.n();
        std::vector<int> first_half, second_half;
        std::map<int, int> position_of;  // original index -> stream position
        std::map<int, int> decoy_position;
        for (std::size_t pos = 0; pos < stream_.size(); ++pos) {
            const StreamEntry& e = stream_[pos];
            if (e.kind == StreamEntry::Real) {
                position_of[e.index] = static_cast<int>(pos);
                (e.index < n ? first_half : second_half).push_back(e.index);
            } else {
                decoy_position[e.index] = static_cast<int>(pos);
            }
        }
        Rng pair_rng = ctx.master.substream("alice.pairing");
        pairing_ = choose_pairs(first_half, second_half, ctx.cfg.m, pair_rng);

        // The l checked decoys are a uniform subset of the h pairs.
        std::vector<int> decoy_ids(static_cast<std::size_t>(ctx.cfg.decoys));
        for (int i = 0; i < ctx.cfg.decoys; ++i) decoy_ids[static_cast<std::size_t>(i)] = i;
        Rng check_rng = ctx.master.substream("alice.decoy_choice");
        check_rng.shuffle(decoy_ids);
        checked_decoys_.assign(decoy_ids.begin(),
                               decoy_ids.begin() + ctx.cfg.check_decoys);

        struct Slot {
            bool is_decoy;
            int index;  // pairing slot or decoy pair id
        };
        std::vector<Slot> slots;
        for (int i = 0; i < ctx.cfg.m; ++i) slots.push_back({false, i});
        for (int d : checked_decoys_) slots.push_back({true, d});
        Rng order_rng = ctx.master.substream("alice.request_order");
        order_rng.shuffle(slots);

        std::vector<int> request;
        slot_plan_.clear();
        for (const Slot& slot : slots) {
            slot_plan_.push_back({slot.is_decoy, slot.index});
            if (slot.is_decoy) {
                request.push_back(decoy_position.at(2 * slot.index));
                request.push_back(decoy_position.at(2 * slot.index + 1));
            } else {
                request.push_back(position_of.at(pairing_.s[static_cast<std::size_t>(slot.index)]));
                request.push_back(position_of.at(pairing_.t[static_cast<std::size_t>(slot.index)]));
            }
        }
        ctx.send(PartyId::Alice, PartyId::Bob, Message::position_list(request));
    }

    void on_labels(RunContext& ctx, const Message& msg) {
        if (msg.labels.size() != slot_plan_.size()) throw SimError("wrong swap outcome count");
        pairing_.frames.assign(static_cast<std::size_t>(ctx.cfg.m), BellLabel{0, 0});
        std::vector<BellLabel> reported_decoys, expected_decoys;
        for (std::size_t i = 0; i < slot_plan_.size(); ++i) {
            const auto& [is_decoy, index] = slot_plan_[i];
            if (is_decoy) {
                reported_decoys.push_back(msg.labels[i]);
                expected_decoys.push_back(decoy_labels_[static_cast<std::size_t>(index)]);
            } else {
                pairing_.frames[static_cast<std::size_t>(index)] = msg.labels[i];
            }
        }
        try {
            verify_decoys(reported_decoys, expected_decoys);
        } catch (const ProtocolAbort& abort) {
            ctx.send(PartyId::Alice, PartyId::Bob, Message::abort(abort.detail));
            throw;
        }

        std::vector<int> pair_qubits;
        for (int i = 0; i < ctx.cfg.m; ++i) {
            pair_qubits.push_back(ctx.notes.pair_first[static_cast<std::size_t>(
                pairing_.s[static_cast<std::size_t>(i)])]);
            pair_qubits.push_back(ctx.notes.pair_first[static_cast<std::size_t>(
                pairing_.t[static_cast<std::size_t>(i)])]);
        }
        ctx.observe({"swap.residual", &ctx.sys, pair_qubits, {}, pairing_.frames, pairing_.s,
                     pairing_.t});

        theta_ = draw_thetas(ctx, ctx.cfg.m, "client.theta");
        std::map<int, PadInput> real;
        for (int i = 0; i < ctx.cfg.m; ++i)
            real[pairing_.s[static_cast<std::size_t>(i)]] = {
                theta_[static_cast<std::size_t>(i)], pairing_.frames[static_cast<std::size_t>(i)]};
        Rng pad_rng = ctx.master.substream("alice.padding");
        padding_ = pad_angles(real, ctx.cfg.n(), pad_rng);
        ctx.send(PartyId::Alice, PartyId::Bob, Message::angle_seq(padding_.tilde));
    }

    void on_step6_bits(RunContext& ctx, const Message& msg) {
        if (msg.bits.size() != static_cast<std::size_t>(ctx.cfg.n()))
            throw SimError("wrong step-6 bit count");
        std::vector<AngleS> theta_eff;
        std::vector<int> partner_qubits;
        for (int i = 0; i < ctx.cfg.m; ++i) {
            const int s = pairing_.s[static_cast<std::size_t>(i)];
            const int t = pairing_.t[static_cast<std::size_t>(i)];
            theta_eff.push_back(theta_[static_cast<std::size_t>(i)].plus_pi(
                msg.bits[static_cast<std::size_t>(s)]));
            partner_qubits.push_back(ctx.notes.pair_first[static_cast<std::size_t>(t)]);
        }
        step6_done_ = true;
        ctx.observe({"remote.steered", &ctx.sys, partner_qubits, theta_eff, {}, pairing_.s,
                     pairing_.t});
        ctx.send(PartyId::Alice, PartyId::Bob, Message::position_list(pairing_.t));
        core_.begin(ctx, theta_eff, draw_r_bits(ctx, ctx.cfg.m));
    }

    std::vector<int> a_handles_, decoy_handles_;
    std::vector<BellLabel> decoy_labels_;
    std::vector<int> announced_decoy_positions_;
    std::vector<int> layout_;
    bool have_layout_ = false;
    bool have_announce_ = false;
    bool setup_done_ = false;
    std::vector<StreamEntry> stream_;
    PairingRecord pairing_;
    std::vector<std::pair<bool, int>> slot_plan_;
    std::vector<int> checked_decoys_;
    std::vector<AngleS> theta_;
    PaddingRecord padding_;
    bool step6_done_ = false;
    BfkClientCore core_;
};

class BobSingle : public Party {
public:
    BobSingle(AdversarySpec spec, Rng rng)
        : Party(PartyId::Bob), adv_(spec, rng), core_(PartyId::Bob, PartyId::Alice, &adv_) {}

protected:
    bool try_handle(RunContext& ctx, PartyId from, const Message& msg) override {
        switch (msg.kind) {
            case MessageKind::QubitTransfer:
                // The center's first transfer is the 2n halves in index
                // order; everything else is the forwarded stream.
                if (from == PartyId::Center && b_qubits_.empty()) {
                    b_qubits_ = msg.qubits;
                } else {
                    register_.insert(register_.end(), msg.qubits.begin(), msg.qubits.end());
                }
                return true;
            case MessageKind::PositionList:
                if (!pairs_done_) {
                    if (b_qubits_.empty() || register_.empty()) return false;
                    std::vector<BellLabel> labels;
                    for (std::size_t i = 0; i < msg.positions.size(); i += 2) {
                        const int a = register_.at(static_cast<std::size_t>(msg.positions[i]));
                        const int b = register_.at(static_cast<std::size_t>(msg.positions[i + 1]));
                        labels.push_back(adv_.measure_bell(ctx, id(), a, b));
                    }
                    pairs_done_ = true;
                    ctx.send(id(), PartyId::Alice, Message::bell_label_seq(labels));
                    return true;
                }
                if (!kept_done_) {
                    if (!step6_done_) return false;
                    std::vector<int> kept;
                    for (int t : msg.positions)
                        kept.push_back(b_qubits_.at(static_cast<std::size_t>(t)));
                    const int n = static_cast<int>(b_qubits_.size()) / 2;
                    for (int k = n; k < 2 * n; ++k) {
                        const int q = b_qubits_[static_cast<std::size_t>(k)];
                        if (ctx.sys.alive(q) &&
                            std::find(kept.begin(), kept.end(), q) == kept.end())
                            ctx.discard(id(), q);
                    }
                    kept_done_ = true;
                    core_.add_qubits(ctx, kept);
                    return true;
                }
                if (!core_.built()) return false;
                core_.on_output_request(ctx, msg);
                return true;
            case MessageKind::AngleSeq:
                if (!step6_done_) {
                    if (b_qubits_.empty()) return false;
                    if (msg.angles.size() * 2 != b_qubits_.size())
                        throw SimError("expected one basis per first-half qubit");
                    std::vector<int> bits;
                    for (std::size_t k = 0; k < msg.angles.size(); ++k)
                        bits.push_back(adv_.measure_rotated(ctx, id(), b_qubits_[k], msg.angles[k],
                                                            ctx.cfg.remote_basis_sign));
                    adv_.filter_bits(bits);
                    step6_done_ = true;
                    ctx.send(id(), PartyId::Alice, Message::bit_seq(bits));
                    return true;
                }
                if (!core_.built()) return false;
                core_.on_delta(ctx, msg);
                return true;
            case MessageKind::Computation:
                core_.set_graph(ctx, msg.graph);
                return true;
            case MessageKind::Abort:
                return true;
            default:
                throw SimError("unexpected message at single server");
        }
    }

private:
    Adversary adv_;
    PatternServerCore core_;
    std::vector<int> b_qubits_;
    std::vector<int> register_;
    bool pairs_done_ = false;
    bool step6_done_ = false;
    bool kept_done_ = false;
};

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

ChannelPolicy policy_for(const RunConfig& cfg) {
    ChannelPolicy p;
    switch (cfg.variant) {
        case Variant::BFK:
            p.allow_both(PartyId::Alice, PartyId::Bob);
            break;
        case Variant::DoubleServer:
            p.allow(PartyId::Center, PartyId::Bob1);
            p.allow(PartyId::Center, PartyId::Bob2);
            p.allow_both(PartyId::Alice, PartyId::Bob1);
            p.allow_both(PartyId::Alice, PartyId::Bob2);
            // Bob1 <-> Bob2 deliberately missing: they cannot communicate.
            break;
        case Variant::TripleServer:
            p.allow(PartyId::Center, PartyId::Alice);
            p.allow(PartyId::Center, PartyId::Bob1);
            p.allow(PartyId::Center, PartyId::Bob2);
            p.allow_both(PartyId::Alice, PartyId::Bob1);
            p.allow_both(PartyId::Alice, PartyId::Bob2);
            p.allow_both(PartyId::Alice, PartyId::Bob3);
            p.allow_both(PartyId::Bob1, PartyId::Bob2);
            p.allow_both(PartyId::Bob1, PartyId::Bob3);
            p.allow_both(PartyId::Bob2, PartyId::Bob3);
            break;
        case Variant::SingleServer:
            p.allow(PartyId::Center, PartyId::Alice);
            p.allow(PartyId::Center, PartyId::Bob);
            p.allow_both(PartyId::Alice, PartyId::Bob);
            break;
    }
    return p;
}

PartyId default_adversary_role(Variant variant) {
    switch (variant) {
        case Variant::BFK: return PartyId::Bob;
        case Variant::DoubleServer: return PartyId::Bob1;
        case Variant::TripleServer: return PartyId::Bob3;
        case Variant::SingleServer: return PartyId::Bob;
    }
    throw SimError("unknown variant");
}

AdversarySpec spec_for(const RunConfig& cfg, PartyId party) {
    const PartyId role = cfg.adversary_role == "auto" ? default_adversary_role(cfg.variant)
                                                      : party_from_string(cfg.adversary_role);
    return party == role ? cfg.adversary : AdversarySpec{};
}

bool is_server(PartyId id) {
    return id == PartyId::Bob || id == PartyId::Bob1 || id == PartyId::Bob2 ||
           id == PartyId::Bob3;
}

}  // namespace

ProtocolResult run_protocol(const RunConfig& cfg_in, const Computation& comp,
                            BranchSource* quantum, Observer* observer) {
    RunConfig cfg = cfg_in;
    validate_config(cfg, comp);
    if (!residual_identity_holds(cfg.remote_basis_sign))
        throw ConfigError("remote basis sign rejected by the residual-state oracle");
    if (!pattern_sign_valid(cfg.pattern_basis_sign))
        throw ConfigError("pattern basis sign rejected by the eigenstate oracle");

    QuantumSystem sys;
    QubitRegistry reg;
    Network net(policy_for(cfg));
    Rng master(cfg.seed);
    std::optional<RngBranchSource> own_source;
    BranchSource* source = quantum;
    if (!source) {
        own_source.emplace(master.substream("quantum"));
        source = &*own_source;
    }
    RunContext ctx{cfg, comp, sys, reg, net, *source, master, {}, observer};

    std::map<PartyId, std::unique_ptr<Party>> parties;
    auto adv_rng = [&](PartyId p) { return master.substream("adversary." + to_string(p)); };
    switch (cfg.variant) {
        case Variant::BFK:
            parties[PartyId::Alice] = std::make_unique<AliceBfk>(PartyId::Bob);
            parties[PartyId::Bob] = std::make_unique<PatternServerParty>(
                PartyId::Bob, PartyId::Alice, spec_for(cfg, PartyId::Bob), adv_rng(PartyId::Bob));
            break;
        case Variant::DoubleServer:
            parties[PartyId::Center] = std::make_unique<CenterDouble>();
            parties[PartyId::Alice] = std::make_unique<AliceDouble>();
            parties[PartyId::Bob1] = std::make_unique<RemoteMeasureParty>(
                PartyId::Bob1, PartyId::Bob2, spec_for(cfg, PartyId::Bob1),
                adv_rng(PartyId::Bob1));
            parties[PartyId::Bob2] = std::make_unique<PatternServerParty>(
                PartyId::Bob2, PartyId::Alice, spec_for(cfg, PartyId::Bob2),
                adv_rng(PartyId::Bob2));
            break;
        case Variant::TripleServer:
            parties[PartyId::Center] = std::make_unique<CenterTriple>();
            parties[PartyId::Alice] = std::make_unique<AliceTriple>();
            parties[PartyId::Bob1] = std::make_unique<RemoteMeasureParty>(
                PartyId::Bob1, PartyId::Bob2, spec_for(cfg, PartyId::Bob1),
                adv_rng(PartyId::Bob1));
            parties[PartyId::Bob2] = std::make_unique<HoldingServerParty>(
                spec_for(cfg, PartyId::Bob2), adv_rng(PartyId::Bob2));
            parties[PartyId::Bob3] = std::make_unique<SwapServerParty>(
                spec_for(cfg, PartyId::Bob3), adv_rng(PartyId::Bob3));
            break;
        case Variant::SingleServer:
            parties[PartyId::Center] = std::make_unique<CenterSingle>();
            parties[PartyId::Alice] = std::make_unique<AliceSingle>();
            parties[PartyId::Bob] = std::make_unique<BobSingle>(spec_for(cfg, PartyId::Bob),
                                                                adv_rng(PartyId::Bob));
            break;
    }

    ProtocolResult result;
    try {
        if (parties.count(PartyId::Center)) parties[PartyId::Center]->start(ctx);
        parties[PartyId::Alice]->start(ctx);
        while (net.deliver_one([&](PartyId from, PartyId to, const Message& msg) {
            auto it = parties.find(to);
            if (it == parties.end()) throw SimError("message to a party outside the variant");
            it->second->on_message(ctx, from, msg);
        })) {
        }
        const std::vector<int>* bits = parties[PartyId::Alice]->output_bits();
        if (!bits) throw SimError("protocol stalled before producing output");
        result.output_bits = *bits;
    } catch (const ProtocolAbort& abort) {
        result.aborted = AbortInfo{abort.reason, abort.detail};
    }

    result.transcript = std::move(net.transcript());
    for (const TranscriptRecord& rec : result.transcript.records()) {
        const bool classical_in = is_server(rec.to) && rec.msg.kind != MessageKind::QubitTransfer;
        const bool outcome_out = is_server(rec.from) && (rec.msg.kind == MessageKind::BitSeq ||
                                                         rec.msg.kind == MessageKind::BellLabelSeq);
        if (classical_in || outcome_out) result.bob_view.push_back(rec);
    }
    return result;
}

}  // namespace bqc
