#include "hybridmac/medium.hpp"

#include <algorithm>
#include <stdexcept>

namespace hybridmac {

const char* to_string(RxVerdict v) {
    switch (v) {
        case RxVerdict::Delivered: return "delivered";
        case RxVerdict::Collided: return "collided";
        case RxVerdict::ChannelError: return "channel_error";
    }
    return "?";
}

Duration PhyConfig::link_delay(NodeId src, NodeId dst) const {
    auto it = link_delay_override.find({src, dst});
    return it != link_delay_override.end() ? it->second : default_link_delay;
}

Medium::Medium(Simulator& sim, PhyConfig phy, std::uint64_t master_seed)
    : sim_(sim), phy_(std::move(phy)), error_rng_(master_seed, "medium.channel_error") {
    max_link_delay_ = phy_.default_link_delay;
    for (auto& [k, d] : phy_.link_delay_override) max_link_delay_ = std::max(max_link_delay_, d);
}

Duration Medium::airtime(std::uint32_t size_bytes) const {
    // ceil(8 * bytes * 1e9 / rate) on top of the fixed per-frame overhead.
    __int128 bits_ns = static_cast<__int128>(size_bytes) * 8 * 1'000'000'000;
    TimeNs payload = static_cast<TimeNs>((bits_ns + phy_.data_rate_bps - 1) / phy_.data_rate_bps);
    return phy_.per_frame_overhead + Duration{payload};
}

void Medium::attach(NodeId id, MediumClient* client) { clients_[id] = client; }

bool Medium::transmitting(NodeId node) const {
    SimTime now = sim_.now();
    for (const auto& r : flights_)
        if (r.frame->src == node && r.start <= now && now < r.end) return true;
    return false;
}

std::uint64_t Medium::begin_tx(NodeId sender, Frame frame) {
    SimTime now = sim_.now();
    if (transmitting(sender))
        throw std::logic_error("begin_tx while sender already transmitting");
    prune(now);

    Duration air = airtime(frame.air_bytes);
    frame.frame_seq = next_frame_seq_++;
    auto shared = std::make_shared<const Frame>(std::move(frame));
    flights_.push_back({shared, now, now + air});
    max_airtime_seen_ = std::max(max_airtime_seen_, air);
    std::size_t idx = flights_.size() - 1;

    if (on_tx_start) on_tx_start({shared->frame_seq, sender, shared->origin, shared->kind, now, now + air});

    for (auto& [id, client] : clients_) {
        if (id == sender) continue;
        Duration d = phy_.link_delay(sender, id);
        NodeId rx_id = id;
        MediumClient* c = client;
        sim_.schedule(now + d, "carrier_busy", [c, rx_id, this] { c->on_carrier_busy(sim_.now()); });
        bool addressed = !shared->dst || *shared->dst == id;
        if (addressed) {
            std::uint64_t seq = shared->frame_seq;
            sim_.schedule(now + air + d, "rx_complete", [this, seq, rx_id] {
                for (std::size_t i = 0; i < flights_.size(); ++i) {
                    if (flights_[i].frame->frame_seq == seq) {
                        resolve_rx(i, rx_id);
                        return;
                    }
                }
            });
        }
    }
    {
        MediumClient* self = clients_.count(sender) ? clients_[sender] : nullptr;
        if (self) {
            sim_.schedule(now + air, "tx_end", [self, shared, this] { self->on_own_tx_end(shared, sim_.now()); });
        }
    }
    (void)idx;
    return shared->frame_seq;
}

bool Medium::overlaps_at(const InFlight& r, NodeId receiver, SimTime lo, SimTime hi) const {
    // Interference window of r at the receiver, half-open.
    SimTime s, e;
    if (r.frame->src == receiver) {
        s = r.start;
        e = r.end;
    } else {
        Duration d = phy_.link_delay(r.frame->src, receiver);
        s = r.start + d;
        e = r.end + d;
    }
    return s < hi && lo < e;
}

void Medium::resolve_rx(std::size_t record_idx, NodeId receiver) {
    const InFlight rec = flights_[record_idx];
    Duration d = phy_.link_delay(rec.frame->src, receiver);
    SimTime arr_lo = rec.start + d;
    SimTime arr_hi = rec.end + d;

    RxVerdict verdict = RxVerdict::Delivered;
    for (const auto& other : flights_) {
        if (other.frame->frame_seq == rec.frame->frame_seq) continue;
        if (overlaps_at(other, receiver, arr_lo, arr_hi)) {
            verdict = RxVerdict::Collided;
            break;
        }
    }
    if (verdict == RxVerdict::Delivered) {
        bool immune = rec.frame->kind == FrameKind::Ack && !phy_.acks_subject_to_channel_error;
        if (!immune && error_rng_.bernoulli(phy_.frame_error_prob)) verdict = RxVerdict::ChannelError;
    }

    if (on_rx_resolved) on_rx_resolved(*rec.frame, receiver, verdict);
    auto it = clients_.find(receiver);
    if (it != clients_.end()) it->second->on_rx(rec.frame, verdict, sim_.now());
}

void Medium::prune(SimTime now) {
    // A record can still collide with a reception completing up to
    // max_airtime + 2*max_delay after the record left the air.
    Duration horizon = max_airtime_seen_ + 2 * max_link_delay_ + nanoseconds(1);
    std::erase_if(flights_, [&](const InFlight& r) { return r.end + horizon < now; });
}

bool Medium::carrier_busy(NodeId node, SimTime now, bool include_nav) const {
    if (include_nav) {
        auto it = nav_until_.find(node);
        if (it != nav_until_.end() && now < it->second) return true;
    }
    for (const auto& r : flights_) {
        SimTime s, e;
        if (r.frame->src == node) {
            s = r.start;
            e = r.end;
        } else {
            Duration d = phy_.link_delay(r.frame->src, node);
            s = r.start + d;
            e = r.end + d;
        }
        if (s <= now && now < e) return true;
    }
    return false;
}

SimTime Medium::physical_idle_candidate(NodeId node, SimTime now) const {
    SimTime cand = now;
    for (const auto& r : flights_) {
        SimTime s, e;
        if (r.frame->src == node) {
            s = r.start;
            e = r.end;
        } else {
            Duration d = phy_.link_delay(r.frame->src, node);
            s = r.start + d;
            e = r.end + d;
        }
        if (s <= now && now < e) cand = std::max(cand, e);
    }
    return cand;
}

void Medium::set_nav(NodeId node, SimTime until) {
    auto& slot = nav_until_[node];
    slot = std::max(slot, until);
}

SimTime Medium::nav_until(NodeId node) const {
    auto it = nav_until_.find(node);
    return it != nav_until_.end() ? it->second : SimTime{0};
}

}  // namespace hybridmac
