#ifndef HYBRIDMAC_MAC_HYBRID_HPP
#define HYBRIDMAC_MAC_HYBRID_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hybridmac/packet.hpp"
#include "hybridmac/time.hpp"
#include "hybridmac/wire.hpp"

namespace hybridmac {

// Three-section superframe: a TDMA section of n_tdma slots for the critical
// traffic, a contention-based control section for management and
// synchronization, and a general-purpose contention section for everything
// else. The beacon occupies the head of the frame; slot 1 starts at
// frame_start + beacon_airtime.
struct SuperframeConfig {
    Duration t_tdma = milliseconds(1);
    Duration t_ctl = milliseconds(4);
    Duration t_gen = milliseconds(95);
    int n_tdma = 1;
    Duration tau_tdma = milliseconds(1);
    Duration guard = microseconds(20);
    int sync_period_frames = 1;

    Duration t_frame() const { return t_tdma + t_ctl + t_gen; }

    // Section arithmetic: t_tdma = n_tdma * tau_tdma, all durations positive,
    // and tau_tdma must fit min_slot_payload (critical airtime + guard) when
    // given.
    std::vector<std::string> validate(Duration critical_airtime = {0}) const;
};

enum class Section : std::uint8_t { Tdma, Ctl, Gen };
const char* to_string(Section s);

// Slot ownership table. Slots are 1-based; a missing entry means the slot
// idles. Changes apply only from effective_from_frame onward.
struct SlotMap {
    std::uint32_t version = 0;
    std::uint64_t effective_from_frame = 0;
    std::map<std::uint16_t, NodeId> owner_by_slot;

    std::optional<NodeId> owner(int slot) const;
    std::vector<std::uint16_t> slots_of(NodeId node) const;
    SlotMapWire to_wire(Duration tau) const;
    static SlotMap from_wire(const SlotMapWire&);
};

// Per-node transmit queues of the hybrid MAC. The critical queue pairs each
// packet with its precomputed transmit timestamp, mirroring the
// data-queue/timestamp-queue split of the reference hardware design.
struct TdmaQueueEntry {
    std::shared_ptr<Packet> packet;
    SimTime fire_at_local{0};     // node-clock timestamp to match
    std::uint64_t target_frame = 0;
    int slot = 0;
};

struct QueueSet {
    std::deque<std::shared_ptr<Packet>> tdma_data;
    std::deque<SimTime> tdma_timestamps;  // parallel to tdma_data
    std::deque<std::shared_ptr<Packet>> csma_ctl;
    std::deque<std::shared_ptr<Packet>> csma_gen;

    // Bookkeeping that belongs next to the timestamp queue.
    std::deque<TdmaQueueEntry> tdma_meta;

    void push_tdma(TdmaQueueEntry e);
    TdmaQueueEntry pop_tdma();
    bool tdma_paired() const { return tdma_data.size() == tdma_timestamps.size(); }
};

// Which queue a packet lands in, by traffic class (models classification by
// assigned port numbers).
enum class QueueName : std::uint8_t { Tdma, Ctl, Gen };
QueueName classify(TrafficClass cls);

struct ReallocationRequest {
    std::optional<int> n_tdma;
    std::optional<Duration> tau_tdma;
    // Full replacement assignment when present (slot -> owner).
    std::optional<std::map<std::uint16_t, NodeId>> assignments;
};

struct QosSubscription {
    Duration deadline{0};
    Duration period{0};
    int priority = 0;
};

struct ManagerResult {
    bool accepted = false;
    std::string reason;                 // on rejection
    std::vector<std::uint16_t> slots;   // granted slots (subscribe)
};

// Coordinator-side slot allocation: validates requests against the
// superframe arithmetic, assembles the updated table, and hands it to the
// MAC for broadcast in the next control section.
class SlotManager {
public:
    SlotManager(SuperframeConfig sf, Duration critical_airtime, Duration beacon_airtime);

    const SlotMap& current() const { return current_; }
    const SuperframeConfig& superframe() const { return sf_; }

    void set_initial(std::map<std::uint16_t, NodeId> assignments);

    // Validated reallocation; on acceptance the new map becomes pending with
    // effective_from = announce_frame + 1 and is returned for broadcast.
    ManagerResult reallocate(const ReallocationRequest& req, std::uint64_t announce_frame);

    // Grants ceil(T_f / min(deadline, period)) evenly spread free slots.
    ManagerResult subscribe(NodeId node, const QosSubscription& qos, std::uint64_t announce_frame);

    // The map that governs a given frame index.
    const SlotMap& map_for_frame(std::uint64_t frame) const;

    // Activate the pending map once its effective frame is reached.
    void roll_forward(std::uint64_t frame);

    bool has_pending() const { return pending_.has_value(); }
    const SlotMap& pending() const { return *pending_; }

private:
    ManagerResult install(SlotMap next, std::uint64_t announce_frame);

    SuperframeConfig sf_;
    Duration critical_airtime_;
    Duration beacon_airtime_;
    SlotMap current_;
    std::optional<SlotMap> pending_;
};

}  // namespace hybridmac

#endif
