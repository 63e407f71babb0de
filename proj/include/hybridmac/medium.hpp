#ifndef HYBRIDMAC_MEDIUM_HPP
#define HYBRIDMAC_MEDIUM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hybridmac/engine.hpp"
#include "hybridmac/packet.hpp"
#include "hybridmac/rng.hpp"
#include "hybridmac/time.hpp"

namespace hybridmac {

struct PhyConfig {
    std::int64_t data_rate_bps = 18'274'066;  // effective payload rate
    Duration per_frame_overhead = microseconds(6);  // preamble + PHY header
    Duration default_link_delay = nanoseconds(100);
    // Optional asymmetric overrides, keyed by (src, dst).
    std::map<std::pair<NodeId, NodeId>, Duration> link_delay_override;
    double frame_error_prob = 1e-3;
    bool acks_subject_to_channel_error = false;
    std::uint32_t data_header_bytes = 66;  // TCP/IP + MAC model for data frames
    std::uint32_t mgmt_header_bytes = 34;  // MAC-only model for management
    std::uint32_t ack_bytes = 14;

    Duration link_delay(NodeId src, NodeId dst) const;
};

enum class FrameKind : std::uint8_t { Data, Ack, Beacon, Management };

// Which logical queue a transmission came from; used for the NAV-shield
// accounting and diagnostics.
enum class TxOrigin : std::uint8_t { TdmaSlot, CsmaCtl, CsmaGen, CsmaFifo, Beacon, AckReply };

enum class MgmtType : std::uint8_t { None, Beacon, SyncResponse, SlotMap, Association };

struct Frame {
    std::uint64_t frame_seq = 0;  // assigned by the medium at begin_tx
    FrameKind kind = FrameKind::Data;
    TxOrigin origin = TxOrigin::CsmaFifo;
    NodeId src = 0;
    std::optional<NodeId> dst;  // nullopt = broadcast
    std::uint32_t air_bytes = 0;
    std::shared_ptr<Packet> packet;  // Data frames only
    MgmtType mgmt_type = MgmtType::None;
    std::vector<std::uint8_t> mgmt_payload;
    std::uint64_t ack_for = 0;  // Ack frames: frame_seq being acknowledged
    int attempt = 0;
};

enum class RxVerdict : std::uint8_t { Delivered, Collided, ChannelError };

const char* to_string(RxVerdict v);

// Callbacks a node registers with the medium.
class MediumClient {
public:
    virtual ~MediumClient() = default;
    // Energy from another transmission first reaches this node.
    virtual void on_carrier_busy(SimTime now) = 0;
    // A frame addressed to this node (or broadcast) finished arriving.
    virtual void on_rx(const std::shared_ptr<const Frame>& f, RxVerdict v, SimTime rx_end) = 0;
    // This node's own transmission left the air.
    virtual void on_own_tx_end(const std::shared_ptr<const Frame>& f, SimTime now) = 0;
};

struct TxLogEntry {
    std::uint64_t frame_seq;
    NodeId src;
    TxOrigin origin;
    FrameKind kind;
    SimTime air_start;
    SimTime air_end;
};

// Single collision domain, no capture: any overlap at a receiver destroys
// both frames there. Sensing is ideal (a node sees energy exactly when it
// arrives). NAV timers live here so carrier_busy can fold them in.
class Medium {
public:
    Medium(Simulator& sim, PhyConfig phy, std::uint64_t master_seed);

    const PhyConfig& phy() const { return phy_; }

    Duration airtime(std::uint32_t size_bytes) const;

    void attach(NodeId id, MediumClient* client);

    // Returns the frame_seq assigned to the transmission. Throws
    // std::logic_error if the sender is already mid-transmission.
    std::uint64_t begin_tx(NodeId sender, Frame frame);

    bool transmitting(NodeId node) const;

    // Physical carrier state at `now`, plus NAV when include_nav.
    bool carrier_busy(NodeId node, SimTime now, bool include_nav = true) const;

    // Earliest time the physical carrier could go idle at this node given
    // current in-flight transmissions (a poll target; re-check on arrival).
    SimTime physical_idle_candidate(NodeId node, SimTime now) const;

    void set_nav(NodeId node, SimTime until);
    SimTime nav_until(NodeId node) const;

    // Observer invoked at every air-start (tests / NAV accounting).
    std::function<void(const TxLogEntry&)> on_tx_start;
    // Observer invoked per (frame, receiver) resolution.
    std::function<void(const Frame&, NodeId receiver, RxVerdict)> on_rx_resolved;

private:
    struct InFlight {
        std::shared_ptr<const Frame> frame;
        SimTime start;
        SimTime end;  // air end at the sender
    };

    void resolve_rx(std::size_t record_idx, NodeId receiver);
    bool overlaps_at(const InFlight& r, NodeId receiver, SimTime lo, SimTime hi) const;
    void prune(SimTime now);

    Simulator& sim_;
    PhyConfig phy_;
    RngStream error_rng_;
    std::uint64_t next_frame_seq_ = 1;
    std::vector<InFlight> flights_;  // active + recently ended
    Duration max_airtime_seen_{0};
    Duration max_link_delay_{0};
    std::map<NodeId, MediumClient*> clients_;
    std::map<NodeId, SimTime> nav_until_;
};

}  // namespace hybridmac

#endif
