#ifndef HYBRIDMAC_WIRE_HPP
#define HYBRIDMAC_WIRE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hybridmac/packet.hpp"
#include "hybridmac/time.hpp"

namespace hybridmac {

// Canonical byte layout for management-frame payloads: little-endian,
// 64-bit nanosecond timestamps, 16-bit slot counts and node ids. Fixed so
// recorded traces are byte-stable across builds.

struct SlotMapWire {
    std::uint32_t version = 0;
    std::uint64_t effective_from_frame = 0;
    std::int64_t slot_duration_ns = 0;
    // slot index (1-based) -> owning node; unassigned slots are absent.
    std::vector<std::pair<std::uint16_t, std::uint16_t>> assignments;

    bool operator==(const SlotMapWire&) const = default;
};

struct BeaconWire {
    std::uint64_t frame_index = 0;
    std::int64_t tx_end_stamp_ns = 0;  // coordinator clock, end of beacon
    std::int64_t nav_duration_ns = 0;  // TDMA section + control section
    std::uint32_t slotmap_version = 0;
    std::uint64_t slotmap_effective_from = 0;
    // Per-client arrival stamps of the last sync response (coordinator clock).
    std::vector<std::pair<std::uint16_t, std::int64_t>> response_rx_stamps;

    bool operator==(const BeaconWire&) const = default;
};

struct SyncResponseWire {
    std::uint16_t client = 0;
    std::int64_t tx_end_stamp_ns = 0;  // client clock, end of response

    bool operator==(const SyncResponseWire&) const = default;
};

struct AssociationWire {
    std::uint16_t client = 0;
    std::uint8_t is_response = 0;

    bool operator==(const AssociationWire&) const = default;
};

std::vector<std::uint8_t> encode(const SlotMapWire&);
std::vector<std::uint8_t> encode(const BeaconWire&);
std::vector<std::uint8_t> encode(const SyncResponseWire&);
std::vector<std::uint8_t> encode(const AssociationWire&);

std::optional<SlotMapWire> decode_slot_map(const std::vector<std::uint8_t>&);
std::optional<BeaconWire> decode_beacon(const std::vector<std::uint8_t>&);
std::optional<SyncResponseWire> decode_sync_response(const std::vector<std::uint8_t>&);
std::optional<AssociationWire> decode_association(const std::vector<std::uint8_t>&);

}  // namespace hybridmac

#endif
