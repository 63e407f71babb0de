#ifndef HYBRIDMAC_PACKET_HPP
#define HYBRIDMAC_PACKET_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "hybridmac/time.hpp"

namespace hybridmac {

using NodeId = std::uint16_t;
using PacketId = std::uint64_t;

enum class TrafficClass : std::uint8_t {
    MissionCritical,
    LargeVolume,
    EventDriven,
    Management,
};

const char* to_string(TrafficClass c);

// A unit of traffic as seen by the MAC: one frame's payload. Bulk transfers
// are fragmented into these before enqueueing.
struct Packet {
    PacketId id = 0;
    TrafficClass cls = TrafficClass::Management;
    std::uint32_t size_bytes = 0;
    SimTime created_at{0};
    std::optional<Duration> deadline;  // relative to created_at
    NodeId src = 0;
    NodeId dst = 0;
    int attempt_count = 0;
    std::optional<SimTime> delivered_at;
};

}  // namespace hybridmac

#endif
