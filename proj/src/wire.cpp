#include "hybridmac/wire.hpp"

namespace hybridmac {

namespace {

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
    b.push_back(v & 0xff);
    b.push_back((v >> 8) & 0xff);
}
void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void put_i64(std::vector<std::uint8_t>& b, std::int64_t v) {
    put_u64(b, static_cast<std::uint64_t>(v));
}

struct Reader {
    const std::vector<std::uint8_t>& b;
    std::size_t pos = 0;
    bool ok = true;

    std::uint16_t u16() {
        if (pos + 2 > b.size()) { ok = false; return 0; }
        std::uint16_t v = b[pos] | (b[pos + 1] << 8);
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        if (pos + 4 > b.size()) { ok = false; return 0; }
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        if (pos + 8 > b.size()) { ok = false; return 0; }
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    std::uint8_t u8() {
        if (pos + 1 > b.size()) { ok = false; return 0; }
        return b[pos++];
    }
    bool done() const { return ok && pos == b.size(); }
};

}  // namespace

std::vector<std::uint8_t> encode(const SlotMapWire& m) {
    std::vector<std::uint8_t> b;
    put_u32(b, m.version);
    put_u64(b, m.effective_from_frame);
    put_i64(b, m.slot_duration_ns);
    put_u16(b, static_cast<std::uint16_t>(m.assignments.size()));
    for (auto [slot, owner] : m.assignments) {
        put_u16(b, slot);
        put_u16(b, owner);
    }
    return b;
}

std::vector<std::uint8_t> encode(const BeaconWire& m) {
    std::vector<std::uint8_t> b;
    put_u64(b, m.frame_index);
    put_i64(b, m.tx_end_stamp_ns);
    put_i64(b, m.nav_duration_ns);
    put_u32(b, m.slotmap_version);
    put_u64(b, m.slotmap_effective_from);
    put_u16(b, static_cast<std::uint16_t>(m.response_rx_stamps.size()));
    for (auto [client, stamp] : m.response_rx_stamps) {
        put_u16(b, client);
        put_i64(b, stamp);
    }
    return b;
}

std::vector<std::uint8_t> encode(const SyncResponseWire& m) {
    std::vector<std::uint8_t> b;
    put_u16(b, m.client);
    put_i64(b, m.tx_end_stamp_ns);
    return b;
}

std::vector<std::uint8_t> encode(const AssociationWire& m) {
    std::vector<std::uint8_t> b;
    put_u16(b, m.client);
    b.push_back(m.is_response);
    return b;
}

std::optional<SlotMapWire> decode_slot_map(const std::vector<std::uint8_t>& b) {
    Reader r{b};
    SlotMapWire m;
    m.version = r.u32();
    m.effective_from_frame = r.u64();
    m.slot_duration_ns = r.i64();
    std::uint16_t n = r.u16();
    for (std::uint16_t i = 0; i < n && r.ok; ++i) {
        std::uint16_t slot = r.u16();
        std::uint16_t owner = r.u16();
        m.assignments.emplace_back(slot, owner);
    }
    if (!r.done()) return std::nullopt;
    return m;
}

std::optional<BeaconWire> decode_beacon(const std::vector<std::uint8_t>& b) {
    Reader r{b};
    BeaconWire m;
    m.frame_index = r.u64();
    m.tx_end_stamp_ns = r.i64();
    m.nav_duration_ns = r.i64();
    m.slotmap_version = r.u32();
    m.slotmap_effective_from = r.u64();
    std::uint16_t n = r.u16();
    for (std::uint16_t i = 0; i < n && r.ok; ++i) {
        std::uint16_t client = r.u16();
        std::int64_t stamp = r.i64();
        m.response_rx_stamps.emplace_back(client, stamp);
    }
    if (!r.done()) return std::nullopt;
    return m;
}

std::optional<SyncResponseWire> decode_sync_response(const std::vector<std::uint8_t>& b) {
    Reader r{b};
    SyncResponseWire m;
    m.client = r.u16();
    m.tx_end_stamp_ns = r.i64();
    if (!r.done()) return std::nullopt;
    return m;
}

std::optional<AssociationWire> decode_association(const std::vector<std::uint8_t>& b) {
    Reader r{b};
    AssociationWire m;
    m.client = r.u16();
    m.is_response = r.u8();
    if (!r.done()) return std::nullopt;
    return m;
}

const char* to_string(TrafficClass c) {
    switch (c) {
        case TrafficClass::MissionCritical: return "mission_critical";
        case TrafficClass::LargeVolume: return "large_volume";
        case TrafficClass::EventDriven: return "event_driven";
        case TrafficClass::Management: return "management";
    }
    return "?";
}

}  // namespace hybridmac
