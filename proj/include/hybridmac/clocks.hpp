#ifndef HYBRIDMAC_CLOCKS_HPP
#define HYBRIDMAC_CLOCKS_HPP

#include <cstdint>
#include <optional>

#include "hybridmac/time.hpp"

namespace hybridmac {

// Free-running node oscillator with constant frequency error and a fixed
// initial offset: reading(t) = t + initial_offset + drift_ppb * t / 1e9.
// Integer arithmetic throughout (drift in parts-per-billion) so readings are
// exactly reproducible.
struct OscillatorModel {
    Duration initial_offset{0};
    std::int64_t drift_ppb = 0;  // |drift| <= 100 ppm = 100000 ppb

    SimTime read(SimTime true_time) const;

    // Ground-truth clock offset at a true time (reading - true time).
    Duration true_offset(SimTime true_time) const;

    // Earliest true time whose reading is >= target. Inverse of read() up to
    // tick granularity; requires drift > -1e9 ppb (always, given the bound).
    SimTime when_reads(SimTime target) const;
};

// One completed three-way timestamp exchange: the coordinator's beacon
// transmit stamp, the client's beacon arrival stamp, the client's response
// transmit stamp and the coordinator's response arrival stamp. All stamps
// reference the end of the frame on air.
struct SyncRecord {
    SimTime beacon_tx_server;    // coordinator clock
    SimTime beacon_rx_client;    // client clock
    SimTime response_tx_client;  // client clock
    SimTime response_rx_server;  // coordinator clock
};

// Client-held synchronization state: estimated clock offset and propagation
// delay, plus the client-clock reference for the start of the current
// superframe (anchored to the beacon arrival stamp, see frame_ref handling
// in the hybrid MAC).
struct PtpEstimate {
    Duration offset{0};           // o_hat; 0 before the first completed round
    Duration path_delay{0};       // d_hat; 0 before the first completed round
    std::optional<SimTime> last_sync_at;  // client clock, unset before first round
    SimTime frame_ref{0};         // client-clock start-of-frame reference
};

// Half of (a+b-c-d) and half of (a-b-c+d), rounded half-up to integer ns. A
// negative delay estimate is numerically possible (asymmetric path or a
// corrupted record) and is left to the caller's diagnostics.
PtpEstimate ptp_update(const SyncRecord& rec);

// Client-clock transmit time for slot j (1-based) of the current frame:
// frame_ref + offset + (j-1)*slot_duration - 2*path_delay.
SimTime schedule_slot_tx(const PtpEstimate& est, int slot_index, Duration slot_duration);

// true iff the client has never synchronized or at least sync_period has
// elapsed on its own clock since the last round.
bool periodic_sync_due(const PtpEstimate& est, SimTime now_client, Duration sync_period);

}  // namespace hybridmac

#endif
