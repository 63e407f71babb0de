#include "hybridmac/clocks.hpp"

#include <cassert>

namespace hybridmac {

namespace {

constexpr std::int64_t kPpbScale = 1'000'000'000;

// floor(a * b / c) for 64-bit values via 128-bit intermediates.
std::int64_t mul_div_floor(std::int64_t a, std::int64_t b, std::int64_t c) {
    __int128 p = static_cast<__int128>(a) * b;
    __int128 q = p / c;
    if (p % c != 0 && ((p < 0) != (c < 0))) --q;
    return static_cast<std::int64_t>(q);
}

// round-half-up of s/2, i.e. floor((s+1)/2), valid for negative s.
std::int64_t half_round_up(std::int64_t s) {
    return (s + 1) >= 0 ? (s + 1) / 2 : -(( -(s + 1) + 1) / 2);
}

}  // namespace

SimTime OscillatorModel::read(SimTime true_time) const {
    return {true_time.ns + initial_offset.ns +
            mul_div_floor(true_time.ns, drift_ppb, kPpbScale)};
}

Duration OscillatorModel::true_offset(SimTime true_time) const {
    return read(true_time) - true_time;
}

SimTime OscillatorModel::when_reads(SimTime target) const {
    // Initial guess by inverting the affine map, then fix up by +-1 ns.
    std::int64_t t = mul_div_floor(target.ns - initial_offset.ns, kPpbScale,
                                   kPpbScale + drift_ppb);
    while (read({t}) < target) ++t;
    while (t > 0 && read({t - 1}) >= target) --t;
    return {t};
}

PtpEstimate ptp_update(const SyncRecord& rec) {
    const std::int64_t a = rec.beacon_rx_client.ns;
    const std::int64_t b = rec.response_rx_server.ns;
    const std::int64_t c = rec.beacon_tx_server.ns;
    const std::int64_t d = rec.response_tx_client.ns;
    PtpEstimate est;
    est.path_delay = {half_round_up(a + b - c - d)};
    est.offset = {half_round_up(a - b - c + d)};
    est.last_sync_at = rec.response_tx_client;
    return est;
}

SimTime schedule_slot_tx(const PtpEstimate& est, int slot_index, Duration slot_duration) {
    assert(slot_index >= 1);
    assert(slot_duration.ns > 0);
    return est.frame_ref + est.offset +
           (static_cast<TimeNs>(slot_index - 1)) * slot_duration -
           2 * est.path_delay;
}

bool periodic_sync_due(const PtpEstimate& est, SimTime now_client, Duration sync_period) {
    if (!est.last_sync_at) return true;
    return now_client - *est.last_sync_at >= sync_period;
}

}  // namespace hybridmac
