#ifndef HYBRIDMAC_MAC_CSMA_HPP
#define HYBRIDMAC_MAC_CSMA_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "hybridmac/engine.hpp"
#include "hybridmac/medium.hpp"
#include "hybridmac/rng.hpp"

namespace hybridmac {

struct DcfParams {
    Duration slot_time = microseconds(9);
    Duration sifs = microseconds(10);
    Duration difs = microseconds(28);
    int cw_min = 15;
    int cw_max = 1023;
    int retry_limit = 7;  // retransmissions after the first attempt
    Duration ack_timeout_margin = microseconds(1);

    // cw_min <= cw_max, both of the form 2^k - 1.
    bool validate(std::string* why = nullptr) const;

    int cw_for_attempt(int attempt) const;
};

// Gate decision for a contention job at a given instant: whether the full
// exchange may start now, and if not, when to ask again (nullopt = wait for
// a carrier change).
struct GateDecision {
    bool ok = true;
    std::optional<SimTime> retry_at;
};

// One frame's contention job. The host owns queueing and eligibility; the
// engine owns DIFS waits, backoff countdown with freezing, the transmit,
// and the ACK/retry loop.
struct DcfJob {
    Frame frame;           // attempt field updated per try
    bool needs_ack = true; // broadcast frames complete at tx end
    bool respect_nav = false;
    // Section / boundary gate. exchange_air covers data + SIFS + ACK.
    std::function<GateDecision(SimTime now, Duration exchange_air)> gate;
    // Called just before each attempt leaves the antenna; may rewrite the
    // frame payload (transmit-time timestamping).
    std::function<void(Frame&, SimTime tx_start, Duration air)> on_attempt;
    // success=false means the retry limit was exhausted.
    std::function<void(bool success, int attempts, SimTime at)> on_done;
};

// Residual contention state when a job is preempted between sections.
struct DcfResidual {
    int attempt = 0;
    int backoff_remaining = 0;
};

// IEEE 802.11-style DCF state machine for one node: carrier sense with
// ideal sensing, DIFS deferral, binary exponential backoff frozen while the
// medium is busy, ACK timeout and retransmission up to the retry limit.
class DcfEngine {
public:
    DcfEngine(Simulator& sim, Medium& medium, NodeId self, DcfParams params,
              std::uint64_t master_seed);

    bool idle() const { return phase_ == Phase::Idle; }

    // Engine must be idle. resume restores a preempted job's backoff.
    void submit(DcfJob job, std::optional<DcfResidual> resume = {});

    // Cancel the current job if it is not mid-exchange; returns its residual
    // state, or nullopt if the engine was idle. Must not be called while a
    // transmission or ACK wait is in progress (sections are sized so
    // exchanges never straddle a preemption point).
    std::optional<DcfResidual> preempt();

    // Re-evaluate the countdown against carrier/NAV/gate state. Call when
    // energy arrives, when NAV is set, or after this node transmits outside
    // the engine (beacon, TDMA slot, ACK reply).
    void reevaluate();

    // ACK addressed to this node arrived.
    void on_ack(std::uint64_t acked_frame_seq);

    // Test hook: override the backoff draw (default: uniform over [0, cw]).
    std::function<int(int cw)> draw_backoff;

    const DcfParams& params() const { return params_; }

private:
    enum class Phase { Idle, Contend, Tx, AwaitAck };

    Duration data_air() const;
    Duration exchange_air() const;
    void try_arm();
    void on_expiry();
    void transmit();
    void on_tx_done();
    void on_ack_timeout();
    void finish(bool success);
    void clear_pending();

    Simulator& sim_;
    Medium& medium_;
    NodeId self_;
    DcfParams params_;
    RngStream rng_;

    Phase phase_ = Phase::Idle;
    std::optional<DcfJob> job_;
    int attempt_ = 0;
    int backoff_remaining_ = 0;
    bool counting_ = false;      // an expiry event is armed
    SimTime anchor_{0};          // when the DIFS+countdown started
    std::optional<EventId> pending_;  // expiry / re-arm / poll event
    std::optional<EventId> ack_timer_;
    std::uint64_t awaiting_seq_ = 0;
};

}  // namespace hybridmac

#endif
