#include "hybridmac/mac_csma.hpp"

#include <algorithm>
#include <stdexcept>

namespace hybridmac {

namespace {
bool is_pow2_minus_1(int v) { return v > 0 && ((v + 1) & v) == 0; }
}

bool DcfParams::validate(std::string* why) const {
    auto fail = [&](const char* m) {
        if (why) *why = m;
        return false;
    };
    if (slot_time.ns <= 0 || sifs.ns <= 0 || difs.ns <= 0) return fail("inter-frame spacings must be positive");
    if (!is_pow2_minus_1(cw_min) || !is_pow2_minus_1(cw_max)) return fail("cw bounds must be of the form 2^k - 1");
    if (cw_min > cw_max) return fail("cw_min must not exceed cw_max");
    if (retry_limit < 0) return fail("retry_limit must be >= 0");
    return true;
}

int DcfParams::cw_for_attempt(int attempt) const {
    long long cw = static_cast<long long>(cw_min + 1);
    for (int i = 0; i < attempt && cw <= cw_max; ++i) cw <<= 1;
    return static_cast<int>(std::min<long long>(cw - 1, cw_max));
}

DcfEngine::DcfEngine(Simulator& sim, Medium& medium, NodeId self, DcfParams params,
                     std::uint64_t master_seed)
    : sim_(sim),
      medium_(medium),
      self_(self),
      params_(params),
      rng_(master_seed, "dcf.backoff.node" + std::to_string(self)) {
    draw_backoff = [this](int cw) {
        return static_cast<int>(rng_.uniform_inclusive(static_cast<std::uint64_t>(cw)));
    };
}

Duration DcfEngine::data_air() const { return medium_.airtime(job_->frame.air_bytes); }

Duration DcfEngine::exchange_air() const {
    Duration total = data_air();
    if (job_->needs_ack) {
        total = total + params_.sifs + medium_.airtime(medium_.phy().ack_bytes) +
                2 * medium_.phy().default_link_delay + params_.ack_timeout_margin;
    }
    return total;
}

void DcfEngine::submit(DcfJob job, std::optional<DcfResidual> resume) {
    if (phase_ != Phase::Idle) throw std::logic_error("DcfEngine::submit while busy");
    job_ = std::move(job);
    if (resume) {
        attempt_ = resume->attempt;
        backoff_remaining_ = resume->backoff_remaining;
    } else {
        attempt_ = 0;
        backoff_remaining_ = draw_backoff(params_.cw_for_attempt(0));
    }
    phase_ = Phase::Contend;
    counting_ = false;
    try_arm();
}

std::optional<DcfResidual> DcfEngine::preempt() {
    if (phase_ == Phase::Idle) return std::nullopt;
    if (phase_ != Phase::Contend)
        throw std::logic_error("DcfEngine::preempt during an active exchange");
    if (counting_ && pending_) {
        // Bank whole slots consumed so far.
        SimTime now = sim_.now();
        if (now > anchor_ + params_.difs) {
            auto consumed = static_cast<int>((now - (anchor_ + params_.difs)).ns / params_.slot_time.ns);
            backoff_remaining_ -= std::min(consumed, backoff_remaining_);
        }
    }
    clear_pending();
    DcfResidual r{attempt_, backoff_remaining_};
    job_.reset();
    phase_ = Phase::Idle;
    counting_ = false;
    return r;
}

void DcfEngine::clear_pending() {
    if (pending_) {
        sim_.cancel(*pending_);
        pending_.reset();
    }
}

void DcfEngine::try_arm() {
    clear_pending();
    counting_ = false;
    SimTime now = sim_.now();

    GateDecision gate{true, std::nullopt};
    if (job_->gate) gate = job_->gate(now, exchange_air());
    bool nav_blocked = job_->respect_nav && now < medium_.nav_until(self_);
    if (!gate.ok || nav_blocked) {
        SimTime retry = gate.retry_at.value_or(SimTime{0});
        if (nav_blocked) retry = std::max(retry, medium_.nav_until(self_));
        if (retry > now) {
            pending_ = sim_.schedule(retry, "dcf_gate_reopen", [this] {
                pending_.reset();
                if (phase_ == Phase::Contend) try_arm();
            });
        }
        // No known reopen time: stay frozen until reevaluate() is called.
        return;
    }

    if (medium_.carrier_busy(self_, now, /*include_nav=*/false)) {
        SimTime cand = medium_.physical_idle_candidate(self_, now);
        if (cand > now) {
            pending_ = sim_.schedule(cand, "dcf_idle_poll", [this] {
                pending_.reset();
                if (phase_ == Phase::Contend) try_arm();
            });
        }
        return;
    }

    anchor_ = now;
    counting_ = true;
    SimTime expiry = now + params_.difs + backoff_remaining_ * params_.slot_time;
    pending_ = sim_.schedule(expiry, "dcf_backoff_expiry", [this] {
        pending_.reset();
        on_expiry();
    });
}

void DcfEngine::reevaluate() {
    if (phase_ != Phase::Contend) return;
    SimTime now = sim_.now();
    if (counting_) {
        if (now > anchor_ + params_.difs) {
            auto consumed = static_cast<int>((now - (anchor_ + params_.difs)).ns / params_.slot_time.ns);
            backoff_remaining_ -= std::min(consumed, backoff_remaining_);
        }
        counting_ = false;
    }
    try_arm();
}

void DcfEngine::on_expiry() {
    counting_ = false;
    SimTime now = sim_.now();
    // The countdown ran to zero with the medium idle the whole way; a frame
    // arriving in the final propagation window is exactly a collision.
    GateDecision gate{true, std::nullopt};
    if (job_->gate) gate = job_->gate(now, exchange_air());
    bool nav_blocked = job_->respect_nav && now < medium_.nav_until(self_);
    if (!gate.ok || nav_blocked || medium_.carrier_busy(self_, now, false)) {
        backoff_remaining_ = 0;
        try_arm();
        return;
    }
    backoff_remaining_ = 0;
    transmit();
}

void DcfEngine::transmit() {
    SimTime now = sim_.now();
    Frame f = job_->frame;
    f.attempt = attempt_;
    if (f.packet) f.packet->attempt_count = attempt_ + 1;
    Duration air = medium_.airtime(f.air_bytes);
    if (job_->on_attempt) job_->on_attempt(f, now, air);
    phase_ = Phase::Tx;
    awaiting_seq_ = medium_.begin_tx(self_, std::move(f));
    SimTime tx_end = now + air;
    pending_ = sim_.schedule(tx_end, "dcf_tx_end", [this] {
        pending_.reset();
        on_tx_done();
    });
}

void DcfEngine::on_tx_done() {
    if (!job_->needs_ack) {
        finish(true);
        return;
    }
    phase_ = Phase::AwaitAck;
    Duration timeout = params_.sifs + medium_.airtime(medium_.phy().ack_bytes) +
                       2 * medium_.phy().default_link_delay + params_.ack_timeout_margin;
    ack_timer_ = sim_.schedule_in(timeout, "dcf_ack_timeout", [this] {
        ack_timer_.reset();
        on_ack_timeout();
    });
}

void DcfEngine::on_ack(std::uint64_t acked_frame_seq) {
    if (phase_ != Phase::AwaitAck || acked_frame_seq != awaiting_seq_) return;
    if (ack_timer_) {
        sim_.cancel(*ack_timer_);
        ack_timer_.reset();
    }
    finish(true);
}

void DcfEngine::on_ack_timeout() {
    ++attempt_;
    if (attempt_ > params_.retry_limit) {
        finish(false);
        return;
    }
    backoff_remaining_ = draw_backoff(params_.cw_for_attempt(attempt_));
    phase_ = Phase::Contend;
    try_arm();
}

void DcfEngine::finish(bool success) {
    auto done = std::move(job_->on_done);
    int attempts = attempt_ + 1;
    job_.reset();
    phase_ = Phase::Idle;
    counting_ = false;
    clear_pending();
    if (done) done(success, attempts, sim_.now());
}

}  // namespace hybridmac
