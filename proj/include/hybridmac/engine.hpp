#ifndef HYBRIDMAC_ENGINE_HPP
#define HYBRIDMAC_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "hybridmac/time.hpp"

namespace hybridmac {

using EventId = std::uint64_t;

// Single-threaded discrete event core. Events fire in (fire_at, seq) order,
// seq being assignment order, so equal-time events run FIFO. A run is
// self-contained; parallelism only across independent Simulator instances.
class Simulator {
public:
    using Callback = std::function<void()>;

    SimTime now() const { return now_; }

    // Throws std::logic_error if fire_at < now() (scheduling in the past is
    // a programming error, never a legal protocol state).
    EventId schedule(SimTime fire_at, const char* kind, Callback cb);
    EventId schedule_in(Duration delay, const char* kind, Callback cb) {
        return schedule(now_ + delay, kind, std::move(cb));
    }

    // true if the event was pending and is now removed; false if it already
    // fired or was already cancelled.
    bool cancel(EventId id);

    // Processes every event with fire_at <= end, then sets the clock to end.
    // Returns the number of events processed by this call.
    std::uint64_t run_until(SimTime end);

    bool has_pending() const { return !pending_.empty(); }

    // Test hook: when set, receives (fire_at, seq, kind) for every processed
    // event, in processing order.
    struct TraceEntry {
        SimTime at;
        EventId seq;
        const char* kind;
        bool operator==(const TraceEntry&) const = default;
    };
    void set_trace(std::vector<TraceEntry>* sink) { trace_ = sink; }

private:
    struct HeapEntry {
        SimTime at;
        EventId seq;
        bool operator>(const HeapEntry& o) const {
            return at != o.at ? at > o.at : seq > o.seq;
        }
    };
    struct Pending {
        const char* kind;
        Callback cb;
    };

    SimTime now_{0};
    EventId next_seq_ = 0;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;
    std::unordered_map<EventId, Pending> pending_;
    std::vector<TraceEntry>* trace_ = nullptr;
};

}  // namespace hybridmac

#endif
