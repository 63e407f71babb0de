#include "hybridmac/engine.hpp"

#include <stdexcept>
#include <string>

namespace hybridmac {

EventId Simulator::schedule(SimTime fire_at, const char* kind, Callback cb) {
    if (fire_at < now_) {
        throw std::logic_error("schedule in the past: fire_at=" +
                               std::to_string(fire_at.ns) + " now=" +
                               std::to_string(now_.ns) + " kind=" + kind);
    }
    EventId id = next_seq_++;
    heap_.push({fire_at, id});
    pending_.emplace(id, Pending{kind, std::move(cb)});
    return id;
}

bool Simulator::cancel(EventId id) {
    return pending_.erase(id) > 0;  // heap entry becomes a tombstone
}

std::uint64_t Simulator::run_until(SimTime end) {
    if (end < now_) throw std::logic_error("run_until into the past");
    std::uint64_t processed = 0;
    while (!heap_.empty() && heap_.top().at <= end) {
        HeapEntry top = heap_.top();
        heap_.pop();
        auto it = pending_.find(top.seq);
        if (it == pending_.end()) continue;  // cancelled
        Callback cb = std::move(it->second.cb);
        const char* kind = it->second.kind;
        pending_.erase(it);
        now_ = top.at;
        if (trace_) trace_->push_back({top.at, top.seq, kind});
        ++processed;
        cb();
    }
    now_ = end;
    return processed;
}

std::string format_ns(TimeNs ns) {
    // 1_234_567 -> "1.234567ms" style, for diagnostics only.
    if (ns % 1'000'000'000 == 0) return std::to_string(ns / 1'000'000'000) + "s";
    if (ns % 1'000'000 == 0) return std::to_string(ns / 1'000'000) + "ms";
    if (ns % 1'000 == 0) return std::to_string(ns / 1'000) + "us";
    return std::to_string(ns) + "ns";
}

}  // namespace hybridmac
