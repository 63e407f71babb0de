#include "hybridmac/mac_hybrid.hpp"

#include <algorithm>
#include <cassert>

namespace hybridmac {

const char* to_string(Section s) {
    switch (s) {
        case Section::Tdma: return "tdma";
        case Section::Ctl: return "ctl";
        case Section::Gen: return "gen";
    }
    return "?";
}

std::vector<std::string> SuperframeConfig::validate(Duration critical_airtime) const {
    std::vector<std::string> errs;
    if (t_tdma.ns < 0 || t_ctl.ns <= 0 || t_gen.ns <= 0)
        errs.push_back("superframe sections must be positive (t_tdma may be zero)");
    if (n_tdma < 0) errs.push_back("n_tdma must be >= 0");
    if (n_tdma > 0 && tau_tdma.ns <= 0) errs.push_back("tau_tdma must be positive");
    if (t_tdma.ns != static_cast<TimeNs>(n_tdma) * tau_tdma.ns)
        errs.push_back("t_tdma must equal n_tdma * tau_tdma");
    if (n_tdma > 0 && critical_airtime.ns > 0 && tau_tdma < critical_airtime + guard)
        errs.push_back("tau_tdma below critical-packet airtime plus guard");
    if (guard.ns < 0) errs.push_back("guard must be >= 0");
    if (sync_period_frames < 1) errs.push_back("sync_period_frames must be >= 1");
    return errs;
}

std::optional<NodeId> SlotMap::owner(int slot) const {
    auto it = owner_by_slot.find(static_cast<std::uint16_t>(slot));
    if (it == owner_by_slot.end()) return std::nullopt;
    return it->second;
}

std::vector<std::uint16_t> SlotMap::slots_of(NodeId node) const {
    std::vector<std::uint16_t> out;
    for (auto [slot, owner] : owner_by_slot)
        if (owner == node) out.push_back(slot);
    return out;
}

SlotMapWire SlotMap::to_wire(Duration tau) const {
    SlotMapWire w;
    w.version = version;
    w.effective_from_frame = effective_from_frame;
    w.slot_duration_ns = tau.ns;
    for (auto [slot, owner] : owner_by_slot) w.assignments.emplace_back(slot, owner);
    return w;
}

SlotMap SlotMap::from_wire(const SlotMapWire& w) {
    SlotMap m;
    m.version = w.version;
    m.effective_from_frame = w.effective_from_frame;
    for (auto [slot, owner] : w.assignments) m.owner_by_slot[slot] = owner;
    return m;
}

void QueueSet::push_tdma(TdmaQueueEntry e) {
    tdma_data.push_back(e.packet);
    tdma_timestamps.push_back(e.fire_at_local);
    tdma_meta.push_back(std::move(e));
}

TdmaQueueEntry QueueSet::pop_tdma() {
    assert(tdma_paired() && !tdma_data.empty());
    TdmaQueueEntry e = tdma_meta.front();
    tdma_data.pop_front();
    tdma_timestamps.pop_front();
    tdma_meta.pop_front();
    return e;
}

QueueName classify(TrafficClass cls) {
    switch (cls) {
        case TrafficClass::MissionCritical: return QueueName::Tdma;
        case TrafficClass::Management: return QueueName::Ctl;
        case TrafficClass::LargeVolume:
        case TrafficClass::EventDriven: return QueueName::Gen;
    }
    return QueueName::Gen;
}

SlotManager::SlotManager(SuperframeConfig sf, Duration critical_airtime, Duration beacon_airtime)
    : sf_(sf), critical_airtime_(critical_airtime), beacon_airtime_(beacon_airtime) {}

void SlotManager::set_initial(std::map<std::uint16_t, NodeId> assignments) {
    current_.version = 1;
    current_.effective_from_frame = 0;
    current_.owner_by_slot = std::move(assignments);
}

ManagerResult SlotManager::install(SlotMap next, std::uint64_t announce_frame) {
    next.version = (pending_ ? pending_->version : current_.version) + 1;
    next.effective_from_frame = announce_frame + 1;
    if (pending_ && pending_->effective_from_frame <= announce_frame) {
        current_ = *pending_;
        pending_.reset();
    }
    pending_ = std::move(next);
    return {true, "", {}};
}

ManagerResult SlotManager::reallocate(const ReallocationRequest& req, std::uint64_t announce_frame) {
    SuperframeConfig sf = sf_;
    if (req.n_tdma) sf.n_tdma = *req.n_tdma;
    if (req.tau_tdma) sf.tau_tdma = *req.tau_tdma;
    sf.t_tdma = Duration{static_cast<TimeNs>(sf.n_tdma) * sf.tau_tdma.ns};
    // T_f is held fixed; the general section absorbs TDMA resizing.
    sf.t_gen = sf_.t_frame() - sf.t_tdma - sf.t_ctl;

    if (sf.n_tdma < 0) return {false, "negative slot count", {}};
    if (sf.n_tdma > 0 && sf.tau_tdma < critical_airtime_ + sf.guard)
        return {false, "tau_tdma below critical-packet airtime plus guard", {}};
    if (sf.t_gen < beacon_airtime_)
        return {false, "TDMA section leaves no room for the general section", {}};

    SlotMap next = pending_ ? *pending_ : current_;
    if (req.assignments) {
        next.owner_by_slot.clear();
        for (auto [slot, owner] : *req.assignments) {
            if (slot < 1 || slot > sf.n_tdma) return {false, "slot index out of range", {}};
            if (next.owner_by_slot.count(slot)) return {false, "slot assigned twice", {}};
            next.owner_by_slot[slot] = owner;
        }
    } else {
        // Keep assignments that still fit the new slot count.
        std::erase_if(next.owner_by_slot,
                      [&](const auto& kv) { return kv.first > sf.n_tdma; });
    }

    sf_ = sf;
    return install(std::move(next), announce_frame);
}

ManagerResult SlotManager::subscribe(NodeId node, const QosSubscription& qos, std::uint64_t announce_frame) {
    if (qos.deadline.ns <= 0 && qos.period.ns <= 0) return {false, "subscription without deadline or period", {}};
    Duration spacing = qos.deadline.ns > 0 && qos.period.ns > 0
                           ? std::min(qos.deadline, qos.period)
                           : (qos.deadline.ns > 0 ? qos.deadline : qos.period);
    TimeNs t_f = sf_.t_frame().ns;
    int needed = static_cast<int>((t_f + spacing.ns - 1) / spacing.ns);
    needed = std::max(needed, 1);

    SlotMap base = pending_ ? *pending_ : current_;
    std::vector<std::uint16_t> free;
    for (int s = 1; s <= sf_.n_tdma; ++s)
        if (!base.owner_by_slot.count(static_cast<std::uint16_t>(s)))
            free.push_back(static_cast<std::uint16_t>(s));
    if (static_cast<int>(free.size()) < needed)
        return {false, "insufficient TDMA capacity for requested QoS", {}};

    // Spread the grant across the free slots.
    std::vector<std::uint16_t> granted;
    for (int k = 0; k < needed; ++k) {
        std::size_t idx = (static_cast<std::size_t>(k) * free.size()) / needed;
        granted.push_back(free[idx]);
    }
    std::sort(granted.begin(), granted.end());
    granted.erase(std::unique(granted.begin(), granted.end()), granted.end());
    // Collisions from rounding: fill from remaining free slots.
    for (std::size_t i = 0; granted.size() < static_cast<std::size_t>(needed) && i < free.size(); ++i)
        if (!std::count(granted.begin(), granted.end(), free[i])) granted.push_back(free[i]);
    std::sort(granted.begin(), granted.end());

    SlotMap next = base;
    for (auto s : granted) next.owner_by_slot[s] = node;
    ManagerResult r = install(std::move(next), announce_frame);
    r.slots = granted;
    return r;
}

const SlotMap& SlotManager::map_for_frame(std::uint64_t frame) const {
    if (pending_ && frame >= pending_->effective_from_frame) return *pending_;
    return current_;
}

void SlotManager::roll_forward(std::uint64_t frame) {
    if (pending_ && frame >= pending_->effective_from_frame) {
        current_ = *pending_;
        pending_.reset();
    }
}

}  // namespace hybridmac
