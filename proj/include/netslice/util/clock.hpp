#pragma once

#include <atomic>
#include <cstdint>

namespace netslice::util {

// Monotonic logical clock. Wall-clock time never enters the system, so two
// runs with the same seed produce identical timestamps.
class LogicalClock {
public:
    explicit LogicalClock(std::uint64_t start = 0) : now_(start) {}

    std::uint64_t tick() { return ++now_; }
    std::uint64_t now() const { return now_.load(); }
    void advance_to(std::uint64_t t) {
        std::uint64_t cur = now_.load();
        while (cur < t && !now_.compare_exchange_weak(cur, t)) {
        }
    }

private:
    std::atomic<std::uint64_t> now_;
};

} // namespace netslice::util
