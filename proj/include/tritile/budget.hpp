#pragma once

#include <chrono>
#include <cstdlib>
#include <string>

namespace tritile {

/// Wall-clock budget. A default-constructed budget never expires.
class Budget {
public:
    using clock = std::chrono::steady_clock;

    Budget() = default;
    static Budget unlimited() { return Budget(); }
    static Budget millis(long ms) {
        Budget b;
        b.limited_ = true;
        b.ms_ = ms;
        b.deadline_ = clock::now() + std::chrono::milliseconds(ms);
        return b;
    }
    /// Budget from TRITILE_BUDGET_MS if set, else fallback_ms (<= 0 means unlimited).
    static Budget from_env(long fallback_ms) {
        long ms = fallback_ms;
        if (const char* s = std::getenv("TRITILE_BUDGET_MS")) ms = std::strtol(s, nullptr, 10);
        return ms > 0 ? millis(ms) : unlimited();
    }

    bool limited() const { return limited_; }
    long millis_total() const { return ms_; }
    bool expired() const { return limited_ && clock::now() >= deadline_; }

private:
    bool limited_ = false;
    long ms_ = 0;
    clock::time_point deadline_{};
};

}  // namespace tritile
