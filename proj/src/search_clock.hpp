#pragma once

#include <chrono>

#include "mantel/solvers.hpp"

namespace mantel::detail {

/// Node and wall-clock accounting against a Budget.
class SearchClock {
public:
    explicit SearchClock(const Budget& budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    /// Counts one node; true once the budget is exhausted (sticky).
    bool tick() {
        ++nodes_;
        if (exhausted_) return true;
        if (budget_.max_nodes && nodes_ > budget_.max_nodes) exhausted_ = true;
        if (budget_.max_seconds > 0.0 && (nodes_ & 1023u) == 0 && elapsed() > budget_.max_seconds) exhausted_ = true;
        return exhausted_;
    }
    bool exhausted() const { return exhausted_; }
    std::uint64_t nodes() const { return nodes_; }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    SearchStats stats() const { return {nodes_, elapsed(), exhausted_}; }

private:
    Budget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace mantel::detail
