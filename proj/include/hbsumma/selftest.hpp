#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hbsumma::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double elapsed_s = 0.0;
    std::string detail;
};

// Runs the full acceptance suite with its pinned tolerances and time budgets.
std::vector<CriterionResult> run_all();

// Prints one PASS/FAIL line per criterion; returns the number of failures.
int report(std::ostream& os, const std::vector<CriterionResult>& results);

// Deterministic generator used by the randomized checks: identical streams
// on every run and platform.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // xorshift64*, fixed constants
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545f4914f6cdd1dull;
    }
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    std::int64_t below(std::int64_t n) { return std::int64_t(next_u64() % std::uint64_t(n)); }

private:
    std::uint64_t state_;
};

}  // namespace hbsumma::selftest
