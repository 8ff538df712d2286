// End-to-end acceptance suite: one pass/fail line per criterion, all
// tolerances pinned inside the checks. Exits nonzero on any failure. The
// whole table must finish within the ten-minute budget.

#include <cstdio>

#include "fracsob/verify.hpp"

int main() {
    const auto results = fracsob::runAcceptanceChecks();
    bool all = true;
    double total = 0.0;
    int index = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d %-20s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", ++index,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        all &= r.pass;
        total += r.seconds;
    }
    const bool inBudget = total < 600.0;
    std::printf("[%s] total runtime %.1fs (< 600s)\n", inBudget ? "PASS" : "FAIL", total);
    return (all && inBudget) ? 0 : 1;
}
