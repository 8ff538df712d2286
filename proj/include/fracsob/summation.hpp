#pragma once

namespace fracsob {

// Kahan compensated accumulator. All norm/energy reductions go through this:
// the sums run over 1e4..1e5 terms and cross-path identities are checked to
// 1e-10 relative, which plain summation does not reliably deliver.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace fracsob
