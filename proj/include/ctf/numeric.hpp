// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

namespace ctf {

/// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Scientific notation with `sig` significant figures and a bare exponent,
/// e.g. format_flop(1.215e26) == "1.22e26".
std::string format_flop(double value, int sig = 3);

/// Unitless quantities (shares, gradients): printf %g with `sig` digits.
std::string format_sig(double value, int sig = 4);

/// Shortest round-trip decimal for a double (used in canonical config text).
std::string format_exact(double value);

/// Parses a finite double, accepting scientific notation. Throws
/// std::invalid_argument on trailing garbage or non-finite results.
double parse_double(const std::string& text);

}  // namespace ctf
