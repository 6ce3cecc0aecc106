#pragma once

#include <stdexcept>
#include <string>

namespace tbf {

// Occupation probability of the first-layer Bernoulli field. Every formula
// downstream divides by p, 1-p, or an eigenvalue that vanishes at the
// endpoints, so construction rejects anything outside the open interval.
class Density {
public:
    explicit Density(double p) : p_(p) {
        if (!(p > 0.0) || !(p < 1.0)) {
            throw std::domain_error(
                "density must lie strictly inside (0,1), got " + std::to_string(p));
        }
    }
    double value() const { return p_; }

private:
    double p_;
};

} // namespace tbf
