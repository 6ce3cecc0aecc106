#pragma once

#include "tbf/boundary.hpp"
#include "tbf/density.hpp"
#include "tbf/gfunction.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tbf {

// First-layer enumeration window: i.i.d. spins are summed over the interval
// [lo, hi] while the four spins just outside are frozen to the given values.
struct FirstLayerWindow {
    Density p;
    long lo = 0;
    long hi = 0;
    std::array<int, 2> left_spins{1, 1};   // first-layer values at lo-2, lo-1
    std::array<int, 2> right_spins{1, 1};  // first-layer values at hi+1, hi+2

    long width() const { return hi - lo + 1; }
    void validate() const;
};

// Conditional probability of every thinned interior word on [l_lo, l_hi]
// given the thinned annulus word on the rest of the window. Entry w of the
// result is the probability of interior word w; bit i of a word is site
// l_lo + i, bit j of the annulus word is the j-th annulus site left to right.
std::vector<double> finite_conditional_table(const FirstLayerWindow& window,
                                             long l_lo, long l_hi,
                                             std::uint64_t target_annulus);

double finite_conditional(const FirstLayerWindow& window, long l_lo, long l_hi,
                          std::uint64_t target_interior,
                          std::uint64_t target_annulus);

// Truncates the boundary to [l-d, r+d] for each depth d, evaluates the
// finite-volume conditional with first-layer spins copied from the boundary,
// and reports the largest absolute deviation from the closed-form kernel.
std::vector<std::pair<long, double>> kernel_convergence(
    const Density& p, const BoundaryCondition& bc, const std::vector<long>& depths);

// Probability that site 0 is empty under the kernel on [0, k] with a past
// realizing the given stopping distance and an all-ones future.
std::vector<std::pair<long, double>> gfunction_via_kernels(
    const Density& p, StoppingDistance n, const std::vector<long>& k_values);

struct ThinSampleSummary {
    long length = 0;
    std::map<std::string, long> window_counts;  // all patterns of length 1..4

    long windows(long pattern_length) const { return length - pattern_length + 1; }
    double frequency(const std::string& pattern) const;
};

ThinSampleSummary monte_carlo_thin(const Density& p, long length, std::uint64_t seed);

// Exact probability that thinning produces the pattern on a centered window,
// obtained by summing Bernoulli weights over every first-layer word on the
// padded window with the two outer spins marginalized.
double pushforward_marginal(const Density& p, const std::vector<int>& pattern,
                            long padding);

} // namespace tbf
