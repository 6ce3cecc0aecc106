#pragma once

#include "tbf/boundary.hpp"
#include "tbf/density.hpp"
#include "tbf/gfunction.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tbf {

using GhocState = StoppingDistance;

// Single transition probability of the chain on N0 plus infinity:
// 0 -> 1 surely; 1 -> 1 with p, 1 -> 2 with 1-p; i >= 2 climbs to i+1
// with g(i) and resets to 0 otherwise; infinity stays with g(inf) and
// resets to 0 otherwise. Every other entry is 0.
double transition(const Density& p, const GhocState& from, const GhocState& to);

// The nonzero transitions out of a state, as (next, probability) pairs.
std::vector<std::pair<GhocState, double>> transitions(const Density& p,
                                                      const GhocState& from);

struct StationaryDistribution {
    std::vector<double> probabilities;  // states 0 .. truncation_level
    double probability_infinity = 0.0;  // forced to 0 by g(inf) < 1
    long truncation_level = 0;
    double tail_mass_bound = 0.0;

    double prob(const GhocState& s) const;
};

// Solves the balance recursion pi(0) = (1-p)pi(1), pi(k+1) = pi(k)g(k),
// truncated at K and renormalized. Rejects K < 10 and truncations whose
// geometric tail bound pi(K)*lpf/(1-lpf) exceeds 1e-8.
StationaryDistribution stationary(const Density& p, long truncation);

// Smallest truncation whose tail bound drops below the threshold.
StationaryDistribution stationary_auto(const Density& p, double threshold = 1e-10);

// Indicator of {0,1}: the occupied states.
int tau(const GhocState& n);

// Chain path of the given length. Without an initial state the start is
// drawn from stationary_auto by inverse CDF. One RNG draw per step.
std::vector<GhocState> sample_path(const Density& p, long length, std::uint64_t seed,
                                   const std::optional<GhocState>& initial = std::nullopt);

// State sequence read off a thinned word: entry i is the state emitting
// word[i], so tau of the sequence reproduces the word. Entry i is 0 when
// the word starts a cluster at i, otherwise the distance back to the
// nearest adjacent occupied pair, INFINITY when no such pair exists in
// the word or the tail. Rejects gluings with an isolated occupied site
// anywhere both neighbours are determined.
std::vector<GhocState> distance_sequence(const std::vector<int>& word,
                                         const TailPattern& left_tail);

// Drift of the Lyapunov function h(j) = A^j with A = (1 + 1/lpf)/2 and
// h(0) = 0: returns (j, g(j)*A^(j+1) - A^j) for j in [j_min, j_max].
std::vector<std::pair<long, double>> foster_drift(const Density& p, long j_min,
                                                  long j_max);

// Probability that the stationary chain emits the given spin word through
// tau over consecutive steps. Truncation error below 1e-13.
double pattern_probability(const Density& p, const std::vector<int>& word);

} // namespace tbf
