#pragma once

#include <vector>

#include "tbf/density.hpp"

namespace tbf {

// Distance from a site back to the nearest adjacent pair of occupied sites
// in its past. Infinity is a first-class case, never a sentinel integer.
class StoppingDistance {
public:
    static StoppingDistance finite(long n);
    static StoppingDistance infinity();

    bool is_infinite() const { return infinite_; }
    long value() const;  // throws when infinite

    bool operator==(const StoppingDistance& o) const {
        return infinite_ == o.infinite_ && (infinite_ || n_ == o.n_);
    }

private:
    StoppingDistance(bool inf, long n) : infinite_(inf), n_(n) {}
    bool infinite_;
    long n_;
};

// One-sided conditional probability of an empty spin given a past at
// stopping distance n. g(0) = 0, g(1) = 1-p, g(inf) = lambda_pf, and for
// 2 <= n the closed form
//     g(n) = lambda_pf (c - a^n d) / (c - a^{n-1} d),
// c = 1-lambda_r, d = 1-lambda_pf. Past the cutoff n > 10^4 the a-powers
// underflow and g returns lambda_pf exactly.
double g(Density p, StoppingDistance n);

// |g(n) - g(n+1)| for n >= 2, computed by the cancellation-free
// rearrangement lambda_pf c d (1-a)^2 |a|^{n-1} / (D_n D_{n+1}) with
// D_m = c - a^{m-1} d. The literal difference loses all digits once the
// two g values agree to double precision.
double variation(Density p, long n);

// Signed gap g(n) - lambda_pf = lambda_pf d (1-a) a^{n-1} / (c - a^{n-1} d)
// in the same cancellation-free style, n >= 2.
double g_gap(Density p, long n);

// Limit of g_p(n) as p tends to 1: 2/(n+1) for odd n >= 3, else 0.
double parity_limit(long n);

// Row per density, column per stopping distance.
std::vector<std::vector<double>> sweep_g(const std::vector<Density>& p_values,
                                         const std::vector<StoppingDistance>& n_values);

} // namespace tbf
