#pragma once

#include <array>
#include <cstdint>

#include "tbf/density.hpp"

namespace tbf {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Eigen-data of the symmetric transfer matrix
//   Q = [[1-p, sqrt(p(1-p))], [sqrt(p(1-p)), 0]]
// together with the derived limit constants. Everything is evaluated from
// closed forms, never from an iterative eigensolver.
struct Spectrum {
    double p;
    double sqrt_disc;  // sqrt((1-p)(3p+1))
    double lambda_pf;  // Perron-Frobenius eigenvalue, in (0,1)
    double lambda_r;   // remaining eigenvalue, in (-1/3, 0)
    double a;          // eigenvalue ratio lambda_r / lambda_pf, in (-1,0)
    std::array<double, 2> v_pf;  // eigenvector (lambda_pf/sqrt(p(1-p)), 1)
    std::array<double, 2> v_r;   // eigenvector (lambda_r /sqrt(p(1-p)), 1)
    double c_ratio;  // sqrt_disc / |lambda_r|
    double d_const;  // (1-p)(lambda_pf + 2p) / lambda_pf^3
};

Spectrum build_spectrum(Density p);

// The matrix Q itself (equals q_power with m=1).
Mat2 transfer_matrix(Density p);

// Q^m by the closed spectral form, m >= 1. Q^0 is rejected; callers that
// need it use the identity explicitly.
Mat2 q_power(Density p, long m);

// Log-scaled variant for exponents where lambda_pf^m underflows. All
// entries of Q^m are nonnegative; sign 0 marks an exactly-zero entry
// (only Q^1(1,1)), whose log_abs is -infinity.
struct QPowerLog {
    Mat2 log_abs;
    std::array<std::array<int, 2>, 2> sign;
};
QPowerLog q_power_log(Density p, long m);

// log of Q^m(x,y) for m >= 1; -infinity when the entry is zero.
double log_q_entry(Density p, long m, int x, int y);

// Limit of Q^{n+i}(w,x) / Q^n(w,y) as n grows: lambda_pf^i v_pf(x)/v_pf(y).
double ratio_limit_onesided(Density p, long i, int x, int y);

// Limit of Q^{n+m+i}(w,e) / (Q^n(w,x) Q^m(y,e)): lambda_pf^i c_ratio /
// (v_pf(x) v_pf(y)).
double ratio_limit_twosided(Density p, long i, int x, int y);

// Probability that every occupied first-layer spin in a connected interval
// of the given length is isolated given the two flanking spins, so the
// whole interval thins to empty: Q^{len+1}(left,right) /
// (sqrt(alpha(left)) sqrt(alpha(right))) with alpha(x) = p^x (1-p)^{1-x}.
// length 0 collapses to the pure adjacency weight Q^1.
double isolation_weight(Density p, long interval_length, int left_spin, int right_spin);

} // namespace tbf
