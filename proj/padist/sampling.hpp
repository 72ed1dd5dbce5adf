#pragma once

// Seeded sampling shared by tests, suites and the CLI.  Coefficient
// valuations are uniform in a window, digits uniform in (-p, p), support
// indices uniform under a degree cap.  Only raw engine output is used so
// streams are identical across standard libraries.

#include <cstdint>
#include <random>

#include "padist/distalg.hpp"

namespace padist {

using Rng = std::mt19937_64;

// Uniform in [lo, hi].
long uniform(Rng& rng, long lo, long hi);

// Nonzero p^v * (digits in the power basis), v uniform in [vlo, vhi].
Scalar random_scalar(const Field& F, Rng& rng, int vlo, int vhi);

// Each basis monomial of degree <= maxdeg kept with probability 1/density;
// never zero.
Dist random_dist(const Algebra& A, Rng& rng, int maxdeg, int vlo = -1, int vhi = 2, int density = 3);

// As random_dist, restricted to monomials in the listed generators.
Dist random_dist_in(const Algebra& A, Rng& rng, const std::vector<int>& vars, int maxdeg, int vlo = -1,
                    int vhi = 2, int density = 3);

}  // namespace padist
