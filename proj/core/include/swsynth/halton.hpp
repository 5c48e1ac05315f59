#pragma once

#include <vector>

namespace swsynth {

/// i-th element (1-based internally) of the van der Corput sequence in `base`.
double van_der_corput(unsigned long long index, unsigned base);

/// Low-discrepancy points in [0,1]^d (Halton with the first d primes).
std::vector<std::vector<double>> halton_points(std::size_t count, int dim);

}  // namespace swsynth
