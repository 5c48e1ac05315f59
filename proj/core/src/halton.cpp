#include "swsynth/halton.hpp"

#include <stdexcept>

namespace swsynth {

double van_der_corput(unsigned long long index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

std::vector<std::vector<double>> halton_points(std::size_t count, int dim) {
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  if (dim < 1 || dim > 10) throw std::invalid_argument("halton_points: dim must be in [1, 10]");
  std::vector<std::vector<double>> pts(count, std::vector<double>(static_cast<std::size_t>(dim)));
  for (std::size_t i = 0; i < count; ++i)
    for (int j = 0; j < dim; ++j)
      pts[i][static_cast<std::size_t>(j)] = van_der_corput(i + 1, primes[j]);
  return pts;
}

}  // namespace swsynth
