// Exact law of the sieve up to a small cutoff, plus the first moments of y.

#include "hawkins/exact_measure.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 6;
  const hawkins::MeasureTable t = hawkins::enumerate_level(n);
  for (std::size_t mask = 0; mask < t.size(); ++mask) {
    if (t.measure(mask) == 0) continue;
    std::cout << '{';
    const char* sep = "";
    for (auto m : t.elements(mask)) std::cout << sep << m, sep = ",";
    std::cout << "}  mu=" << t.measure(mask) << "  y=" << t.weight(mask) << '\n';
  }
  for (unsigned k = 1; k <= 3; ++k)
    std::cout << "E(y_" << n << "^" << k << ") = " << hawkins::exact_moment(n, k) << '\n';
}
