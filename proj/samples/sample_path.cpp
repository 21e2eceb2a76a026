// Draws one path and prints its first members and a few counts.

#include "hawkins/counters.hpp"
#include "hawkins/sieve_path.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100000;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  const hawkins::SievePath p = hawkins::sample_path_conditional(n, seed);

  std::cout << "first members:";
  int shown = 0;
  p.for_each_member(n, [&](std::uint64_t m) {
    if (shown++ < 15) std::cout << ' ' << m;
  });
  std::cout << "\nmembers up to " << n << ": " << hawkins::prime_count(p, n) << '\n';
  for (std::uint32_t k : {1u, 2u, 4u})
    std::cout << "pairs at gap " << k << ": " << hawkins::count_twin(p, k, n - k) << '\n';
}
