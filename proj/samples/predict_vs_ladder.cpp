// Asymptotic prediction against the ladder mean for one gap pattern.

#include "hawkins/asymptotics.hpp"
#include "hawkins/moment_ladder.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const hawkins::Pattern p = hawkins::Pattern::parse(argc > 1 ? argv[1] : "0,2");
  const auto series = hawkins::pattern_ladder_series<double>(100000, p);
  std::cout << "n,ladder,prediction,normalized_residual\n";
  for (const auto& pt : series) {
    if (pt.n < 100 || (pt.n % 10000 != 0 && pt.n != 100 && pt.n != 1000)) continue;
    const hawkins::Prediction q = hawkins::predict_T(pt.n, p);
    std::cout << pt.n << ',' << pt.first << ',' << q.value() << ',' << q.normalized_residual(pt.first) << '\n';
  }
}
