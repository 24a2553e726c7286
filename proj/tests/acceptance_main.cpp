#include <cstdlib>
#include <iostream>

#include "transchrome/acceptance.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  unsigned failed = 0;
  transchrome::run_acceptance(seed, [&](const transchrome::CriterionResult& r) {
    std::cout << transchrome::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  });
  return failed == 0 ? 0 : 1;
}
