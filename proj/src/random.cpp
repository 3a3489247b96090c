#include "algebroid/random.hpp"

#include <functional>

namespace algebroid {

std::vector<Point> sample_points(std::uint64_t seed, std::size_t count, std::size_t m, double lo, double hi) {
  CounterRng rng(seed, 1);
  std::vector<Point> pts(count, Point(m));
  for (auto& p : pts)
    for (auto& x : p) x = rng.uniform(lo, hi);
  return pts;
}

std::vector<Exponents> monomials_up_to(std::size_t nvars, std::uint32_t max_degree) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i == nvars) {
      out.push_back(e);
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, max_degree);
  return out;
}

ScalarField random_polynomial(CounterRng& rng, std::size_t nvars, std::uint32_t max_degree, double lo, double hi) {
  ScalarField::Terms terms;
  for (auto& e : monomials_up_to(nvars, max_degree)) terms.emplace(std::move(e), rng.uniform(lo, hi));
  return ScalarField(nvars, std::move(terms));
}

}  // namespace algebroid
