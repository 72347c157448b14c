// Regenerates data/fixtures/oracles.txt (brute-force Monte-Carlo oracles).
// Usage: make_fixtures <output-file>
#include <cmath>
#include <fstream>
#include <iostream>
#include <vector>

#include "msgp/diagnostics.hpp"
#include "msgp/solver.hpp"

using namespace msgp;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-file>\n";
    return 1;
  }
  std::ofstream out(argv[1]);

  out << "# Brute-force oracle fixtures. Regenerate with make_fixtures.\n";
  out << "# All grids are inclusive with uniform step; estimators use common\n";
  out << "# random numbers across grid points.\n\n";

  // Exact closed-form objective at x = 0 for F(x,w) = 0.5 (x - w)^2,
  // w ~ U[-1,1], p = 1, c = 1, R = positive part:
  // E F = 1/6, E (F - E F)_+ = 1/(9 sqrt(3)).
  out << "quadratic_objective_x0_exact = "
      << format_double(1.0 / 6.0 + 1.0 / (9.0 * std::sqrt(3.0))) << "\n\n";

  {
    auto prob = quadratic_1d(0.5, 1.0, -2.0, 2.0);
    std::vector<Vec> grid;
    for (int i = -2000; i <= 2000; ++i) grid.push_back({i * 1e-3});
    const int n_samples = 1000000;
    const std::uint64_t seed = 12345;
    auto [xs, value] =
        grid_oracle(prob, positive_part(), 1.0, 0.5, grid, n_samples, seed);
    out << "# quadratic_1d(sigma=0.5, noise=1, box [-2,2]), p=1, c=0.5,\n";
    out << "# R=positive_part; grid [-2,2] step 1e-3, samples " << n_samples
        << ", seed " << seed << "\n";
    out << "quadratic_msd_xstar = " << format_double(xs[0]) << "\n";
    out << "quadratic_msd_value = " << format_double(value) << "\n\n";
    std::cerr << "quadratic oracle done\n";
  }

  {
    NewsvendorParams params{1.0, 4.0, 1.0, 1.0, 10.0, uniform_demand(0.0, 1.0)};
    auto prob = newsvendor(params);
    std::vector<Vec> grid;
    for (int i = 0; i <= 1200; ++i) grid.push_back({i * 1e-3});
    const int n_samples = 200000;
    const std::uint64_t seed = 99;
    const double c = 0.9;
    const auto nv_reg = newsvendor_piecewise(0.25, 0.5, 0.05, 0.15, 4.0);

    auto [rn, rn_v] =
        grid_oracle(prob, positive_part(), 1.0, 0.0, grid, n_samples, seed);
    auto [nv, nv_v] = grid_oracle(prob, nv_reg, 1.0, c, grid, n_samples, seed);
    auto [usd, usd_v] =
        grid_oracle(prob, positive_part(), 1.0, c, grid, n_samples, seed);

    out << "# newsvendor uniform(0,1), Kp=1, Ku=4, Kh=1, alpha=1, h=10;\n";
    out << "# grid [0,1.2] step 1e-3, samples " << n_samples << ", seed "
        << seed << ", c = " << format_double(c)
        << ", piecewise (0.25, 0.5, 0.05, 0.15, Ku=4)\n";
    out << "newsvendor_rn_xstar = " << format_double(rn[0]) << "\n";
    out << "newsvendor_rn_value = " << format_double(rn_v) << "\n";
    out << "newsvendor_nv_xstar = " << format_double(nv[0]) << "\n";
    out << "newsvendor_nv_value = " << format_double(nv_v) << "\n";
    out << "newsvendor_usd_xstar = " << format_double(usd[0]) << "\n";
    out << "newsvendor_usd_value = " << format_double(usd_v) << "\n";
    std::cerr << "newsvendor oracle done\n";
  }
  return 0;
}
