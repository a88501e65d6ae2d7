#pragma once

#include <string>
#include <vector>

namespace dwell {

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

/// Recomputes one of the five benchmark tables:
///   1  V = 0.01 x^4 - 0.0075 x^3 - 0.0025 x^2, E_0..E_3 at N = 25, 50, 75, 100
///   2  gaps E_{k+1} - E_k at gamma = 2k (k = 1..4), beta = 5..30, alpha = 1
///   3  E_0..E_10 at alpha = 1, beta = 30, gamma = 0, 2, 4, 6, 8
///   4  E_0..E_7 at five (alpha, beta, gamma) sets
///   5  well and effective-node count of n = 0..5 at beta = 20, gamma = 1, 3, 5, 7
/// Energies of tables 2-5 are measured from the bottom of the potential.
TextTable benchmark_table(int which, int n_basis = 100);

}  // namespace dwell
