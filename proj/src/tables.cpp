#include "dwell/tables.hpp"

#include <array>

#include "dwell/errors.hpp"
#include "dwell/report.hpp"
#include "dwell/spectrum.hpp"
#include "dwell/sweep.hpp"

namespace dwell {

std::string TextTable::to_csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

namespace {

std::vector<double> shifted_energies(double a, double b, double g, int n_basis, int n) {
  return solve_energies(zero_minimum(QuarticPotential::double_well(a, b, g)), n_basis, n);
}

TextTable table1() {
  TextTable t{{"N", "E0", "E1", "E2", "E3"}, {}};
  const QuarticPotential v2(0.01, -0.0075, -0.0025, 0.0, 0.0);
  for (int nb : {25, 50, 75, 100}) {
    const auto e = solve_energies(v2, nb, 4);
    t.rows.push_back({std::to_string(nb), format_double(e[0]), format_double(e[1]),
                      format_double(e[2]), format_double(e[3])});
  }
  return t;
}

TextTable table2(int n_basis) {
  const std::vector<double> betas = {5, 10, 15, 20, 25, 30};
  TextTable t{{"pair", "gamma"}, {}};
  for (double b : betas) t.header.push_back("beta=" + format_double(b));
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::string> row = {std::to_string(k) + "-" + std::to_string(k + 1),
                                    std::to_string(2 * k)};
    for (double b : betas) {
      const auto e = shifted_energies(1.0, b, 2.0 * k, n_basis, k + 2);
      row.push_back(format_double(e[k + 1] - e[k]));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TextTable energy_columns(const std::vector<std::array<double, 3>>& sets, int n, int n_basis) {
  TextTable t{{"n"}, {}};
  std::vector<std::vector<double>> cols;
  for (const auto& s : sets) {
    t.header.push_back("alpha=" + format_double(s[0]) + " beta=" + format_double(s[1]) +
                       " gamma=" + format_double(s[2]));
    cols.push_back(shifted_energies(s[0], s[1], s[2], n_basis, n));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> row = {std::to_string(i)};
    for (const auto& c : cols) row.push_back(format_double(c[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

TextTable table5(int n_basis) {
  TextTable t{{"n"}, {}};
  std::vector<std::vector<StateReport>> cols;
  AnalysisOptions opts;
  opts.n_basis = n_basis;
  opts.n_states = 6;
  for (double g : {1.0, 3.0, 5.0, 7.0}) {
    t.header.push_back("gamma=" + format_double(g) + " well");
    t.header.push_back("gamma=" + format_double(g) + " nodes");
    cols.push_back(analyze(zero_minimum(QuarticPotential::double_well(1.0, 20.0, g)), opts));
  }
  for (int n = 0; n < 6; ++n) {
    std::vector<std::string> row = {std::to_string(n)};
    for (const auto& c : cols) {
      row.emplace_back(to_string(c[n].occupancy.classification));
      row.push_back(std::to_string(c[n].nodes.effective));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

TextTable benchmark_table(int which, int n_basis) {
  switch (which) {
    case 1: return table1();
    case 2: return table2(n_basis);
    case 3:
      return energy_columns({{1, 30, 0}, {1, 30, 2}, {1, 30, 4}, {1, 30, 6}, {1, 30, 8}}, 11, n_basis);
    case 4:
      return energy_columns({{1, 11, 2}, {1, 15, 8}, {1, 12, 6}, {1, 14, 10}, {1, 20, 12}}, 8, n_basis);
    case 5: return table5(n_basis);
    default: throw InvalidArgument("table must be 1..5");
  }
}

}  // namespace dwell
