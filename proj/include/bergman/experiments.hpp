#ifndef BERGMAN_EXPERIMENTS_HPP
#define BERGMAN_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "bergman/config.hpp"
#include "bergman/functions.hpp"
#include "bergman/report.hpp"

namespace bergman {

/// One member of the fixed verification family.
struct TestFunction {
  HoloFun f;
  std::string id;
  double radius = 0.0;  // |a| for atoms, 0 otherwise (boundary parameter)
  bool is_atom = false;
};

/// The golden test family for the norm-equivalence sweeps: atoms along e_1 at
/// the given radii, low-degree monomials, and two fixed atomic combinations.
/// Atom exponents are chosen with a fixed safety margin above the
/// decomposition hypothesis b > n max{1, 1/p} + (alpha+1)/p.
std::vector<TestFunction> equivalence_test_family(int n, double p, double alpha,
                                                  const std::vector<double>& atom_radii,
                                                  bool include_constant);

/// Grid-cell precondition violations for the named experiment (empty = valid).
std::vector<std::string> validate_cells(const ExperimentConfig& config);

/// Run the named experiment at the configured resolutions. Every reported
/// norm is recomputed at doubled quadrature resolutions; rows that move by
/// more than config.convergence_rel are flagged unconverged and excluded from
/// all verdict statistics.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace bergman

#endif
