#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pncert/moments.hpp"

namespace pncert {

// Alternating optimization over explicit finite-dimensional models.  States and
// POVM elements are real symmetric matrices in the number basis, so the photon
// constraints act on the diagonal entries.  Produces feasible points, i.e.
// lower bounds that complement the moment-relaxation upper bounds.
struct SeesawOptions {
  int dim = 4;          // model dimension (raised to n_trunc+1 if smaller)
  int restarts = 20;
  int iters = 60;       // alternation sweeps per restart
  double tol = 1e-9;    // stop a restart when the sweep gain drops below this
  std::uint64_t seed = 1;
  SolverOptions solver;
};

struct SeesawModel {
  int dim = 0;
  std::vector<Eigen::MatrixXd> states;             // per preparation x
  std::vector<std::vector<Eigen::MatrixXd>> povm;  // [setting y][outcome b]
};

struct SeesawResult {
  double value = 0;
  SeesawModel model;
  int best_restart = -1;
  int sweeps = 0;   // sweeps used by the best restart
  bool ok = false;  // at least one restart converged
};

double evaluate_model(const SeesawModel& model, const Witness& w);

SeesawResult seesaw_witness(const Scenario& sc, const PhotonModel& pm,
                            const Witness& w, const SeesawOptions& opt = {});

}  // namespace pncert
