#pragma once
#include <optional>
#include <utility>

#include "pncert/moments.hpp"
#include "pncert/quadrature.hpp"

namespace pncert {

// Words multiplied by the auxiliary operators in the Shannon node basis.
// Full tensors the whole relaxation basis (tightest, grows as (1+nB)|B|);
// Objective keeps just {1, r_x, r_x M_{b|y*}} per auxiliary, enough to express
// the node objective, and stays within ~1e-5 of Full on the tasks here while
// the blocks stay small.  Localizers keep the full augmentation either way.
enum class ZBasis { Full, Objective };

// Randomness-certification task: bound the entropy of the outcome of setting
// y_star on state x_star, given photon-number assumptions and either a full
// behavior table or a single witness-value pin.
struct EntropyTask {
  Scenario scenario;
  RelaxationSpec relax;
  PhotonModel photon;
  int x_star = 0, y_star = 0;
  std::optional<Behavior> behavior;                     // pins every p(b|x,y)
  std::optional<std::pair<Witness, double>> witness_pin;
  ZBasis z_basis = ZBasis::Full;
};

// --- min-entropy -------------------------------------------------------------
// Guessing-probability SDP: one sub-normalized operator copy per outcome
// (adversary's best guess b), weights q_b, coupled through averaged photon
// and behavior/witness rows.  H_min = -log2 max sum_b Gamma^(b)[r* M_{b|y*}].
struct MinEntropyResult {
  double p_guess = 1;
  double bits = 0;
  Solution solution;
};

BuiltProblem build_min_entropy_problem(const EntropyTask& task);
MinEntropyResult min_entropy_bound(const EntropyTask& task,
                                   const SolverOptions& opt = {});

// --- Shannon entropy ---------------------------------------------------------
// Gauss-Radau lower bound on H(B|X=x*): independent node SDPs over the
// Z-extended monomial basis, summed as c_m + sum_i tau_i * value_i with
// tau_i = w_i / (t_i ln 2), endpoint node excluded.
struct ShannonNode {
  double t = 0, tau = 0, value = 0;
  SolveStatus status = SolveStatus::Failed;
  int iters = 0;
};

struct ShannonResult {
  double bits = 0;
  double c_m = 0;
  std::vector<ShannonNode> nodes;
  SolveStatus worst_status = SolveStatus::Optimal;
};

struct ShannonNodeProblem {
  ConicProblem problem;  // constraints are node-independent
  struct ObjIds {
    int a, b, c;  // classes of [Z r* M], [Z^2 r* M], [Z^2 r*]
  };
  std::vector<ObjIds> ids;  // per outcome
  LinExpr objective_for(double t) const;
};

ShannonNodeProblem build_shannon_node_problem(const EntropyTask& task, int node_index,
                                              double t_init);
ShannonResult shannon_bound(const EntropyTask& task, int m,
                            const SolverOptions& opt = {});

// --- scalar quadrature oracle ------------------------------------------------
// min_z 2 p z + (p(1-t)+t) z^2 = -p^2 / (t(1-p)+p), the classical inner
// minimum of one node term at outcome probability p.
double node_quadratic_min(double p, double t);
// c_m + sum_{i<m-1} tau_i (1 + sum_b node_quadratic_min(p_b, t_i)); lower
// bounds the Shannon entropy of p and converges to it as m grows.
double shannon_scalar_bound(const std::vector<double>& p, int m);
double shannon_entropy(const std::vector<double>& p);

}  // namespace pncert
