#include <algorithm>
#include <cmath>

#include "pncert/sdpcore.hpp"

namespace pncert {

namespace {

// Small dense problems go to the interior-point backend when present; moment
// relaxations (larger blocks, flat geometry) converge more reliably on the
// first-order splitting backend.
SolverBackend pick_backend(const ConicProblem& p) {
  if (!clarabel_available()) return SolverBackend::Admm;
  ProblemSize ps = problem_size(p);
  if (ps.max_side <= 30 && ps.svec_total <= 700) return SolverBackend::Clarabel;
  return SolverBackend::Admm;
}

}  // namespace

ProblemSize problem_size(const ConicProblem& p) {
  ProblemSize ps;
  for (const auto& b : p.blocks) {
    ps.max_side = std::max(ps.max_side, b.side);
    ps.svec_total += (long long)b.side * (b.side + 1) / 2;
  }
  return ps;
}

Solution solve(const ConicProblem& p, const SolverOptions& opt) {
  SolverBackend be = opt.backend == SolverBackend::Auto ? pick_backend(p) : opt.backend;
  Solution sol = be == SolverBackend::Clarabel ? clarabel_solve(p, opt)
                                               : admm_solve(p, opt);
  // numerical-trouble retry: perturb the scaling by jittering the objective
  // magnitude, re-solve, restore
  int retries = opt.jitter_retries;
  while (retries-- > 0 &&
         (sol.status == SolveStatus::Failed || sol.status == SolveStatus::IterLimit)) {
    ConicProblem q = p;
    for (auto& t : q.objective) t.coef *= 1.0 + 1e-9;
    SolverOptions o2 = opt;
    o2.max_iters = opt.max_iters * 2;
    Solution s2 = be == SolverBackend::Clarabel ? clarabel_solve(q, o2)
                                                : admm_solve(q, o2);
    s2.detail += " (jitter retry)";
    if (solved(s2.status) || s2.status == SolveStatus::Infeasible ||
        s2.status == SolveStatus::Unbounded)
      return s2;
    if (s2.gap < sol.gap) sol = s2;
  }
  return sol;
}

}  // namespace pncert
