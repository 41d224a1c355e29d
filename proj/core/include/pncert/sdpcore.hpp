#pragma once
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pncert {

struct LinTerm {
  int var;
  double coef;
};
using LinExpr = std::vector<LinTerm>;

// PSD constraint: the side x side symmetric matrix whose (i,j) cell is the
// linear form cells[i*side+j] over the scalar variables must be PSD.
struct PsdBlock {
  int side = 0;
  std::vector<LinExpr> cells;  // row-major, symmetric content
  std::string name;
};

struct LinRow {
  LinExpr terms;
  double rhs = 0;
  std::string tag;
};

struct ConicProblem {
  int n_vars = 0;
  std::vector<PsdBlock> blocks;
  std::vector<LinRow> eq;  // terms . x == rhs
  std::vector<LinRow> ge;  // terms . x >= rhs
  LinExpr objective;
  bool maximize = true;

  int add_var() { return n_vars++; }
};

enum class SolveStatus {
  Optimal,
  Inaccurate,   // converged loosely (limits hit near tolerance)
  Infeasible,
  Unbounded,
  IterLimit,
  Failed,
  Unavailable,  // backend not compiled in
};

const char* to_string(SolveStatus s);
inline bool solved(SolveStatus s) {
  return s == SolveStatus::Optimal || s == SolveStatus::Inaccurate;
}

enum class SolverBackend { Auto, Admm, Clarabel };

struct SolverOptions {
  SolverBackend backend = SolverBackend::Auto;
  double eps = 1e-8;        // primal/dual residual and gap target
  int max_iters = 200000;
  double time_limit_s = 0;  // 0 = none
  bool verbose = false;
  int jitter_retries = 1;   // rescale-and-retry attempts on numerical trouble
  int aa_memory = 10;       // Anderson acceleration history (0 disables)
};

struct Solution {
  SolveStatus status = SolveStatus::Failed;
  double objective = 0;  // in the problem's own sense
  std::vector<double> x;
  std::vector<double> eq_dual;  // per eq row; d(obj)/d(rhs) in the problem sense
  std::vector<double> ge_dual;  // per ge row, same convention
  int iters = 0;
  double solve_time_s = 0;
  double primal_res = 0, dual_res = 0, gap = 0;
  std::string detail;
};

Solution solve(const ConicProblem& p, const SolverOptions& opt = {});

// Dual values keyed by row tag (summed over rows sharing a tag), for
// sensitivity reports: how much the bound moves per unit of constraint value.
std::vector<std::pair<std::string, double>> tagged_duals(const ConicProblem& p,
                                                         const Solution& s);

// Sparse SDPA (.dat-s) export in dual standard form: variables are the scalar
// moments, PSD blocks first, then one diagonal block holding eq (+/- pair)
// and ge rows in problem order.  Deterministic field order.
void write_sdpa(std::ostream& os, const ConicProblem& p);

// --- standard-form conic data (shared by both backends) ---------------------
// minimize c'x  s.t.  Ax + s = b,  s in {0}^n_zero x R+^n_nonneg x PSD(sides)
// A is CSC; PSD slacks are scaled upper-triangle svec (off-diag * sqrt2),
// column-within-triangle order.
struct ConicStd {
  int n = 0, m = 0;
  int n_zero = 0, n_nonneg = 0;
  std::vector<int> sides;
  std::vector<long long> colptr;
  std::vector<int> rowidx;
  std::vector<double> vals;
  std::vector<double> b, c;
  double obj_sign = 1;  // multiply solved min value by this to recover sense
};

ConicStd build_std(const ConicProblem& p);

// First-order splitting solver with reusable factorization and warm starts:
// constraints fixed at construction, objective swappable between solves.
class AdmmSolver {
 public:
  AdmmSolver(const ConicProblem& p, const SolverOptions& opt);
  ~AdmmSolver();
  void set_objective(const LinExpr& objective, bool maximize);
  Solution solve();  // warm-starts from the previous call's iterates
 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Solution admm_solve(const ConicProblem& p, const SolverOptions& opt);
Solution clarabel_solve(const ConicProblem& p, const SolverOptions& opt);
bool clarabel_available();

struct ProblemSize {
  int max_side = 0;
  long long svec_total = 0;
};
ProblemSize problem_size(const ConicProblem& p);

}  // namespace pncert
