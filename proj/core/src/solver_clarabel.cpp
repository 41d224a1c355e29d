#include "pncert/sdpcore.hpp"

#ifdef PNCERT_HAVE_CLARABEL
extern "C" int pncert_clarabel_solve(
    long long n, long long m, const long long* colptr, const int* rowidx,
    const double* vals, const double* b, const double* c, long long n_zero,
    long long n_nonneg, long long n_psd, const int* psd_sides, double eps,
    long long max_iters, double time_limit, int verbose, double* out_x,
    double* out_y, double* out_obj, long long* out_iters);
#endif

namespace pncert {

bool clarabel_available() {
#ifdef PNCERT_HAVE_CLARABEL
  return true;
#else
  return false;
#endif
}

#ifdef PNCERT_HAVE_CLARABEL
Solution clarabel_solve(const ConicProblem& p, const SolverOptions& opt) {
  ConicStd sd = build_std(p);
  Solution sol;
  std::vector<double> x(sd.n), y(sd.m);
  double obj = 0;
  long long iters = 0;
  int code = pncert_clarabel_solve(
      sd.n, sd.m, sd.colptr.data(), sd.rowidx.data(), sd.vals.data(),
      sd.b.data(), sd.c.data(), sd.n_zero, sd.n_nonneg,
      (long long)sd.sides.size(), sd.sides.data(), opt.eps,
      std::min(opt.max_iters, 100000), opt.time_limit_s, opt.verbose ? 1 : 0,
      x.data(), y.data(), &obj, &iters);
  sol.iters = int(iters);
  switch (code) {
    case 0: sol.status = SolveStatus::Optimal; break;
    case 1: sol.status = SolveStatus::Inaccurate; break;
    case 2: sol.status = SolveStatus::Infeasible; break;
    case 3: sol.status = SolveStatus::Unbounded; break;
    case 4: sol.status = SolveStatus::IterLimit; break;
    default: sol.status = SolveStatus::Failed; break;
  }
  if (solved(sol.status)) {
    sol.objective = sd.obj_sign * obj;
    sol.x = std::move(x);
    sol.eq_dual.resize(sd.n_zero);
    sol.ge_dual.resize(sd.n_nonneg);
    for (int i = 0; i < sd.n_zero; ++i) sol.eq_dual[i] = -sd.obj_sign * y[i];
    for (int i = 0; i < sd.n_nonneg; ++i)
      sol.ge_dual[i] = sd.obj_sign * y[sd.n_zero + i];
  }
  return sol;
}
#else
Solution clarabel_solve(const ConicProblem&, const SolverOptions&) {
  Solution sol;
  sol.status = SolveStatus::Unavailable;
  sol.detail = "clarabel backend not built";
  return sol;
}
#endif

}  // namespace pncert
