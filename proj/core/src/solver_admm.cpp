// First-order conic solver: ADMM on the homogeneous self-dual embedding
// (splitting-conic-solver scheme) with Ruiz equilibration, over-relaxation
// and warm starting.  Cones: zero, nonnegative, PSD (scaled svec).
#include <lapacke.h>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>

#include "pncert/sdpcore.hpp"

namespace pncert {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct EigWork {
  int d = 0;
  std::vector<double> a, orig, w, work;
  std::vector<int> iwork;
  void init(int side) {
    d = side;
    a.resize(std::size_t(d) * d);
    orig.resize(std::size_t(d) * (d + 1) / 2);
    w.resize(d);
    work.resize(std::size_t(1 + 6 * d + 2 * d * d + 64));
    iwork.resize(std::size_t(3 + 5 * d + 32));
  }
};

// Project a scaled-svec vector onto the PSD cone in place.
void project_psd(double* sv, EigWork& wk) {
  const int d = wk.d;
  if (d == 1) {
    if (sv[0] < 0) sv[0] = 0;
    return;
  }
  const std::size_t tlen = std::size_t(d) * (d + 1) / 2;
  std::memcpy(wk.orig.data(), sv, tlen * sizeof(double));
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  std::size_t k = 0;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i <= j; ++i) {
      double v = sv[k++];
      if (i != j) v *= inv_rt2;
      wk.a[std::size_t(j) * d + i] = v;
      wk.a[std::size_t(i) * d + j] = v;
    }
  int info = LAPACKE_dsyevd_work(LAPACK_COL_MAJOR, 'V', 'L', d, wk.a.data(), d,
                                 wk.w.data(), wk.work.data(), int(wk.work.size()),
                                 wk.iwork.data(), int(wk.iwork.size()));
  if (info != 0) return;  // leave the point unprojected; residuals will show it

  int first_pos = 0;
  while (first_pos < d && wk.w[first_pos] <= 0) ++first_pos;
  int npos = d - first_pos, nneg = first_pos;
  const double rt2 = std::sqrt(2.0);
  if (npos == 0) {
    std::fill(sv, sv + tlen, 0.0);
    return;
  }
  if (npos <= nneg) {
    // P = sum over positive eigenpairs
    std::fill(sv, sv + tlen, 0.0);
    for (int e = first_pos; e < d; ++e) {
      double l = wk.w[e];
      const double* v = &wk.a[std::size_t(e) * d];
      std::size_t k2 = 0;
      for (int j = 0; j < d; ++j)
        for (int i = 0; i <= j; ++i) {
          double add = l * v[i] * v[j];
          sv[k2++] += (i == j) ? add : rt2 * add;
        }
    }
  } else {
    // P = A - sum over negative eigenpairs
    std::memcpy(sv, wk.orig.data(), tlen * sizeof(double));
    for (int e = 0; e < first_pos; ++e) {
      double l = wk.w[e];
      const double* v = &wk.a[std::size_t(e) * d];
      std::size_t k2 = 0;
      for (int j = 0; j < d; ++j)
        for (int i = 0; i <= j; ++i) {
          double sub = l * v[i] * v[j];
          sv[k2++] -= (i == j) ? sub : rt2 * sub;
        }
    }
  }
}

struct Cones {
  int n_zero = 0, n_nonneg = 0;
  std::vector<int> sides;
  std::vector<int> offs;  // svec offsets of PSD blocks within the cone part
};

// Type-II Anderson acceleration over the fixed-point residual g = F(p) - p,
// with a ring buffer of consecutive differences.
struct Anderson {
  int mem = 0, cols = 0, next = 0;
  bool prev = false;
  Eigen::MatrixXd dS, dG;
  Vec ps, pg;

  void init(Eigen::Index nvec, int m) {
    mem = m;
    dS.resize(nvec, m);
    dG.resize(nvec, m);
    reset();
  }
  void reset() {
    cols = next = 0;
    prev = false;
  }
  void push(const Vec& s, const Vec& g) {
    if (prev) {
      dS.col(next) = s - ps;
      dG.col(next) = g - pg;
      next = (next + 1) % mem;
      cols = std::min(cols + 1, mem);
    }
    ps = s;
    pg = g;
  prev = true;
  }
  bool candidate(const Vec& s, const Vec& g, Vec& out) {
    if (cols < 1) return false;
    auto Gm = dG.leftCols(cols);
    Eigen::MatrixXd gram = Gm.transpose() * Gm;
    gram.diagonal().array() += 1e-13 * gram.trace() + 1e-30;
    Eigen::VectorXd gamma = gram.ldlt().solve(Gm.transpose() * g);
    if (!gamma.allFinite()) return false;
    out = s + g - (dS.leftCols(cols) + dG.leftCols(cols)) * gamma;
    return out.allFinite();
  }
};

}  // namespace

struct AdmmSolver::Impl {
  // scaled data
  SpMat A;          // m x n
  Vec b, c;         // scaled
  Vec D, E;         // row/col equilibration scales: A_scaled = diag(D) A diag(E)
  double sb = 1, sc = 1;  // extra scalar scalings applied to b and c
  double obj_sign = 1;
  Cones K;
  int n = 0, m = 0;
  Eigen::SimplicialLLT<SpMat> llt;  // of I + A'A
  Vec q;                            // M^{-1} [c; b] cache
  double qfac = 0;                  // 1 + c'q_x + b'q_y
  Vec p_state;                      // DR iterate (n+m+1); u = Pi(p), v = u - p
  Vec u, v;                         // derived from the last projected point
  Vec wbuf, ut;                     // scratch
  bool warm = false;
  SolverOptions opt;
  std::vector<EigWork> wks;
  std::vector<double> raw_b, raw_c;  // unscaled
  // originals for residual checks / duals
  long long nnz = 0;

  void factor() {
    SpMat AtA = SpMat(A.transpose()) * A;
    SpMat M = AtA;
    for (int i = 0; i < n; ++i) M.coeffRef(i, i) += 1.0;
    llt.compute(M);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("admm: factorization failed");
  }

  // Solve (I+Q) z = w  (w, z length n+m+1) via the Schur reduction.
  void solve_linsys(const Vec& w, Vec& z) {
    // p = M^{-1} [w1; w2] where M = [[I, A'], [-A, I]]
    Vec w1 = w.head(n), w2 = w.segment(n, m);
    Vec rhs = w1 - A.transpose() * w2;
    Vec p1 = llt.solve(rhs);
    Vec p2 = w2 + A * p1;
    double omega = w[n + m];
    double zeta = (omega + c.dot(p1) + b.dot(p2)) / qfac;
    z.resize(n + m + 1);
    z.head(n) = p1 - zeta * q.head(n);
    z.segment(n, m) = p2 - zeta * q.segment(n, m);
    z[n + m] = zeta;
  }

  void compute_q() {
    Vec rhs = c - A.transpose() * b;
    Vec q1 = llt.solve(rhs);
    Vec q2 = b + A * q1;
    q.resize(n + m);
    q.head(n) = q1;
    q.segment(n, m) = q2;
    qfac = 1.0 + c.dot(q1) + b.dot(q2);
  }

  // u = Pi_C(p), v = u - p,  C = R^n x K* x R+
  void project_point(const Vec& p) {
    u = p;
    double* yp = u.data() + n;
    for (int i = K.n_zero; i < K.n_zero + K.n_nonneg; ++i)
      if (yp[i] < 0) yp[i] = 0;
    for (std::size_t k = 0; k < K.sides.size(); ++k)
      project_psd(yp + K.offs[k], wks[k]);
    u[n + m] = std::max(p[n + m], 0.0);
    v = u - p;
  }

  // One DR iteration: p' = p + alpha (utilde - u), utilde = (I+Q)^{-1}(2u - p).
  void step(const Vec& p, Vec& pn, double alpha) {
    project_point(p);
    wbuf = 2.0 * u;
    wbuf -= p;
    solve_linsys(wbuf, ut);
    pn = p;
    pn += alpha * (ut - u);
  }
};

AdmmSolver::AdmmSolver(const ConicProblem& p, const SolverOptions& opt)
    : impl_(new Impl) {
  ConicStd sd = build_std(p);
  Impl& im = *impl_;
  im.opt = opt;
  im.n = sd.n;
  im.m = sd.m;
  im.obj_sign = sd.obj_sign;
  im.K.n_zero = sd.n_zero;
  im.K.n_nonneg = sd.n_nonneg;
  im.K.sides = sd.sides;
  int off = sd.n_zero + sd.n_nonneg;
  for (int d : sd.sides) {
    im.K.offs.push_back(off);
    off += d * (d + 1) / 2;
    im.wks.emplace_back();
    im.wks.back().init(d);
  }
  im.raw_b = sd.b;
  im.raw_c = sd.c;

  // assemble sparse A
  std::vector<Eigen::Triplet<double>> T;
  T.reserve(sd.vals.size());
  for (int j = 0; j < sd.n; ++j)
    for (long long k = sd.colptr[j]; k < sd.colptr[j + 1]; ++k)
      T.emplace_back(sd.rowidx[k], j, sd.vals[k]);
  im.A.resize(im.m, im.n);
  im.A.setFromTriplets(T.begin(), T.end());
  im.A.makeCompressed();
  im.nnz = im.A.nonZeros();

  // Ruiz equilibration with block-uniform row scales on cone blocks
  im.D = Vec::Ones(im.m);
  im.E = Vec::Ones(im.n);
  Vec rn(im.m), cn(im.n);
  for (int pass = 0; pass < 10; ++pass) {
    rn.setZero();
    cn.setZero();
    for (int j = 0; j < im.A.outerSize(); ++j)
      for (SpMat::InnerIterator it(im.A, j); it; ++it) {
        double a = std::abs(it.value());
        if (a > rn[it.row()]) rn[it.row()] = a;
        if (a > cn[j]) cn[j] = a;
      }
    // uniform scale within each PSD block: use the max row norm of the block
    for (std::size_t k = 0; k < im.K.sides.size(); ++k) {
      int o = im.K.offs[k], len = im.K.sides[k] * (im.K.sides[k] + 1) / 2;
      double mx = 0;
      for (int i = 0; i < len; ++i) mx = std::max(mx, rn[o + i]);
      for (int i = 0; i < len; ++i) rn[o + i] = mx;
    }
    bool done = true;
    for (int i = 0; i < im.m; ++i) {
      double s = rn[i] > 0 ? 1.0 / std::sqrt(rn[i]) : 1.0;
      if (std::abs(1.0 - s) > 1e-3) done = false;
      rn[i] = s;
    }
    for (int j = 0; j < im.n; ++j) {
      double s = cn[j] > 0 ? 1.0 / std::sqrt(cn[j]) : 1.0;
      if (std::abs(1.0 - s) > 1e-3) done = false;
      cn[j] = s;
    }
    for (int j = 0; j < im.A.outerSize(); ++j)
      for (SpMat::InnerIterator it(im.A, j); it; ++it)
        it.valueRef() *= rn[it.row()] * cn[j];
    im.D.array() *= rn.array();
    im.E.array() *= cn.array();
    if (done) break;
  }

  im.factor();
  set_objective(p.objective, p.maximize);

  // b scaling
  Vec bs(im.m);
  for (int i = 0; i < im.m; ++i) bs[i] = im.raw_b[i] * im.D[i];
  double nb = bs.norm();
  im.sb = nb > 1e-12 ? 1.0 / nb : 1.0;
  im.b = bs * im.sb;
  im.compute_q();
}

AdmmSolver::~AdmmSolver() = default;

void AdmmSolver::set_objective(const LinExpr& objective, bool maximize) {
  Impl& im = *impl_;
  im.obj_sign = maximize ? -1.0 : 1.0;
  im.raw_c.assign(im.n, 0.0);
  for (const auto& t : objective) im.raw_c[t.var] += im.obj_sign * t.coef;
  Vec cs(im.n);
  for (int j = 0; j < im.n; ++j) cs[j] = im.raw_c[j] * im.E[j];
  double nc = cs.norm();
  im.sc = nc > 1e-12 ? 1.0 / nc : 1.0;
  im.c = cs * im.sc;
  if (im.b.size() == im.m) im.compute_q();  // skip during construction
}

Solution AdmmSolver::solve() {
  Impl& im = *impl_;
  auto t0 = std::chrono::steady_clock::now();
  const int n = im.n, m = im.m;
  if (!im.warm || im.p_state.size() != n + m + 1) {
    im.p_state = Vec::Zero(n + m + 1);
    im.p_state[n + m] = 1.0;
  } else if (im.p_state[n + m] <= 1e-10) {
    im.p_state[n + m] = 1.0;  // re-center a collapsed warm start
  }

  Solution sol;
  const double alpha = 1.5;
  const double eps = im.opt.eps;
  const int check_every = 25;
  const double nb_raw = std::sqrt(std::inner_product(
      im.raw_b.begin(), im.raw_b.end(), im.raw_b.begin(), 0.0));
  const double nc_raw = std::sqrt(std::inner_product(
      im.raw_c.begin(), im.raw_c.end(), im.raw_c.begin(), 0.0));

  Vec& p = im.p_state;
  Vec pn(n + m + 1), g(n + m + 1), pc, pc2, gc;
  Vec x(n), y(m), s(m), rp(m), rd(n);
  Anderson aa;
  const int aamem = std::max(0, im.opt.aa_memory);
  if (aamem > 0) aa.init(n + m + 1, aamem);
  int cooldown = 0, backoff = 0;

  int it = 0;
  bool done = false;
  for (; it < im.opt.max_iters && !done; ++it) {
    im.step(p, pn, alpha);
    bool jumped = false;
    if (aamem > 0) {
      g = pn;
      g -= p;
      aa.push(p, g);
      if (cooldown > 0) {
        --cooldown;
      } else if (aa.candidate(p, g, pc)) {
        // The DR map is positively homogeneous, so shrinking p shrinks g for
        // free; pin the candidate to the current norm so acceleration cannot
        // drift down the ray towards the trivial fixed point at 0.
        double pcn = pc.norm();
        if (pcn > 1e-300) {
          pc *= p.norm() / pcn;
          im.step(pc, pc2, alpha);
          gc = pc2;
          gc -= pc;
          if (gc.squaredNorm() < g.squaredNorm()) {  // safeguard
            aa.push(pc, gc);
            p = pc2;
            jumped = true;
            backoff = 0;
          } else {
            backoff = backoff == 0 ? 1 : std::min(backoff * 2, 32);
            cooldown = backoff;
          }
        }
      }
    }
    if (!jumped) p = pn;

    if ((it + 1) % check_every != 0 && it + 1 != im.opt.max_iters) continue;
    if (im.opt.time_limit_s > 0) {
      double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (el > im.opt.time_limit_s) done = true;
    }
    im.project_point(p);  // refresh u, v at the current iterate
    double tau = im.u[n + m];
    if (tau > 1e-9) {
      // candidate solution in original coordinates
      Vec xs = im.u.head(n) / tau, ys = im.u.segment(n, m) / tau,
          ss = im.v.segment(n, m) / tau;
      for (int j = 0; j < n; ++j) x[j] = im.E[j] * xs[j] / im.sb;
      for (int i = 0; i < m; ++i) y[i] = im.D[i] * ys[i] / im.sc;
      for (int i = 0; i < m; ++i) s[i] = ss[i] / (im.D[i] * im.sb);
      // unscaled residuals
      rp = im.A * xs + ss - im.b;  // scaled space
      for (int i = 0; i < m; ++i) rp[i] /= im.D[i] * im.sb;
      rd = im.A.transpose() * ys;
      rd += im.c;
      for (int j = 0; j < n; ++j) rd[j] /= im.E[j] * im.sc;
      double pr = rp.norm() / (1.0 + nb_raw);
      double dr = rd.norm() / (1.0 + nc_raw);
      double px = 0, dy = 0;
      for (int j = 0; j < n; ++j) px += im.raw_c[j] * x[j];
      for (int i = 0; i < m; ++i) dy += im.raw_b[i] * y[i];
      double gap = std::abs(px + dy) / (1.0 + std::abs(px) + std::abs(dy));
      sol.primal_res = pr;
      sol.dual_res = dr;
      sol.gap = gap;
      if (im.opt.verbose && ((it + 1) % (40 * check_every) == 0 || done))
        std::printf("admm it %7d  |p| %.3e  tau %.3e  pr %.2e dr %.2e gap %.2e  obj %.9f\n",
                    it + 1, p.norm(), tau, pr, dr, gap, im.obj_sign * px);
      if (pr < eps && dr < eps && gap < eps) {
        sol.status = SolveStatus::Optimal;
        done = true;
      } else if (done || it + 1 == im.opt.max_iters) {
        bool close = pr < 30 * eps && dr < 30 * eps && gap < 30 * eps;
        sol.status = close ? SolveStatus::Inaccurate : SolveStatus::IterLimit;
        done = true;
      }
      if (done) {
        sol.objective = im.obj_sign * px;
        sol.x.assign(x.data(), x.data() + n);
        sol.eq_dual.resize(im.K.n_zero);
        sol.ge_dual.resize(im.K.n_nonneg);
        for (int i = 0; i < im.K.n_zero; ++i) sol.eq_dual[i] = -im.obj_sign * y[i];
        for (int i = 0; i < im.K.n_nonneg; ++i)
          sol.ge_dual[i] = im.obj_sign * y[im.K.n_zero + i];
      }
    } else {
      // tau collapsed: certificate checks, in scaled space
      Vec xs = im.u.head(n), ys = im.u.segment(n, m), ss = im.v.segment(n, m);
      double ctx = im.c.dot(xs), bty = im.b.dot(ys);
      double unb = (im.A * xs + ss).norm();
      double inf = (im.A.transpose() * ys).norm();
      if (bty < -1e-12 && inf <= eps * (-bty)) {
        sol.status = SolveStatus::Infeasible;
        done = true;
      } else if (ctx < -1e-12 && unb <= eps * (-ctx)) {
        sol.status = SolveStatus::Unbounded;
        done = true;
      } else if (it + 1 == im.opt.max_iters) {
        sol.status = SolveStatus::IterLimit;
        done = true;
      }
    }
  }
  if (sol.status == SolveStatus::Failed) sol.status = SolveStatus::IterLimit;
  im.warm = true;
  sol.iters = it;
  sol.solve_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

Solution admm_solve(const ConicProblem& p, const SolverOptions& opt) {
  AdmmSolver s(p, opt);
  return s.solve();
}

}  // namespace pncert
