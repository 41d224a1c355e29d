#include "pncert/seesaw.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace pncert {

namespace {

int tri(int d) { return d * (d + 1) / 2; }

int ut_index(int i, int j, int d) {  // i <= j, row-wise upper triangle
  return i * d - i * (i - 1) / 2 + (j - i);
}

// d x d symmetric PSD matrix variable; returns the index of its first scalar.
int add_sym_block(ConicProblem& prob, int d, const std::string& name) {
  int base = prob.n_vars;
  for (int k = 0; k < tri(d); ++k) prob.add_var();
  PsdBlock blk;
  blk.side = d;
  blk.name = name;
  blk.cells.assign(std::size_t(d) * d, {});
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      LinExpr e{{base + ut_index(i, j, d), 1.0}};
      blk.cells[i * d + j] = e;
      blk.cells[j * d + i] = std::move(e);
    }
  prob.blocks.push_back(std::move(blk));
  return base;
}

LinExpr trace_product_expr(const Eigen::MatrixXd& H, int base, int d) {
  LinExpr e;  // tr(H X), X given by its upper triangle
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double c = i == j ? H(i, i) : 2.0 * H(i, j);
      if (c != 0) e.push_back({base + ut_index(i, j, d), c});
    }
  return e;
}

Eigen::MatrixXd unpack(const std::vector<double>& x, int base, int d) {
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) m(i, j) = m(j, i) = x[std::size_t(base) + ut_index(i, j, d)];
  return m;
}

void add_photon_diag_rows(ConicProblem& prob, const Scenario& sc, const PhotonModel& pm,
                          int x, int base, int d) {
  switch (pm.kind) {
    case PhotonKind::ComponentBounds:
    case PhotonKind::ComponentPins: {
      bool pin = pm.kind == PhotonKind::ComponentPins;
      for (int n = 0; n < int(pm.w[x].size()) && n < d; ++n) {
        LinRow row{{{base + ut_index(n, n, d), 1.0}}, pm.w[x][n], "photon"};
        (pin ? prob.eq : prob.ge).push_back(std::move(row));
      }
      break;
    }
    case PhotonKind::TruncatedMean: {
      LinExpr mean_terms, mass_terms;
      for (int n = 0; n <= sc.n_trunc && n < d; ++n) {
        int v = base + ut_index(n, n, d);
        if (n > 0) mean_terms.push_back({v, -double(n)});
        mass_terms.push_back({v, 1.0});
      }
      if (!mean_terms.empty())
        prob.ge.push_back({std::move(mean_terms), -pm.mean[x], "photon-mean"});
      prob.ge.push_back({std::move(mass_terms), pm.mass[x], "photon-mass"});
      break;
    }
  }
}

bool state_step(SeesawModel& mdl, const Scenario& sc, const PhotonModel& pm,
                const Witness& w, const SolverOptions& sopt) {
  int d = mdl.dim;
  for (int x = 0; x < sc.n_states; ++x) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (const auto& t : w.terms)
      if (t.x == x) h += t.c * mdl.povm[t.y][t.b];
    ConicProblem prob;
    int base = add_sym_block(prob, d, "rho");
    LinExpr tr;
    for (int i = 0; i < d; ++i) tr.push_back({base + ut_index(i, i, d), 1.0});
    prob.eq.push_back({std::move(tr), 1.0, "norm"});
    add_photon_diag_rows(prob, sc, pm, x, base, d);
    prob.objective = trace_product_expr(h, base, d);
    prob.maximize = true;
    Solution sol = solve(prob, sopt);
    if (!solved(sol.status)) return false;
    mdl.states[x] = unpack(sol.x, base, d);
  }
  return true;
}

bool measurement_step(SeesawModel& mdl, const Scenario& sc, const Witness& w,
                      const SolverOptions& sopt) {
  int d = mdl.dim, nb = sc.n_outcomes;
  for (int y = 0; y < sc.n_settings; ++y) {
    std::vector<Eigen::MatrixXd> g(nb, Eigen::MatrixXd::Zero(d, d));
    for (const auto& t : w.terms)
      if (t.y == y) g[t.b] += t.c * mdl.states[t.x];
    ConicProblem prob;
    std::vector<int> base(nb);
    for (int b = 0; b < nb; ++b)
      base[b] = add_sym_block(prob, d, "M" + std::to_string(b));
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        LinExpr e;
        for (int b = 0; b < nb; ++b) e.push_back({base[b] + ut_index(i, j, d), 1.0});
        prob.eq.push_back({std::move(e), i == j ? 1.0 : 0.0, "povm"});
      }
    LinExpr obj;
    for (int b = 0; b < nb; ++b) {
      LinExpr e = trace_product_expr(g[b], base[b], d);
      obj.insert(obj.end(), e.begin(), e.end());
    }
    prob.objective = std::move(obj);
    prob.maximize = true;
    Solution sol = solve(prob, sopt);
    if (!solved(sol.status)) return false;
    for (int b = 0; b < nb; ++b) mdl.povm[y][b] = unpack(sol.x, base[b], d);
  }
  return true;
}

std::vector<Eigen::MatrixXd> random_povm(int d, int nb, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::MatrixXd> a(nb);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (int b = 0; b < nb; ++b) {
    Eigen::MatrixXd r(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) r(i, j) = gauss(rng);
    a[b] = r * r.transpose();
    s += a[b];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  Eigen::VectorXd isq = es.eigenvalues().cwiseMax(1e-12).cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd t = es.eigenvectors() * isq.asDiagonal() * es.eigenvectors().transpose();
  for (int b = 0; b < nb; ++b) a[b] = t * a[b] * t;
  return a;
}

}  // namespace

double evaluate_model(const SeesawModel& model, const Witness& w) {
  double v = 0;
  for (const auto& t : w.terms)
    v += t.c * (model.states[t.x] * model.povm[t.y][t.b]).trace();
  return v;
}

SeesawResult seesaw_witness(const Scenario& sc, const PhotonModel& pm,
                            const Witness& w, const SeesawOptions& opt) {
  SeesawResult best;
  int d = std::max(opt.dim, sc.n_trunc + 1);
  for (int r = 0; r < opt.restarts; ++r) {
    std::mt19937_64 rng(opt.seed + std::uint64_t(r));
    SeesawModel mdl;
    mdl.dim = d;
    mdl.states.assign(sc.n_states, Eigen::MatrixXd::Zero(d, d));
    mdl.povm.assign(sc.n_settings, {});
    for (int y = 0; y < sc.n_settings; ++y)
      mdl.povm[y] = random_povm(d, sc.n_outcomes, rng);
    double value = -std::numeric_limits<double>::infinity();
    bool failed = false;
    int sweep = 0;
    for (; sweep < opt.iters; ++sweep) {
      if (!state_step(mdl, sc, pm, w, opt.solver) ||
          !measurement_step(mdl, sc, w, opt.solver)) {
        failed = true;
        break;
      }
      double v = evaluate_model(mdl, w);
      if (v <= value + opt.tol) {
        value = std::max(value, v);
        break;
      }
      value = v;
    }
    if (failed) continue;
    if (!best.ok || value > best.value) {
      best.ok = true;
      best.value = value;
      best.model = mdl;
      best.best_restart = r;
      best.sweeps = sweep + 1;
    }
  }
  return best;
}

}  // namespace pncert
