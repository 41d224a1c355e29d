#include "pncert/entropy.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace pncert {

namespace {

void check_task(const EntropyTask& t) {
  if (t.behavior.has_value() == t.witness_pin.has_value())
    throw std::invalid_argument(
        "entropy task needs exactly one of behavior or witness pin");
  if (t.behavior &&
      (t.behavior->n_outcomes != t.scenario.n_outcomes ||
       t.behavior->n_states != t.scenario.n_states ||
       t.behavior->n_settings != t.scenario.n_settings))
    throw std::invalid_argument("behavior table does not match the scenario");
}

void add_pin_rows(ConicProblem& prob, const EntropyTask& task,
                  const std::function<LinExpr(int, int, int)>& pvar) {
  if (task.behavior) {
    const Behavior& beh = *task.behavior;
    for (int y = 0; y < beh.n_settings; ++y)
      for (int x = 0; x < beh.n_states; ++x)
        for (int b = 0; b < beh.n_outcomes; ++b)
          prob.eq.push_back({pvar(b, x, y), beh.at(b, x, y),
                             "prob[" + std::to_string(b) + "," + std::to_string(x) +
                                 "," + std::to_string(y) + "]"});
  } else {
    const auto& [wit, val] = *task.witness_pin;
    std::map<int, double> acc;
    for (const auto& t : wit.terms)
      for (const auto& e : pvar(t.b, t.x, t.y)) acc[e.var] += t.c * e.coef;
    LinExpr terms;
    for (auto& [v, c] : acc) terms.push_back({v, c});
    prob.eq.push_back({std::move(terms), val, "witness"});
  }
}

// Entropy relaxations sit on degenerate faces near the optimum; interior
// point wins decisively while its KKT factor stays tractable, the splitting
// solver takes over beyond that.
SolverBackend entropy_backend(const ConicProblem& p, const SolverOptions& opt) {
  if (opt.backend != SolverBackend::Auto) return opt.backend;
  if (clarabel_available() && problem_size(p).svec_total <= 2200)
    return SolverBackend::Clarabel;
  return SolverBackend::Admm;
}

}  // namespace

BuiltProblem build_min_entropy_problem(const EntropyTask& task) {
  check_task(task);
  const Scenario& sc = task.scenario;
  int nB = sc.n_outcomes;
  BuiltProblem bp;
  ConicProblem& prob = bp.problem;
  auto basis = relaxation_basis(sc, task.relax);
  auto locs = localizer_basis(sc, task.relax);

  std::vector<std::unique_ptr<MomentBlock>> blks;
  for (int b = 0; b < nB; ++b) {
    blks.push_back(std::make_unique<MomentBlock>(sc, prob, "g" + std::to_string(b)));
    blks[b]->build(basis, locs);
  }
  std::vector<int> q;
  for (int b = 0; b < nB; ++b) q.push_back(prob.add_var());

  for (int b = 0; b < nB; ++b) {
    MomentBlock& blk = *blks[b];
    blk.add_completeness_rows();
    blk.add_identity_trace_rows();
    std::string sb = std::to_string(b);
    for (int x = 0; x < sc.n_states; ++x)
      prob.eq.push_back({{{blk.state_var(x), 1.0}, {q[b], -1.0}}, 0.0,
                         "qlink[r," + std::to_string(x) + "," + sb + "]"});
    for (int n = 0; n <= sc.n_trunc; ++n)
      prob.eq.push_back({{{blk.sigma_var(n), 1.0}, {q[b], -1.0}}, 0.0,
                         "qlink[s," + std::to_string(n) + "," + sb + "]"});
    prob.ge.push_back({{{blk.unit_var(), 1.0}, {q[b], -double(sc.n_trunc + 1)}}, 0.0,
                       "trace-floor[" + sb + "]"});
    prob.ge.push_back({{{q[b], 1.0}}, 0.0, "qpos[" + sb + "]"});
  }
  LinExpr qsum;
  for (int b = 0; b < nB; ++b) qsum.push_back({q[b], 1.0});
  prob.eq.push_back({std::move(qsum), 1.0, "qsum"});

  add_photon_rows(prob, sc, task.photon, [&](int x, int n) {
    LinExpr e;
    for (int b = 0; b < nB; ++b) e.push_back({blks[b]->photon_var(x, n), 1.0});
    return e;
  });
  add_pin_rows(prob, task, [&](int b, int x, int y) {
    LinExpr e;
    for (int g = 0; g < nB; ++g) e.push_back({blks[g]->prob_var(b, x, y), 1.0});
    return e;
  });

  for (int b = 0; b < nB; ++b)
    bp.objective.push_back({blks[b]->prob_var(b, task.x_star, task.y_star), 1.0});
  prob.objective = bp.objective;
  prob.maximize = true;
  return bp;
}

MinEntropyResult min_entropy_bound(const EntropyTask& task, const SolverOptions& opt) {
  BuiltProblem bp = build_min_entropy_problem(task);
  SolverOptions ropt = opt;
  ropt.backend = entropy_backend(bp.problem, opt);
  MinEntropyResult r;
  r.solution = solve(bp.problem, ropt);
  if (!solved(r.solution.status) && opt.backend == SolverBackend::Auto &&
      ropt.backend == SolverBackend::Clarabel) {
    // interior point stalled; fall back to the splitting solver
    ropt.backend = SolverBackend::Admm;
    ropt.eps = std::max(opt.eps, 1e-6);
    r.solution = solve(bp.problem, ropt);
    r.solution.detail += " (splitting fallback)";
  }
  if (solved(r.solution.status)) {
    r.p_guess = r.solution.objective;
    r.bits = -std::log2(std::min(1.0, std::max(r.p_guess, 1e-300)));
  }
  return r;
}

LinExpr ShannonNodeProblem::objective_for(double t) const {
  std::map<int, double> acc;
  for (const auto& id : ids) {
    if (id.a >= 0) acc[id.a] += 2.0;
    if (id.b >= 0) acc[id.b] += 1.0 - t;
    if (id.c >= 0) acc[id.c] += t;
  }
  LinExpr e;
  for (auto& [v, c] : acc) e.push_back({v, c});
  return e;
}

ShannonNodeProblem build_shannon_node_problem(const EntropyTask& task, int node_index,
                                              double t_init) {
  check_task(task);
  const Scenario& sc = task.scenario;
  int nB = sc.n_outcomes;
  ShannonNodeProblem np;
  ConicProblem& prob = np.problem;

  auto base = relaxation_basis(sc, task.relax);
  auto locs = localizer_basis(sc, task.relax);
  std::vector<Sym> zs;
  for (int b = 0; b < nB; ++b) zs.push_back(aux_sym(b, node_index));

  auto augment = [&](const std::vector<Word>& ws,
                     const std::function<std::vector<Word>(int)>& per_b) {
    std::vector<Word> ext;
    for (int b = 0; b < nB; ++b)
      for (const Word& w : per_b(b)) {
        Word e{zs[b]};
        e.insert(e.end(), w.begin(), w.end());
        if (auto c = canonicalize(std::move(e))) ext.push_back(std::move(*c));
      }
    return merge_basis(std::vector<Word>(ws), ext);
  };
  auto full = [&](int) { return base; };
  auto objective_words = [&](int b) {
    std::vector<Word> ws{Word{}};
    for (int x = 0; x < sc.n_states; ++x) {
      ws.push_back(Word{rho_sym(x)});
      ws.push_back(Word{rho_sym(x), meas_sym(b, task.y_star)});
    }
    return ws;
  };
  auto aux_basis = augment(
      base, task.z_basis == ZBasis::Full
                ? std::function<std::vector<Word>(int)>(full)
                : std::function<std::vector<Word>(int)>(objective_words));
  auto aux_locs = augment(locs, [&](int) { return locs; });

  MomentBlock blk(sc, prob, "z" + std::to_string(node_index));
  blk.build(aux_basis, aux_locs);
  blk.add_completeness_rows();
  blk.add_identity_trace_rows();
  for (int x = 0; x < sc.n_states; ++x)
    prob.eq.push_back({{{blk.state_var(x), 1.0}}, 1.0,
                       "norm[r," + std::to_string(x) + "]"});
  for (int n = 0; n <= sc.n_trunc; ++n)
    prob.eq.push_back({{{blk.sigma_var(n), 1.0}}, 1.0,
                       "norm[s," + std::to_string(n) + "]"});
  prob.ge.push_back({{{blk.unit_var(), 1.0}}, double(sc.n_trunc + 1), "trace-floor"});
  add_photon_rows(prob, sc, task.photon,
                  [&](int x, int n) -> LinExpr { return {{blk.photon_var(x, n), 1.0}}; });
  add_pin_rows(prob, task, [&](int b, int x, int y) -> LinExpr {
    return {{blk.prob_var(b, x, y), 1.0}};
  });

  for (int b = 0; b < nB; ++b) {
    Word zr{zs[b], rho_sym(task.x_star)};
    Word zzr{zs[b], zs[b], rho_sym(task.x_star)};
    Word zrm = zr, zzrm = zzr;
    zrm.push_back(meas_sym(b, task.y_star));
    zzrm.push_back(meas_sym(b, task.y_star));
    np.ids.push_back({blk.require_class(zrm), blk.require_class(zzrm), blk.require_class(zzr)});
  }
  prob.objective = np.objective_for(t_init);
  prob.maximize = false;
  return np;
}

ShannonResult shannon_bound(const EntropyTask& task, int m, const SolverOptions& opt) {
  Quadrature quad = gauss_radau(m);
  ShannonResult res;
  if (m < 2) return res;
  ShannonNodeProblem np = build_shannon_node_problem(task, 0, quad.nodes[0]);
  SolverOptions ropt = opt;
  ropt.backend = entropy_backend(np.problem, opt);
  bool use_clarabel = ropt.backend == SolverBackend::Clarabel;
  std::unique_ptr<AdmmSolver> admm;
  if (!use_clarabel) admm = std::make_unique<AdmmSolver>(np.problem, ropt);

  for (int i = 0; i < m - 1; ++i) {  // endpoint node excluded
    double t = quad.nodes[i], w = quad.weights[i];
    double tau = w / (t * std::numbers::ln2);
    LinExpr objective = np.objective_for(t);
    Solution sol;
    if (use_clarabel) {
      np.problem.objective = objective;
      np.problem.maximize = false;
      sol = clarabel_solve(np.problem, ropt);
      if (!solved(sol.status)) {
        // interior point stalls on some nodes (typically t near 1); recover
        // with the splitting solver, warm-started across fallback nodes
        if (!admm) {
          SolverOptions fopt = ropt;
          fopt.backend = SolverBackend::Admm;
          fopt.eps = std::max(ropt.eps, 1e-6);
          fopt.max_iters = std::min(ropt.max_iters, 100000);
          admm = std::make_unique<AdmmSolver>(np.problem, fopt);
        }
        admm->set_objective(objective, false);
        sol = admm->solve();
        sol.detail += " (splitting fallback)";
      }
    } else {
      admm->set_objective(objective, false);
      sol = admm->solve();
    }
    ShannonNode node{t, tau, sol.objective, sol.status, sol.iters};
    if (!solved(sol.status) && int(sol.status) > int(res.worst_status))
      res.worst_status = sol.status;
    res.nodes.push_back(node);
    res.c_m += tau;
    res.bits += tau * (1.0 + node.value);
  }
  // A node without a converged value voids the certificate; fall back to the
  // trivial bound rather than trusting a partial objective.
  if (!solved(res.worst_status)) res.bits = 0.0;
  if (res.bits < 0) res.bits = 0.0;
  return res;
}

double node_quadratic_min(double p, double t) {
  if (p == 0) return 0;
  return -p * p / (t * (1 - p) + p);
}

double shannon_scalar_bound(const std::vector<double>& p, int m) {
  Quadrature quad = gauss_radau(m);
  double tot = 0;
  for (int i = 0; i < m - 1; ++i) {
    double t = quad.nodes[i];
    double tau = quad.weights[i] / (t * std::numbers::ln2);
    tot += tau;
    for (double pb : p) tot += tau * node_quadratic_min(pb, t);
  }
  return tot;
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

}  // namespace pncert
