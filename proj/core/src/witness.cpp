#include "pncert/moments.hpp"

#include <map>
#include <stdexcept>

namespace pncert {

void add_photon_rows(ConicProblem& prob, const Scenario& sc, const PhotonModel& pm,
                     const std::function<LinExpr(int, int)>& term) {
  auto tag2 = [](const char* base, int x, int n) {
    return std::string(base) + "[" + std::to_string(x) + "," + std::to_string(n) + "]";
  };
  auto tag1 = [](const char* base, int x) {
    return std::string(base) + "[" + std::to_string(x) + "]";
  };
  switch (pm.kind) {
    case PhotonKind::ComponentBounds:
    case PhotonKind::ComponentPins: {
      if (int(pm.w.size()) != sc.n_states)
        throw std::invalid_argument("photon model: wrong number of states");
      bool pin = pm.kind == PhotonKind::ComponentPins;
      for (int x = 0; x < sc.n_states; ++x)
        for (int n = 0; n < int(pm.w[x].size()); ++n) {
          LinRow row{term(x, n), pm.w[x][n], tag2("photon", x, n)};
          (pin ? prob.eq : prob.ge).push_back(std::move(row));
        }
      break;
    }
    case PhotonKind::TruncatedMean: {
      if (int(pm.mean.size()) != sc.n_states || int(pm.mass.size()) != sc.n_states)
        throw std::invalid_argument("photon model: wrong number of states");
      for (int x = 0; x < sc.n_states; ++x) {
        LinExpr mean_terms, mass_terms;
        for (int n = 0; n <= sc.n_trunc; ++n) {
          LinExpr t = term(x, n);
          for (auto& e : t) {
            if (n > 0) mean_terms.push_back({e.var, -double(n) * e.coef});
            mass_terms.push_back({e.var, e.coef});
          }
        }
        // sum n <n|rho|n> <= mean  <=>  -sum n ... >= -mean
        if (!mean_terms.empty())
          prob.ge.push_back({std::move(mean_terms), -pm.mean[x], tag1("photon-mean", x)});
        prob.ge.push_back({std::move(mass_terms), pm.mass[x], tag1("photon-mass", x)});
      }
      break;
    }
  }
}

LinExpr witness_expr(const MomentBlock& blk, const Witness& w) {
  std::map<int, double> acc;
  for (const auto& t : w.terms) {
    int v = blk.prob_var(t.b, t.x, t.y);
    if (v >= 0) acc[v] += t.c;
  }
  LinExpr e;
  for (auto& [v, c] : acc) e.push_back({v, c});
  return e;
}

BuiltProblem build_witness_problem(const WitnessTask& task) {
  BuiltProblem bp;
  ConicProblem& prob = bp.problem;
  const Scenario& sc = task.scenario;
  MomentBlock blk(sc, prob);
  blk.build(relaxation_basis(sc, task.relax), localizer_basis(sc, task.relax));
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
  bp.objective = witness_expr(blk, task.witness);
  prob.objective = bp.objective;
  prob.maximize = true;
  return bp;
}

WitnessBound witness_bound(const WitnessTask& task, const SolverOptions& opt) {
  BuiltProblem bp = build_witness_problem(task);
  WitnessBound wb;
  wb.solution = solve(bp.problem, opt);
  wb.value = wb.solution.objective;
  wb.sensitivities = tagged_duals(bp.problem, wb.solution);
  return wb;
}

}  // namespace pncert
