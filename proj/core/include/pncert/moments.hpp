#pragma once
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pncert/basis.hpp"
#include "pncert/opalg.hpp"
#include "pncert/scenarios.hpp"
#include "pncert/sdpcore.hpp"

namespace pncert {

// A constraint or objective referenced a moment that the relaxation basis
// does not generate; the fix is to add the monomial to the basis.
struct MissingMoment : std::runtime_error {
  std::string monomial;
  explicit MissingMoment(std::string mono)
      : std::runtime_error("moment not generated by the relaxation basis: " +
                           mono + " (add it via the basis extras)"),
        monomial(std::move(mono)) {}
};

// Relaxation level: words of length <= level over the scenario alphabet,
// plus extra monomial families given as patterns (see expand_patterns).
// Localizing matrices get their own (usually shorter) basis; by default
// S_{localizer_level} over the full alphabet, overridable with patterns.
struct RelaxationSpec {
  int level = 1;
  std::vector<std::string> extras;
  int localizer_level = 1;
  std::vector<std::string> localizer_basis;  // empty = default
};

std::vector<Word> relaxation_basis(const Scenario& sc, const RelaxationSpec& spec);
std::vector<Word> localizer_basis(const Scenario& sc, const RelaxationSpec& spec);

// One operator copy: moment matrix Gamma_{u,v} = cls(u^dag v) over a monomial
// basis, plus localizing matrices cls(u^dag (r_x - r_x^2) v) >= 0 for every
// state, sharing a trace-class variable table that maps into `prob`.
class MomentBlock {
 public:
  MomentBlock(const Scenario& sc, ConicProblem& prob, std::string label = "");

  // Variable of the trace class of w, interning it if new; -1 if the class
  // vanishes.
  int class_var(const Word& w);
  int entry(const Word& u, const Word& v);  // class of u^dag v (interning)
  int lookup_class(const Word& w) const;    // -1 zero, -2 not interned
  int require_class(const Word& w) const;   // -1 zero, throws MissingMoment

  // Appends the moment matrix and localizers to the problem.  Must be called
  // before the row emitters below.
  void build(const std::vector<Word>& basis, const std::vector<Word>& locs);

  // sum_b Gamma_{u, M_{b|y} v} = Gamma_{u,v} wherever every term is known;
  // deduplicated, tag "complete".
  void add_completeness_rows();
  // Tr(Z... r_x) equal for all unit-trace tails (r_x, s_n) sharing the same
  // Z prefix; tag "idtrace".
  void add_identity_trace_rows();

  // Anchors into the interned table (non-interning: a moment must already be
  // generated by the relaxation, otherwise MissingMoment).
  const std::vector<Word>& basis() const { return basis_; }
  const Scenario& scenario() const { return sc_; }
  int unit_var() const { return require_class({}); }
  int state_var(int x) const { return require_class({rho_sym(x)}); }
  int sigma_var(int n) const { return require_class({sigma_sym(n)}); }
  int prob_var(int b, int x, int y) const {
    return require_class({rho_sym(x), meas_sym(b, y)});
  }
  int photon_var(int x, int n) const {
    return require_class({rho_sym(x), sigma_sym(n)});
  }
  int n_classes() const { return int(classes_.size()); }

 private:
  Scenario sc_;
  ConicProblem* prob_;
  std::string label_;
  std::unordered_map<Word, int, WordHash> ids_;
  std::vector<Word> classes_;  // insertion order; parallel to interned vars
  std::vector<int> vars_;      // class index -> problem var
  std::vector<Word> basis_;
  std::vector<int> gamma_;     // basis()^2 ids, -1 = zero
};

// Photon-statistics rows.  `term(x, n)` supplies the linear expression whose
// value plays <n|rho_x|n> (a single moment for one copy, a sum across copies
// for averaged multi-block problems).  Tags photon[x,n] / photon-mean[x] /
// photon-mass[x].
void add_photon_rows(ConicProblem& prob, const Scenario& sc, const PhotonModel& pm,
                     const std::function<LinExpr(int, int)>& term);

// Objective expression of a witness on one copy.
LinExpr witness_expr(const MomentBlock& blk, const Witness& w);

// --- single-copy witness certification --------------------------------------
struct WitnessTask {
  Scenario scenario;
  RelaxationSpec relax;
  PhotonModel photon;
  Witness witness;
};

struct BuiltProblem {
  ConicProblem problem;
  LinExpr objective;  // also stored in problem.objective
};

// Full moment relaxation for max W subject to photon constraints:
// normalization rows norm[r,x] / norm[s,n], trace floor, completeness,
// identity-trace, localizers.
BuiltProblem build_witness_problem(const WitnessTask& task);

struct WitnessBound {
  double value = 0;
  Solution solution;
  std::vector<std::pair<std::string, double>> sensitivities;  // tag -> dual
};

WitnessBound witness_bound(const WitnessTask& task, const SolverOptions& opt = {});

}  // namespace pncert
