#include "pncert/moments.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace pncert {

std::vector<Word> relaxation_basis(const Scenario& sc, const RelaxationSpec& spec) {
  auto base = generate_basis(scenario_symbols(sc), spec.level);
  return merge_basis(std::move(base), expand_patterns(sc, spec.extras));
}

std::vector<Word> localizer_basis(const Scenario& sc, const RelaxationSpec& spec) {
  if (spec.localizer_basis.empty())
    return generate_basis(scenario_symbols(sc), spec.localizer_level);
  return expand_patterns(sc, spec.localizer_basis);
}

MomentBlock::MomentBlock(const Scenario& sc, ConicProblem& prob, std::string label)
    : sc_(sc), prob_(&prob), label_(std::move(label)) {}

int MomentBlock::class_var(const Word& w) {
  auto c = trace_class(w);
  if (!c) return -1;
  auto [it, fresh] = ids_.try_emplace(*c, int(classes_.size()));
  if (fresh) {
    classes_.push_back(*c);
    vars_.push_back(prob_->add_var());
  }
  return vars_[it->second];
}

int MomentBlock::entry(const Word& u, const Word& v) {
  auto ua = adjoint(u);
  assert(ua);
  auto w = product(*ua, v);
  if (!w) return -1;
  return class_var(*w);
}

int MomentBlock::lookup_class(const Word& w) const {
  auto c = trace_class(w);
  if (!c) return -1;
  auto it = ids_.find(*c);
  return it == ids_.end() ? -2 : vars_[it->second];
}

int MomentBlock::require_class(const Word& w) const {
  auto c = trace_class(w);
  if (!c) return -1;
  auto it = ids_.find(*c);
  if (it == ids_.end()) throw MissingMoment(format_word(*c));
  return vars_[it->second];
}

void MomentBlock::build(const std::vector<Word>& basis, const std::vector<Word>& locs) {
  basis_ = basis;
  int n = int(basis.size());
  gamma_.assign(std::size_t(n) * n, -1);
  PsdBlock g;
  g.side = n;
  g.name = label_.empty() ? "gamma" : "gamma:" + label_;
  g.cells.assign(std::size_t(n) * n, {});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int e = entry(basis[i], basis[j]);
      gamma_[std::size_t(i) * n + j] = gamma_[std::size_t(j) * n + i] = e;
      if (e >= 0) {
        g.cells[std::size_t(i) * n + j] = {{e, 1.0}};
        if (i != j) g.cells[std::size_t(j) * n + i] = {{e, 1.0}};
      }
    }
  prob_->blocks.push_back(std::move(g));

  int nl = int(locs.size());
  for (int x = 0; x < sc_.n_states; ++x) {
    PsdBlock L;
    L.side = nl;
    L.name = "loc[" + std::to_string(x) + "]" + (label_.empty() ? "" : ":" + label_);
    L.cells.assign(std::size_t(nl) * nl, {});
    for (int i = 0; i < nl; ++i) {
      auto ua = adjoint(locs[i]);
      assert(ua);
      for (int j = i; j < nl; ++j) {
        Word w1 = *ua;
        w1.push_back(rho_sym(x));
        Word w2 = w1;
        w2.push_back(rho_sym(x));
        w1.insert(w1.end(), locs[j].begin(), locs[j].end());
        w2.insert(w2.end(), locs[j].begin(), locs[j].end());
        int a = class_var(w1);
        int b = class_var(w2);
        LinExpr cell;
        if (a >= 0) cell.push_back({a, 1.0});
        if (b >= 0) cell.push_back({b, -1.0});
        if (a >= 0 && a == b) cell.clear();  // identical classes cancel
        L.cells[std::size_t(i) * nl + j] = cell;
        if (i != j) L.cells[std::size_t(j) * nl + i] = std::move(cell);
      }
    }
    prob_->blocks.push_back(std::move(L));
  }
}

void MomentBlock::add_completeness_rows() {
  int n = int(basis_.size());
  std::set<std::pair<std::vector<int>, int>> rows;
  for (int i = 0; i < n; ++i) {
    auto ua = adjoint(basis_[i]);
    assert(ua);
    for (int j = i; j < n; ++j) {
      int rhs = gamma_[std::size_t(i) * n + j];
      for (int y = 0; y < sc_.n_settings; ++y) {
        std::vector<int> ids;
        bool ok = true;
        for (int b = 0; b < sc_.n_outcomes && ok; ++b) {
          Word w = *ua;
          w.push_back(meas_sym(b, y));
          w.insert(w.end(), basis_[j].begin(), basis_[j].end());
          int e = lookup_class(w);
          if (e == -2) ok = false;
          else if (e >= 0) ids.push_back(e);
        }
        if (!ok) continue;
        std::sort(ids.begin(), ids.end());
        if (rhs < 0 && ids.empty()) continue;
        if (rhs >= 0 && ids.size() == 1 && ids[0] == rhs) continue;
        rows.insert({std::move(ids), rhs});
      }
    }
  }
  for (const auto& [ids, rhs] : rows) {
    std::map<int, double> d;
    for (int e : ids) d[e] += 1.0;
    if (rhs >= 0) d[rhs] -= 1.0;
    LinExpr terms;
    for (auto& [v, c] : d)
      if (c != 0.0) terms.push_back({v, c});
    if (!terms.empty()) prob_->eq.push_back({std::move(terms), 0.0, "complete"});
  }
}

void MomentBlock::add_identity_trace_rows() {
  std::map<Word, std::vector<int>> groups;
  for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
    const Word& c = classes_[ci];
    std::size_t nz = 0;
    while (nz < c.size() && sym_kind(c[nz]) == Kind::Aux) ++nz;
    if (nz >= 1 && c.size() == nz + 1 &&
        (sym_kind(c[nz]) == Kind::Rho || sym_kind(c[nz]) == Kind::Sigma))
      groups[Word(c.begin(), c.begin() + nz)].push_back(vars_[ci]);
  }
  for (auto& [zs, vids] : groups)
    for (std::size_t k = 1; k < vids.size(); ++k)
      prob_->eq.push_back({{{vids[0], 1.0}, {vids[k], -1.0}}, 0.0, "idtrace"});
}

}  // namespace pncert
