#include "pncert/basis.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace pncert {

std::vector<Sym> scenario_symbols(const Scenario& sc) {
  std::vector<Sym> syms;
  for (int x = 0; x < sc.n_states; ++x) syms.push_back(rho_sym(x));
  for (int y = 0; y < sc.n_settings; ++y)
    for (int b = 0; b < sc.n_outcomes; ++b) syms.push_back(meas_sym(b, y));
  for (int n = 0; n <= sc.n_trunc; ++n) syms.push_back(sigma_sym(n));
  return syms;
}

std::vector<Word> generate_basis(const std::vector<Sym>& syms, int k) {
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> out, frontier;
  seen.insert({});
  out.push_back({});
  frontier.push_back({});
  for (int len = 1; len <= k; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (Sym s : syms) {
        Word e = w;
        e.push_back(s);
        auto c = canonicalize(std::move(e));
        if (c && int(c->size()) == len && seen.insert(*c).second) {
          out.push_back(*c);
          next.push_back(std::move(*c));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

std::vector<Word> expand_patterns(const Scenario& sc,
                                  const std::vector<std::string>& patterns) {
  std::vector<std::vector<Sym>> all(3);
  for (int x = 0; x < sc.n_states; ++x) all[0].push_back(rho_sym(x));
  for (int y = 0; y < sc.n_settings; ++y)
    for (int b = 0; b < sc.n_outcomes; ++b) all[1].push_back(meas_sym(b, y));
  for (int n = 0; n <= sc.n_trunc; ++n) all[2].push_back(sigma_sym(n));

  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> out;
  for (const std::string& pat : patterns) {
    // One candidate list per slot; a digit suffix restricts the family index
    // (state for r, setting for M, photon number for s).
    std::vector<std::vector<Sym>> fam;
    if (pat != "1") {
      for (std::size_t p = 0; p < pat.size();) {
        int f;
        switch (pat[p]) {
          case 'r': f = 0; break;
          case 'M': f = 1; break;
          case 's': f = 2; break;
          default: throw std::invalid_argument("bad pattern: " + pat);
        }
        ++p;
        int fixed = -1;
        if (p < pat.size() && std::isdigit(static_cast<unsigned char>(pat[p]))) {
          fixed = 0;
          while (p < pat.size() && std::isdigit(static_cast<unsigned char>(pat[p])))
            fixed = fixed * 10 + (pat[p++] - '0');
        }
        std::vector<Sym> cand;
        for (Sym s : all[f]) {
          int idx = f == 1 ? sym_lo(s) : sym_hi(s);
          if (fixed < 0 || idx == fixed) cand.push_back(s);
        }
        fam.push_back(std::move(cand));
      }
    }
    if (std::any_of(fam.begin(), fam.end(),
                    [](const std::vector<Sym>& c) { return c.empty(); }))
      continue;
    // odometer over index choices per slot
    std::vector<std::size_t> idx(fam.size(), 0);
    while (true) {
      Word w;
      for (std::size_t i = 0; i < fam.size(); ++i) w.push_back(fam[i][idx[i]]);
      if (auto c = canonicalize(std::move(w)); c && seen.insert(*c).second)
        out.push_back(std::move(*c));
      std::size_t i = 0;
      for (; i < fam.size(); ++i) {
        if (++idx[i] < fam[i].size()) break;
        idx[i] = 0;
      }
      if (i == fam.size()) break;
    }
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

std::vector<Word> merge_basis(std::vector<Word> a, const std::vector<Word>& b) {
  std::unordered_set<Word, WordHash> seen(a.begin(), a.end());
  for (const Word& w : b)
    if (seen.insert(w).second) a.push_back(w);
  std::sort(a.begin(), a.end(), word_less);
  return a;
}

}  // namespace pncert
