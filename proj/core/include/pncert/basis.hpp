#pragma once
#include <string>
#include <vector>

#include "pncert/opalg.hpp"
#include "pncert/scenarios.hpp"

namespace pncert {

// All non-Aux generators of a scenario: states, measurement elements,
// number projectors (graded-lex order of construction).
std::vector<Sym> scenario_symbols(const Scenario& sc);

// Canonical words of length <= k over `syms`, sorted graded-lex.
// The empty word (identity) is always included.
std::vector<Word> generate_basis(const std::vector<Sym>& syms, int k);

// Expand monomial patterns over the scenario's generator families:
// each pattern is a string of tokens 'r', 'M', 's' (or just "1" for the
// identity), instantiated with all index combinations and canonicalized;
// words that vanish are dropped.  A digit suffix pins the family index
// (state for r, setting for M, photon number for s).
// E.g. "rM" -> every r_x M_{b|y};  "rMs0" -> every r_x M_{b|y} s_0.
std::vector<Word> expand_patterns(const Scenario& sc,
                                  const std::vector<std::string>& patterns);

// Union of words, deduplicated and sorted graded-lex.
std::vector<Word> merge_basis(std::vector<Word> a, const std::vector<Word>& b);

}  // namespace pncert
