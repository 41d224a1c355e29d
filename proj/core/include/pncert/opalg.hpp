#pragma once
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pncert {

// Generator symbol, packed as kind<<24 | hi<<12 | lo so that integer compare
// equals lexicographic compare on (kind, hi, lo).
//   Meas  M_{b|y} : hi = outcome b, lo = setting y
//   Rho   r_x     : hi = state index x
//   Sigma s_n     : hi = photon number n
//   Aux   Z_{b,i} : hi = outcome b, lo = node index i
using Sym = std::uint32_t;

enum class Kind : std::uint8_t { Meas = 0, Rho = 1, Sigma = 2, Aux = 3 };

constexpr Sym pack(Kind k, int hi, int lo = 0) {
  return (Sym(std::uint8_t(k)) << 24) | (Sym(hi) << 12) | Sym(lo);
}
constexpr Sym rho_sym(int x) { return pack(Kind::Rho, x); }
constexpr Sym meas_sym(int b, int y) { return pack(Kind::Meas, b, y); }
constexpr Sym sigma_sym(int n) { return pack(Kind::Sigma, n); }
constexpr Sym aux_sym(int b, int i) { return pack(Kind::Aux, b, i); }

constexpr Kind sym_kind(Sym s) { return Kind(s >> 24); }
constexpr int sym_hi(Sym s) { return int((s >> 12) & 0xfff); }
constexpr int sym_lo(Sym s) { return int(s & 0xfff); }

// A word is a product of generators; the empty word is the identity.
using Word = std::vector<Sym>;

// Graded-lex order: shorter first, then lexicographic.
bool word_less(const Word& a, const Word& b);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// Normal form under the generator relations:
//  - Z's commute with everything: moved to a front block sorted by (node, outcome);
//  - M_{b|y} M_{b'|y} = [b == b'] M_{b|y}  (same setting only);
//  - s_n s_{n'}       = [n == n'] s_n;
//  - r_x has no power relation (states need not be projectors).
// nullopt means the word is identically zero.
std::optional<Word> canonicalize(Word w);

// Hermitian conjugate: generators are self-adjoint, so reverse and renormalize.
std::optional<Word> adjoint(const Word& w);

// Concatenate then canonicalize.
std::optional<Word> product(const Word& a, const Word& b);

// Canonical representative of the trace class of w: minimum over cyclic
// rotations and reversal of the non-Z part (the Z block is central), each
// candidate brought to normal form.  If any rotation vanishes, the trace of
// every word in the class is zero and nullopt is returned.
std::optional<Word> trace_class(const Word& w);

// Text form: "1" identity, factors joined by '*':
//   r<x>, M<b>|<y>, s<n>, Z<b>,<i>      e.g.  "r1*M1|1*s0",  "Z1,2*r0"
std::string format_word(const Word& w);
// Same, with "0" for the zero monomial.
std::string format_mono(const std::optional<Word>& m);
// Inverse of format_mono; throws std::invalid_argument on malformed input.
std::optional<Word> parse_mono(std::string_view s);

}  // namespace pncert
