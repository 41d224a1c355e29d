#include "pncert/opalg.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace pncert {

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (Sym s : w) {
    for (int i = 0; i < 4; ++i) {
      h ^= (s >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return std::size_t(h);
}

std::optional<Word> canonicalize(Word w) {
  Word zs, out;
  zs.reserve(w.size());
  out.reserve(w.size());
  for (Sym s : w) {
    if (sym_kind(s) == Kind::Aux) {
      zs.push_back(s);
      continue;
    }
    if (!out.empty()) {
      Sym t = out.back();
      Kind kt = sym_kind(t), ks = sym_kind(s);
      if (kt == Kind::Meas && ks == Kind::Meas && sym_lo(t) == sym_lo(s)) {
        if (sym_hi(t) == sym_hi(s)) continue;  // projector^2 = projector
        return std::nullopt;                   // orthogonal outcomes
      }
      if (kt == Kind::Sigma && ks == Kind::Sigma) {
        if (sym_hi(t) == sym_hi(s)) continue;
        return std::nullopt;
      }
    }
    out.push_back(s);
  }
  std::sort(zs.begin(), zs.end(), [](Sym a, Sym b) {
    return std::pair(sym_lo(a), sym_hi(a)) < std::pair(sym_lo(b), sym_hi(b));
  });
  zs.insert(zs.end(), out.begin(), out.end());
  return zs;
}

std::optional<Word> adjoint(const Word& w) {
  Word r(w.rbegin(), w.rend());
  return canonicalize(std::move(r));
}

std::optional<Word> product(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return canonicalize(std::move(w));
}

std::optional<Word> trace_class(const Word& w) {
  auto cw = canonicalize(w);
  if (!cw) return std::nullopt;
  std::size_t nz = 0;
  while (nz < cw->size() && sym_kind((*cw)[nz]) == Kind::Aux) ++nz;
  if (nz == cw->size()) return cw;  // pure Z block (or identity)

  Word zs(cw->begin(), cw->begin() + nz);
  Word rest(cw->begin() + nz, cw->end());
  Word best;
  bool have = false;
  Word cand = rest;
  for (int rev = 0; rev < 2; ++rev) {
    if (rev) std::reverse(cand.begin(), cand.end());
    for (std::size_t r = 0; r < cand.size(); ++r) {
      Word rot = zs;
      rot.insert(rot.end(), cand.begin() + r, cand.end());
      rot.insert(rot.end(), cand.begin(), cand.begin() + r);
      auto c = canonicalize(std::move(rot));
      if (!c) return std::nullopt;  // one vanishing rotation kills the class
      if (!have || word_less(*c, best)) {
        best = std::move(*c);
        have = true;
      }
    }
  }
  return best;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '*';
    Sym y = w[i];
    switch (sym_kind(y)) {
      case Kind::Rho: s += 'r'; s += std::to_string(sym_hi(y)); break;
      case Kind::Sigma: s += 's'; s += std::to_string(sym_hi(y)); break;
      case Kind::Meas:
        s += 'M';
        s += std::to_string(sym_hi(y));
        s += '|';
        s += std::to_string(sym_lo(y));
        break;
      case Kind::Aux:
        s += 'Z';
        s += std::to_string(sym_hi(y));
        s += ',';
        s += std::to_string(sym_lo(y));
        break;
    }
  }
  return s;
}

std::string format_mono(const std::optional<Word>& m) {
  return m ? format_word(*m) : std::string("0");
}

namespace {

int parse_int(std::string_view s, std::size_t& pos) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
  if (ec != std::errc() || p == s.data() + pos)
    throw std::invalid_argument("bad monomial: " + std::string(s));
  pos = std::size_t(p - s.data());
  return v;
}

}  // namespace

std::optional<Word> parse_mono(std::string_view s) {
  if (s == "0") return std::nullopt;
  if (s == "1") return Word{};
  Word w;
  std::size_t pos = 0;
  while (pos < s.size()) {
    char c = s[pos++];
    switch (c) {
      case 'r': w.push_back(rho_sym(parse_int(s, pos))); break;
      case 's': w.push_back(sigma_sym(parse_int(s, pos))); break;
      case 'M': {
        int b = parse_int(s, pos);
        if (pos >= s.size() || s[pos] != '|')
          throw std::invalid_argument("bad monomial: " + std::string(s));
        ++pos;
        w.push_back(meas_sym(b, parse_int(s, pos)));
        break;
      }
      case 'Z': {
        int b = parse_int(s, pos);
        if (pos >= s.size() || s[pos] != ',')
          throw std::invalid_argument("bad monomial: " + std::string(s));
        ++pos;
        w.push_back(aux_sym(b, parse_int(s, pos)));
        break;
      }
      default:
        throw std::invalid_argument("bad monomial: " + std::string(s));
    }
    if (pos < s.size()) {
      if (s[pos] != '*') throw std::invalid_argument("bad monomial: " + std::string(s));
      ++pos;
      if (pos == s.size()) throw std::invalid_argument("bad monomial: " + std::string(s));
    }
  }
  return canonicalize(std::move(w));  // may legitimately be zero
}

}  // namespace pncert
