#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace freelocus {

/// One letter of the free alphabet: x_j (index j >= 1) or the slack letter y
/// (index 0), optionally starred.
struct Letter {
  std::uint32_t index = 1;
  bool star = false;

  bool operator==(const Letter& o) const { return index == o.index && star == o.star; }
  bool operator!=(const Letter& o) const { return !(*this == o); }
  bool operator<(const Letter& o) const {
    if (index != o.index) return index < o.index;
    return star < o.star;
  }
  Letter adjoint() const { return Letter{index, !star}; }

  std::string str() const {
    std::string s = index == 0 ? "y" : "x" + std::to_string(index);
    if (star) s += "'";
    return s;
  }
};

/// Word in the free monoid; empty = multiplicative identity.
/// (uv)* = v*u*; length is additive under concatenation.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : l_(std::move(letters)) {}
  static Word single(Letter l) { return Word({l}); }

  std::size_t length() const { return l_.size(); }
  bool empty() const { return l_.empty(); }
  const std::vector<Letter>& letters() const { return l_; }

  Word concat(const Word& o) const {
    std::vector<Letter> r = l_;
    r.insert(r.end(), o.l_.begin(), o.l_.end());
    return Word(std::move(r));
  }

  Word adjoint() const {
    std::vector<Letter> r(l_.rbegin(), l_.rend());
    for (Letter& x : r) x = x.adjoint();
    return Word(std::move(r));
  }

  bool operator==(const Word& o) const { return l_ == o.l_; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  std::string str() const {
    if (l_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < l_.size(); ++i) {
      if (i) s += " ";
      s += l_[i].str();
    }
    return s;
  }

 private:
  std::vector<Letter> l_;
};

/// Graded lexicographic word order: length first, then (index, star) per
/// letter.  Canonical for printing and for deterministic map iteration.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    return std::lexicographical_compare(a.letters().begin(), a.letters().end(),
                                        b.letters().begin(), b.letters().end());
  }
};

enum class Ctx { Analytic, Involutive, Slack };

struct AlphabetMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Variable regime of a polynomial: x only, (x, x*), or (x, x*, y, y*).
struct Alphabet {
  std::uint32_t g = 0;  // number of x-variables
  Ctx ctx = Ctx::Analytic;

  bool operator==(const Alphabet& o) const { return g == o.g && ctx == o.ctx; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

  bool admits(const Letter& l) const {
    if (l.index == 0) return ctx == Ctx::Slack;
    if (l.index > g) return false;
    if (l.star) return ctx != Ctx::Analytic;
    return true;
  }
  bool admits(const Word& w) const {
    for (const Letter& l : w.letters())
      if (!admits(l)) return false;
    return true;
  }

  /// Canonical letter list: x_1..x_g, then x_1*..x_g*, then y, y*.
  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (std::uint32_t j = 1; j <= g; ++j) out.push_back({j, false});
    if (ctx != Ctx::Analytic)
      for (std::uint32_t j = 1; j <= g; ++j) out.push_back({j, true});
    if (ctx == Ctx::Slack) {
      out.push_back({0, false});
      out.push_back({0, true});
    }
    return out;
  }
  std::size_t letter_count() const {
    switch (ctx) {
      case Ctx::Analytic: return g;
      case Ctx::Involutive: return 2ull * g;
      case Ctx::Slack: return 2ull * g + 2;
    }
    return 0;
  }
  std::size_t flat_index(const Letter& l) const {
    if (l.index == 0) return 2ull * g + (l.star ? 1 : 0);
    return (l.star ? g : 0) + (l.index - 1);
  }

  static Alphabet join(const Alphabet& a, const Alphabet& b) {
    Alphabet r;
    r.g = std::max(a.g, b.g);
    r.ctx = static_cast<Ctx>(std::max(static_cast<int>(a.ctx), static_cast<int>(b.ctx)));
    return r;
  }
};

inline Alphabet analytic_alphabet(std::uint32_t g) { return {g, Ctx::Analytic}; }
inline Alphabet involutive_alphabet(std::uint32_t g) { return {g, Ctx::Involutive}; }
inline Alphabet slack_alphabet(std::uint32_t g) { return {g, Ctx::Slack}; }

}  // namespace freelocus
