#pragma once

// Finite rational combinations of words over an ordered generator type, and a
// pair-rewriting engine that drives such a combination to a normal form.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clbs/rational.hpp"

namespace clbs {

/// Length first, then lexicographic.
struct ShortLex {
  template <class Gen>
  bool operator()(const std::vector<Gen>& a, const std::vector<Gen>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

template <class Gen>
class LinearCombination {
 public:
  using Word = std::vector<Gen>;
  using Terms = std::map<Word, Rational, ShortLex>;

  LinearCombination() = default;
  explicit LinearCombination(Word w, Rational c = 1) { add(std::move(w), c); }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  void add(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    if (w.empty()) throw std::invalid_argument("empty word in combination");
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LinearCombination& operator+=(const LinearCombination& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  LinearCombination& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [w, c] : terms_) c *= s;
    }
    return *this;
  }

  friend LinearCombination operator+(LinearCombination a,
                                     const LinearCombination& b) {
    return a += b;
  }
  friend LinearCombination operator-(LinearCombination a,
                                     const LinearCombination& b) {
    return a -= b;
  }
  friend LinearCombination operator*(const Rational& s, LinearCombination a) {
    return a *= s;
  }

  /// Bilinear concatenation of words; no relations are applied.
  friend LinearCombination operator*(const LinearCombination& a,
                                     const LinearCombination& b) {
    LinearCombination out;
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add(w, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const LinearCombination&,
                         const LinearCombination&) = default;

 private:
  Terms terms_;
};

class RewriteBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Repeatedly rewrites the leftmost adjacent pair (a, b) for which `rule`
/// returns a replacement combination, until no rule fires anywhere. Every
/// replacement word must be non-empty, and `measure` must strictly decrease
/// from each rewritten word to each word it produces; a violation throws
/// std::logic_error.
template <class Gen, class Rule, class Measure>
LinearCombination<Gen> rewrite_to_normal_form(const LinearCombination<Gen>& x,
                                              Rule&& rule, Measure&& measure,
                                              std::size_t step_budget = 1'000'000) {
  using Word = std::vector<Gen>;
  LinearCombination<Gen> result;
  std::vector<std::pair<Word, Rational>> work(x.terms().begin(),
                                              x.terms().end());
  std::size_t steps = 0;
  while (!work.empty()) {
    auto [word, coeff] = std::move(work.back());
    work.pop_back();
    bool fired = false;
    for (std::size_t i = 0; i + 1 < word.size() && !fired; ++i) {
      std::optional<LinearCombination<Gen>> repl = rule(word[i], word[i + 1]);
      if (!repl) continue;
      fired = true;
      if (++steps > step_budget) {
        throw RewriteBudgetExceeded("rewrite step budget exceeded");
      }
      const auto before = measure(word);
      for (const auto& [piece, c] : repl->terms()) {
        Word next(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
        next.insert(next.end(), piece.begin(), piece.end());
        next.insert(next.end(), word.begin() + static_cast<std::ptrdiff_t>(i + 2),
                    word.end());
        if (!(measure(next) < before)) {
          throw std::logic_error("rewrite rule did not decrease the measure");
        }
        work.emplace_back(std::move(next), coeff * c);
      }
    }
    if (!fired) result.add(word, coeff);
  }
  return result;
}

}  // namespace clbs
