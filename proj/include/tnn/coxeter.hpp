#pragma once

// Combinatorics of the symmetric group S_n viewed as the Coxeter group of
// type A_{n-1}: lengths, reduced words, Bruhat order and intervals.
//
// Permutations are stored 0-based internally (image[i] = w(i+1) - 1). The
// text form is the usual 1-based one-line notation "2,1,3". Generator
// indices of words are 1-based (s_1 .. s_{n-1}) everywhere.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tnn/error.hpp"

namespace tnn {

/// Largest rank accepted by operations that enumerate the whole group.
inline constexpr int kMaxIntervalRank = 7;
/// Largest rank accepted by all_reduced_words.
inline constexpr int kMaxAllWordsRank = 4;

class Permutation {
 public:
  Permutation() = default;

  /// From a 0-based image vector; throws Parse unless it is a bijection.
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
      if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v])
        throw Error(Errc::Parse, "not a permutation: " + to_string_raw());
      seen[v] = true;
    }
    if (image_.empty()) throw Error(Errc::Parse, "empty permutation");
  }

  static Permutation identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  /// The longest element w_o: i -> n+1-i.
  static Permutation longest(int n) {
    std::vector<int> im(n);
    for (int i = 0; i < n; ++i) im[i] = n - 1 - i;
    return Permutation(std::move(im));
  }

  /// Simple transposition s_i swapping i and i+1 (1-based i in 1..n-1).
  static Permutation simple(int i, int n) {
    if (i < 1 || i > n - 1)
      throw Error(Errc::IndexOutOfRange, "generator s" + std::to_string(i) +
                                             " outside S_" + std::to_string(n));
    auto p = identity(n);
    std::swap(p.image_[i - 1], p.image_[i]);
    return p;
  }

  /// From 1-based one-line values, e.g. {2,1,3}.
  static Permutation from_one_line(const std::vector<int>& one_based) {
    std::vector<int> im(one_based.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = one_based[i] - 1;
    return Permutation(std::move(im));
  }

  int n() const { return static_cast<int>(image_.size()); }

  /// 0-based image of a 0-based point.
  int operator()(int i) const { return image_[i]; }

  const std::vector<int>& image() const { return image_; }

  std::vector<int> one_line() const {
    std::vector<int> out(image_);
    for (int& v : out) ++v;
    return out;
  }

  Permutation inverse() const {
    std::vector<int> inv(image_.size());
    for (int i = 0; i < n(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
  }

  /// Inversion count.
  int length() const {
    int len = 0;
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        if (image_[i] > image_[j]) ++len;
    return len;
  }

  bool is_identity() const {
    for (int i = 0; i < n(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  /// Composition of maps: (u * v)(i) = u(v(i)). Matches P_u P_v = P_{uv}.
  friend Permutation operator*(const Permutation& u, const Permutation& v) {
    if (u.n() != v.n()) throw Error(Errc::SizeMismatch, "compose: rank mismatch");
    std::vector<int> im(u.n());
    for (int i = 0; i < u.n(); ++i) im[i] = u.image_[v.image_[i]];
    return Permutation(std::move(im));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.image_ <=> b.image_;
  }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < n(); ++i) {
      if (i) s += ',';
      s += std::to_string(image_[i] + 1);
    }
    return s;
  }

  static Permutation parse(std::string_view text);

 private:
  std::string to_string_raw() const {
    std::string s;
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(image_[i] + 1);
    }
    return s;
  }

  std::vector<int> image_;
};

inline Permutation Permutation::parse(std::string_view text) {
  std::vector<int> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty() || tok.size() > 4 || !std::all_of(tok.begin(), tok.end(),
                                    [](char c) { return c >= '0' && c <= '9'; }))
      throw Error(Errc::Parse, "bad permutation token in \"" + std::string(text) + "\"");
    vals.push_back(std::stoi(std::string(tok)));
    pos = comma + 1;
  }
  return Permutation::from_one_line(vals);
}

inline int length(const Permutation& w) { return w.length(); }

/// All of S_n in lexicographic order of one-line notation.
inline std::vector<Permutation> all_permutations(int n) {
  if (n > kMaxIntervalRank)
    throw Error(Errc::RankTooLarge, "S_" + std::to_string(n) + " enumeration guard");
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

// ---------------------------------------------------------------- words

struct ReducedWord {
  std::vector<int> letters;  // 1-based generator indices
  Permutation target;

  std::size_t size() const { return letters.size(); }

  /// "s1.s2.s1"; the empty word prints as "e".
  std::string to_string() const {
    if (letters.empty()) return "e";
    std::string s;
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (k) s += '.';
      s += 's' + std::to_string(letters[k]);
    }
    return s;
  }
};

/// s_{a_1} * ... * s_{a_l} as a permutation of S_n.
inline Permutation word_product(const std::vector<int>& letters, int n) {
  auto w = Permutation::identity(n);
  for (int a : letters) w = w * Permutation::simple(a, n);
  return w;
}

/// Parses "s1.s2.s1" (or "e" / "" for the empty word) and checks reducedness.
inline ReducedWord parse_word(std::string_view text, int n) {
  std::vector<int> letters;
  if (!(text.empty() || text == "e")) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t dot = text.find('.', pos);
      if (dot == std::string_view::npos) dot = text.size();
      auto tok = text.substr(pos, dot - pos);
      if (tok.size() < 2 || tok.size() > 4 || tok[0] != 's' ||
          !std::all_of(tok.begin() + 1, tok.end(),
                       [](char c) { return c >= '0' && c <= '9'; }))
        throw Error(Errc::Parse, "bad word token in \"" + std::string(text) + "\"");
      letters.push_back(std::stoi(std::string(tok.substr(1))));
      pos = dot + 1;
    }
  }
  for (int a : letters)
    if (a < 1 || a > n - 1)
      throw Error(Errc::IndexOutOfRange, "letter s" + std::to_string(a) + " in S_" +
                                             std::to_string(n));
  auto target = word_product(letters, n);
  if (target.length() != static_cast<int>(letters.size()))
    throw Error(Errc::LengthMismatch, "word " + std::string(text) + " is not reduced");
  return {std::move(letters), std::move(target)};
}

/// Left descents: i (1-based) with l(s_i w) < l(w), i.e. w^{-1}(i) > w^{-1}(i+1).
inline std::vector<int> left_descents(const Permutation& w) {
  const auto inv = w.inverse();
  std::vector<int> out;
  for (int i = 0; i + 1 < w.n(); ++i)
    if (inv(i) > inv(i + 1)) out.push_back(i + 1);
  return out;
}

/// Canonical reduced word: repeatedly peel off the smallest left descent.
inline ReducedWord reduced_word(const Permutation& w) {
  std::vector<int> letters;
  auto rest = w;
  while (!rest.is_identity()) {
    const int i = left_descents(rest).front();
    letters.push_back(i);
    rest = Permutation::simple(i, w.n()) * rest;
  }
  return {std::move(letters), w};
}

namespace detail {
inline void collect_words(const Permutation& w, std::vector<int>& prefix,
                          std::set<std::vector<int>>& out) {
  if (w.is_identity()) {
    out.insert(prefix);
    return;
  }
  for (int i : left_descents(w)) {
    prefix.push_back(i);
    collect_words(Permutation::simple(i, w.n()) * w, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace detail

/// Every reduced word of w, sorted lexicographically. Guarded at n <= 4.
inline std::vector<ReducedWord> all_reduced_words(const Permutation& w) {
  if (w.n() > kMaxAllWordsRank)
    throw Error(Errc::RankTooLarge, "all_reduced_words guard is n <= " +
                                        std::to_string(kMaxAllWordsRank));
  std::set<std::vector<int>> words;
  std::vector<int> prefix;
  detail::collect_words(w, prefix, words);
  std::vector<ReducedWord> out;
  for (const auto& letters : words) out.push_back({letters, w});
  return out;
}

// ---------------------------------------------------------------- Bruhat

/// Bruhat order by rank-matrix dominance:
///   u <= v  iff  #{k <= i : u(k) <= j} >= #{k <= i : v(k) <= j} for all i, j.
inline bool bruhat_leq(const Permutation& u, const Permutation& v) {
  if (u.n() != v.n()) throw Error(Errc::SizeMismatch, "bruhat_leq: rank mismatch");
  const int n = u.n();
  std::vector<int> ru(n, 0), rv(n, 0);  // running column counts for rows <= i
  for (int i = 0; i < n; ++i) {
    int cu = 0, cv = 0;
    ++ru[u(i)];
    ++rv[v(i)];
    for (int j = 0; j < n; ++j) {
      cu += ru[j];
      cv += rv[j];
      if (cu < cv) return false;
    }
  }
  return true;
}

struct BruhatInterval {
  Permutation lower;
  Permutation upper;
  std::vector<Permutation> elements;  // sorted by (length, lex)

  std::size_t size() const { return elements.size(); }
  bool contains(const Permutation& w) const {
    return std::find(elements.begin(), elements.end(), w) != elements.end();
  }
};

/// [u, v] by filtering S_n; guarded at n <= 7.
inline BruhatInterval interval(const Permutation& u, const Permutation& v) {
  if (u.n() != v.n()) throw Error(Errc::SizeMismatch, "interval: rank mismatch");
  if (u.n() > kMaxIntervalRank)
    throw Error(Errc::RankTooLarge, "interval enumeration guard is n <= 7");
  if (!bruhat_leq(u, v))
    throw Error(Errc::NotComparable, u.to_string() + " is not below " + v.to_string());
  BruhatInterval out{u, v, {}};
  const int lu = u.length(), lv = v.length();
  for (auto& w : all_permutations(u.n())) {
    const int lw = w.length();
    if (lw < lu || lw > lv) continue;
    if (bruhat_leq(u, w) && bruhat_leq(w, v)) out.elements.push_back(std::move(w));
  }
  std::stable_sort(out.elements.begin(), out.elements.end(),
                   [](const Permutation& a, const Permutation& b) {
                     return a.length() < b.length();
                   });
  return out;
}

/// Moebius function of the Bruhat order via the defining recursion
/// mu(u,u) = 1, mu(u,w) = -sum_{u <= z < w} mu(u,z).
inline long mobius(const Permutation& u, const Permutation& v) {
  const auto iv = interval(u, v);
  std::map<Permutation, long> mu;
  for (const auto& w : iv.elements) {  // length order is a linear extension
    if (w == u) {
      mu[w] = 1;
      continue;
    }
    long s = 0;
    for (const auto& [z, m] : mu)
      if (z != w && bruhat_leq(z, w)) s += m;
    mu[w] = -s;
  }
  return mu.at(v);
}

/// sum_{w in [u,v]} (-1)^{l(w)}.
inline long verma_sum(const Permutation& u, const Permutation& v) {
  long s = 0;
  for (const auto& w : interval(u, v).elements) s += (w.length() % 2 == 0) ? 1 : -1;
  return s;
}

}  // namespace tnn
