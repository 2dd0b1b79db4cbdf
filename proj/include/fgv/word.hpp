// Free words over a signed alphabet: letters, free and cyclic reduction,
// parsing/formatting against a named basis.
#ifndef FGV_WORD_HPP
#define FGV_WORD_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgv {

struct Letter {
  int gen;   // generator index, 0-based
  int sign;  // +1 or -1

  Letter inverse() const { return {gen, -sign}; }
  // signed code in [0, 2n): positive letters even, inverses odd
  int code() const { return gen * 2 + (sign < 0 ? 1 : 0); }
  static Letter from_code(int c) { return {c / 2, (c % 2) ? -1 : +1}; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter pos(int gen) { return {gen, +1}; }
inline Letter neg(int gen) { return {gen, -1}; }

// A freely reduced word. Construction always reduces.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> raw) : ls_(reduce_raw(std::move(raw))) {}
  static Word letter(Letter l) { return Word(std::vector<Letter>{l}); }
  static Word letter(int gen, int sign = +1) { return letter(Letter{gen, sign}); }

  std::size_t size() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }
  const Letter& operator[](std::size_t i) const { return ls_[i]; }
  auto begin() const { return ls_.begin(); }
  auto end() const { return ls_.end(); }
  const std::vector<Letter>& letters() const { return ls_; }

  Word inverse() const {
    std::vector<Letter> out;
    out.reserve(ls_.size());
    for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) out.push_back(it->inverse());
    Word w;
    w.ls_ = std::move(out);  // inverse of reduced word is reduced
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> raw = a.ls_;
    raw.insert(raw.end(), b.ls_.begin(), b.ls_.end());
    return Word(std::move(raw));
  }

  bool is_cyclically_reduced() const {
    return ls_.size() < 2 || !(ls_.front() == ls_.back().inverse());
  }

  // w = conjugator * core * conjugator^-1, core cyclically reduced
  std::pair<Word, Word> cyclic_reduce() const {
    std::size_t i = 0, j = ls_.size();
    while (j - i >= 2 && ls_[i] == ls_[j - 1].inverse()) { ++i; --j; }
    Word core, conj;
    core.ls_.assign(ls_.begin() + static_cast<long>(i), ls_.begin() + static_cast<long>(j));
    conj.ls_.assign(ls_.begin(), ls_.begin() + static_cast<long>(i));
    return {core, conj};
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  static std::vector<Letter> reduce_raw(std::vector<Letter> raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (const Letter& l : raw) {
      if (!out.empty() && out.back() == l.inverse())
        out.pop_back();
      else
        out.push_back(l);
    }
    return out;
  }

  std::vector<Letter> ls_;
};

inline Word reduce(const std::vector<Letter>& raw) { return Word(raw); }

// Named alphabet. Grammar: a<k>, ha<k> (hatted), n; inverse marked by a
// trailing apostrophe. The empty word prints as "1".
class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<std::string> names) : names_(std::move(names)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
      if (!index_.emplace(names_[i], i).second)
        throw std::invalid_argument("duplicate letter name: " + names_[i]);
    }
  }

  static Basis plain(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    return Basis(std::move(names));
  }
  // ha1, a1, ..., hag, ag  (rank 2g)
  static Basis orientable(int g) {
    std::vector<std::string> names;
    for (int i = 1; i <= g; ++i) {
      names.push_back("ha" + std::to_string(i));
      names.push_back("a" + std::to_string(i));
    }
    return Basis(std::move(names));
  }
  // n, ha1, a1, ..., hag, ag  (rank 2g+1)
  static Basis nonorientable(int g) {
    std::vector<std::string> names{"n"};
    for (int i = 1; i <= g; ++i) {
      names.push_back("ha" + std::to_string(i));
      names.push_back("a" + std::to_string(i));
    }
    return Basis(std::move(names));
  }

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(int gen) const { return names_.at(static_cast<std::size_t>(gen)); }

  int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown letter name: " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }

  std::string format_letter(Letter l) const {
    std::string s = name(l.gen);
    if (l.sign < 0) s += '\'';
    return s;
  }

  std::string format(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (const Letter& l : w) {
      if (!s.empty()) s += ' ';
      s += format_letter(l);
    }
    return s;
  }

  Letter parse_letter(const std::string& tok) const {
    std::string t = tok;
    int sign = +1;
    if (!t.empty() && t.back() == '\'') {
      sign = -1;
      t.pop_back();
    }
    return {index(t), sign};
  }

  Word parse(const std::string& text) const {
    std::vector<Letter> raw;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i >= text.size()) break;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      std::string tok = text.substr(i, j - i);
      if (tok == "1") {
        if (!raw.empty() || text.find_first_not_of(" \t\n\r", j) != std::string::npos)
          throw std::invalid_argument("'1' (empty word) must stand alone, at position " +
                                      std::to_string(i));
      } else {
        try {
          raw.push_back(parse_letter(tok));
        } catch (const std::invalid_argument&) {
          throw std::invalid_argument("bad letter token '" + tok + "' at position " +
                                      std::to_string(i));
        }
      }
      i = j;
    }
    return Word(std::move(raw));
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

}  // namespace fgv

#endif
