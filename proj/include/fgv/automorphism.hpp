// Basic Nielsen/invert moves and general free-group automorphisms.
// Composition convention: in a product written left to right, the RIGHTMOST
// factor acts first, i.e. apply(compose(f,g), w) = apply(f, apply(g, w)).
#ifndef FGV_AUTOMORPHISM_HPP
#define FGV_AUTOMORPHISM_HPP

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stallings.hpp"
#include "word.hpp"

namespace fgv {

struct MoveDescriptor {
  enum class Kind { RightMult, LeftMult, Invert };
  Kind kind;
  int x;
  int y = -1;       // unused for Invert
  int exponent = 1; // +1 or -1; Invert is an involution, exponent ignored

  MoveDescriptor inverse() const {
    MoveDescriptor d = *this;
    if (kind != Kind::Invert) d.exponent = -d.exponent;
    return d;
  }

  std::string format(const Basis& b) const {
    std::ostringstream os;
    switch (kind) {
      case Kind::RightMult: os << "r(" << b.name(x) << "," << b.name(y) << ")"; break;
      case Kind::LeftMult: os << "l(" << b.name(x) << "," << b.name(y) << ")"; break;
      case Kind::Invert: os << "i(" << b.name(x) << ")"; break;
    }
    if (kind != Kind::Invert && exponent < 0) os << "^-1";
    return os.str();
  }

  static MoveDescriptor parse(const std::string& text, const Basis& b) {
    std::string s = text;
    int exp = 1;
    if (s.size() >= 3 && s.substr(s.size() - 3) == "^-1") {
      exp = -1;
      s = s.substr(0, s.size() - 3);
    }
    if (s.size() < 4 || s.back() != ')' || s[1] != '(')
      throw std::invalid_argument("bad move syntax: " + text);
    char k = s[0];
    std::string inner = s.substr(2, s.size() - 3);
    auto comma = inner.find(',');
    MoveDescriptor d;
    d.exponent = exp;
    if (k == 'i') {
      if (comma != std::string::npos)
        throw std::invalid_argument("i() takes one letter: " + text);
      d.kind = Kind::Invert;
      d.x = b.index(inner);
      return d;
    }
    if (comma == std::string::npos)
      throw std::invalid_argument("move needs two letters: " + text);
    d.kind = (k == 'r') ? Kind::RightMult
             : (k == 'l') ? Kind::LeftMult
                          : throw std::invalid_argument("unknown move kind: " + text);
    d.x = b.index(inner.substr(0, comma));
    d.y = b.index(inner.substr(comma + 1));
    if (d.x == d.y) throw std::invalid_argument("move letters must differ: " + text);
    return d;
  }

  friend bool operator==(const MoveDescriptor&, const MoveDescriptor&) = default;
};

class Automorphism {
 public:
  Automorphism() = default;

  // general automorphism; invertibility checked eagerly unless skipped
  Automorphism(std::vector<Word> images, bool check = true) : images_(std::move(images)) {
    if (check && !is_invertible())
      throw std::invalid_argument("images do not define an automorphism");
  }

  static Automorphism identity(int rank) {
    std::vector<Word> im;
    im.reserve(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) im.push_back(Word::letter(i));
    return Automorphism(std::move(im), false);
  }

  static Automorphism basic(const MoveDescriptor& d, int rank) {
    if (d.x < 0 || d.x >= rank || (d.kind != MoveDescriptor::Kind::Invert &&
                                   (d.y < 0 || d.y >= rank || d.x == d.y)))
      throw std::invalid_argument("move letters invalid for rank");
    Automorphism a = identity(rank);
    Word x = Word::letter(d.x);
    switch (d.kind) {
      case MoveDescriptor::Kind::RightMult:
        a.images_[static_cast<std::size_t>(d.x)] = x * Word::letter(d.y, d.exponent);
        break;
      case MoveDescriptor::Kind::LeftMult:
        a.images_[static_cast<std::size_t>(d.x)] = Word::letter(d.y, d.exponent) * x;
        break;
      case MoveDescriptor::Kind::Invert:
        a.images_[static_cast<std::size_t>(d.x)] = Word::letter(d.x, -1);
        break;
    }
    return a;
  }

  int rank() const { return static_cast<int>(images_.size()); }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int i) const { return images_[static_cast<std::size_t>(i)]; }

  Word apply(const Word& w) const {
    std::vector<Letter> raw;
    for (const Letter& l : w) {
      const Word& im = images_[static_cast<std::size_t>(l.gen)];
      if (l.sign > 0)
        raw.insert(raw.end(), im.begin(), im.end());
      else
        for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it)
          raw.push_back(it->inverse());
    }
    return Word(std::move(raw));
  }

  // rightmost-first: (f*g)(w) = f(g(w))
  friend Automorphism compose(const Automorphism& f, const Automorphism& g) {
    if (f.rank() != g.rank()) throw std::invalid_argument("compose: rank mismatch");
    std::vector<Word> im;
    im.reserve(g.images_.size());
    for (const Word& w : g.images_) im.push_back(f.apply(w));
    return Automorphism(std::move(im), false);
  }

  bool is_identity() const {
    for (int i = 0; i < rank(); ++i)
      if (images_[static_cast<std::size_t>(i)] != Word::letter(i)) return false;
    return true;
  }

  // folded graph of the images must accept every basis letter
  bool is_invertible() const {
    std::vector<Word> gens;
    for (const Word& w : images_)
      if (!w.empty()) gens.push_back(w);
    if (gens.empty()) return false;
    SubgroupGraph g = from_generators(gens, rank());
    for (int i = 0; i < rank(); ++i)
      if (!g.accepts(Word::letter(i))) return false;
    return true;
  }

  std::set<int> fixed_letters() const {
    std::set<int> out;
    for (int i = 0; i < rank(); ++i)
      if (images_[static_cast<std::size_t>(i)] == Word::letter(i)) out.insert(i);
    return out;
  }

  std::set<int> letters_used(int i) const {
    std::set<int> out;
    for (const Letter& l : images_[static_cast<std::size_t>(i)]) out.insert(l.gen);
    return out;
  }

  Automorphism inverse() const;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;

 private:
  std::vector<Word> images_;
};

inline Automorphism make_basic_move(const MoveDescriptor& d, int rank) {
  return Automorphism::basic(d, rank);
}

inline Automorphism compose_all(const std::vector<Automorphism>& fs, int rank) {
  Automorphism acc = Automorphism::identity(rank);
  for (const Automorphism& f : fs) acc = compose(acc, f);
  return acc;
}

namespace detail {

// permutation-with-signs tuple -> direct inverse
inline std::optional<Automorphism> invert_letter_tuple(const std::vector<Word>& w) {
  int n = static_cast<int>(w.size());
  std::vector<Word> inv(static_cast<std::size_t>(n));
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (w[static_cast<std::size_t>(i)].size() != 1) return std::nullopt;
    Letter l = w[static_cast<std::size_t>(i)][0];
    if (hit[static_cast<std::size_t>(l.gen)]) return std::nullopt;
    hit[static_cast<std::size_t>(l.gen)] = true;
    inv[static_cast<std::size_t>(l.gen)] = Word::letter(i, l.sign);
  }
  return Automorphism(inv, false);
}

inline std::size_t tuple_length(const std::vector<Word>& w) {
  std::size_t s = 0;
  for (const Word& x : w) s += x.size();
  return s;
}

inline Word apply_elementary(const std::vector<Word>& w, const MoveDescriptor& d) {
  const Word& wx = w[static_cast<std::size_t>(d.x)];
  Word wy = w[static_cast<std::size_t>(d.y)];
  if (d.exponent < 0) wy = wy.inverse();
  return d.kind == MoveDescriptor::Kind::RightMult ? wx * wy : wy * wx;
}

}  // namespace detail

// Inversion by Nielsen reduction of the image tuple with move recording.
// Replacing w_x by w_x * w_y^s is right-composition with the basic move
// x -> x*y^s; once the tuple is a signed letter permutation p we have
// f * m_1 * ... * m_k = p, so f^{-1} = m_1 * ... * m_k * p^{-1}.
inline Automorphism Automorphism::inverse() const {
  int n = rank();
  std::vector<Word> w = images_;
  std::vector<MoveDescriptor> moves;

  auto try_finish = [&](const std::vector<Word>& tuple) -> std::optional<Automorphism> {
    auto p_inv = detail::invert_letter_tuple(tuple);
    if (!p_inv) return std::nullopt;
    Automorphism acc = *p_inv;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it)
      acc = compose(Automorphism::basic(*it, n), acc);
    return acc;
  };

  // greedy strictly-decreasing phase
  while (true) {
    if (auto done = try_finish(w)) return *done;
    MoveDescriptor best{};
    Word best_word;
    long best_gain = 0;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        for (int exp : {+1, -1})
          for (auto kind : {MoveDescriptor::Kind::RightMult, MoveDescriptor::Kind::LeftMult}) {
            MoveDescriptor d{kind, x, y, exp};
            Word cand = detail::apply_elementary(w, d);
            long gain = static_cast<long>(w[static_cast<std::size_t>(x)].size()) -
                        static_cast<long>(cand.size());
            if (gain > best_gain) {
              best_gain = gain;
              best = d;
              best_word = cand;
            }
          }
      }
    if (best_gain <= 0) break;
    w[static_cast<std::size_t>(best.x)] = best_word;
    moves.push_back(best);
  }

  // plateau phase: shortest-first search over length-non-increasing moves
  struct State {
    std::vector<Word> tuple;
    std::vector<MoveDescriptor> path;
  };
  auto key_of = [](const std::vector<Word>& t) {
    std::string k;
    for (const Word& x : t) {
      for (const Letter& l : x) {
        k += static_cast<char>('A' + l.gen);
        k += l.sign > 0 ? '+' : '-';
      }
      k += '|';
    }
    return k;
  };
  auto cmp = [](const std::pair<std::size_t, std::size_t>& a,
                const std::pair<std::size_t, std::size_t>& b) { return a.first > b.first; };
  std::vector<State> pool;
  std::priority_queue<std::pair<std::size_t, std::size_t>,
                      std::vector<std::pair<std::size_t, std::size_t>>, decltype(cmp)>
      pq(cmp);
  std::set<std::string> visited;
  pool.push_back({w, {}});
  pq.push({detail::tuple_length(w), 0});
  visited.insert(key_of(w));
  std::size_t expanded = 0;
  while (!pq.empty() && expanded < 200000) {
    std::size_t idx = pq.top().second;
    pq.pop();
    ++expanded;
    State st = pool[idx];
    if (auto p_inv = detail::invert_letter_tuple(st.tuple)) {
      Automorphism acc = *p_inv;
      std::vector<MoveDescriptor> all = moves;
      all.insert(all.end(), st.path.begin(), st.path.end());
      for (auto it = all.rbegin(); it != all.rend(); ++it)
        acc = compose(Automorphism::basic(*it, n), acc);
      return acc;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        for (int exp : {+1, -1})
          for (auto kind : {MoveDescriptor::Kind::RightMult, MoveDescriptor::Kind::LeftMult}) {
            MoveDescriptor d{kind, x, y, exp};
            Word cand = detail::apply_elementary(st.tuple, d);
            if (cand.size() > st.tuple[static_cast<std::size_t>(x)].size()) continue;
            if (cand.empty()) continue;  // degenerate tuple cannot be a basis
            std::vector<Word> nt = st.tuple;
            nt[static_cast<std::size_t>(x)] = cand;
            std::string k = key_of(nt);
            if (!visited.insert(k).second) continue;
            std::vector<MoveDescriptor> np = st.path;
            np.push_back(d);
            pool.push_back({std::move(nt), std::move(np)});
            pq.push({detail::tuple_length(pool.back().tuple), pool.size() - 1});
          }
      }
  }
  throw std::runtime_error("inverse: Nielsen reduction search exhausted (not invertible?)");
}

}  // namespace fgv

#endif
