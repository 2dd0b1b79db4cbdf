// Abelianization and exact integer-lattice membership via column Hermite
// normal form. Used for the H_1 homology arguments.
#ifndef FGV_ABELIAN_HPP
#define FGV_ABELIAN_HPP

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "word.hpp"

namespace fgv {

using AbelianVector = std::vector<long long>;

inline AbelianVector abelianize(const Word& w, int rank) {
  AbelianVector v(static_cast<std::size_t>(rank), 0);
  for (const Letter& l : w) v[static_cast<std::size_t>(l.gen)] += l.sign;
  return v;
}

// Integer lattice spanned by a list of vectors, kept in column HNF.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::vector<AbelianVector> basis, int dim)
      : dim_(dim), basis_(std::move(basis)) {
    for (const auto& v : basis_)
      if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("lattice vector dimension mismatch");
    hnf_ = column_hnf(basis_, dim_).first;
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(hnf_.size()); }
  const std::vector<AbelianVector>& basis_vectors() const { return basis_; }
  const std::vector<AbelianVector>& normal_form() const { return hnf_; }

  bool contains(AbelianVector v) const {
    if (static_cast<int>(v.size()) != dim_)
      throw std::invalid_argument("lattice query dimension mismatch");
    for (const auto& col : hnf_) {
      int r = pivot_row(col);
      if (v[static_cast<std::size_t>(r)] % col[static_cast<std::size_t>(r)] != 0) return false;
      long long q = v[static_cast<std::size_t>(r)] / col[static_cast<std::size_t>(r)];
      for (int i = 0; i < dim_; ++i) v[static_cast<std::size_t>(i)] -= q * col[static_cast<std::size_t>(i)];
    }
    for (long long x : v)
      if (x != 0) return false;
    return true;
  }

  // Lattice intersection: solve A x = B y over the integers via the kernel of
  // the stacked matrix [A | -B].
  static IntegerLattice intersection(const IntegerLattice& a, const IntegerLattice& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("lattice dimension mismatch");
    int k1 = static_cast<int>(a.hnf_.size());
    int k2 = static_cast<int>(b.hnf_.size());
    std::vector<AbelianVector> m;
    m.reserve(static_cast<std::size_t>(k1 + k2));
    for (const auto& c : a.hnf_) m.push_back(c);
    for (const auto& c : b.hnf_) {
      AbelianVector neg(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
      m.push_back(neg);
    }
    auto hu = column_hnf(m, a.dim_);
    const auto& u = hu.second;
    // kernel columns of m = transform columns of u whose image column vanished
    std::vector<AbelianVector> inter;
    for (std::size_t j = 0; j < u.size(); ++j) {
      bool zero_img = true;
      for (int r = 0; r < a.dim_; ++r) {
        long long s = 0;
        for (int c = 0; c < k1 + k2; ++c)
          s += m[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] *
               u[j][static_cast<std::size_t>(c)];
        if (s != 0) zero_img = false;
      }
      if (!zero_img) continue;
      // image under A of the x-part
      AbelianVector w(static_cast<std::size_t>(a.dim_), 0);
      for (int c = 0; c < k1; ++c)
        for (int r = 0; r < a.dim_; ++r)
          w[static_cast<std::size_t>(r)] += a.hnf_[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] *
                                            u[j][static_cast<std::size_t>(c)];
      inter.push_back(std::move(w));
    }
    return IntegerLattice(std::move(inter), a.dim_);
  }

 private:
  static int pivot_row(const AbelianVector& col) {
    for (int i = 0; i < static_cast<int>(col.size()); ++i)
      if (col[static_cast<std::size_t>(i)] != 0) return i;
    return -1;  // unreachable for stored columns
  }

  // Column-style HNF: returns (nonzero columns in echelon order, unimodular
  // transform U with M*U = [H | 0] column-permuted so kernel columns are
  // recoverable). U rows are indexed by original columns of M.
  static std::pair<std::vector<AbelianVector>, std::vector<AbelianVector>> column_hnf(
      const std::vector<AbelianVector>& m_in, int dim) {
    std::size_t k = m_in.size();
    std::vector<AbelianVector> cols = m_in;
    std::vector<AbelianVector> u(k);
    for (std::size_t j = 0; j < k; ++j) {
      u[j].assign(k, 0);
      u[j][j] = 1;
    }
    std::size_t done = 0;
    for (int r = 0; r < dim && done < k; ++r) {
      // eliminate row r across columns done..k-1 down to one pivot
      while (true) {
        std::size_t nz = k;
        for (std::size_t j = done; j < k; ++j)
          if (cols[j][static_cast<std::size_t>(r)] != 0) { nz = j; break; }
        if (nz == k) break;
        std::size_t nz2 = k;
        for (std::size_t j = nz + 1; j < k; ++j)
          if (cols[j][static_cast<std::size_t>(r)] != 0) { nz2 = j; break; }
        if (nz2 == k) {
          // single pivot in this row: normalize sign, move into position
          if (cols[nz][static_cast<std::size_t>(r)] < 0) { negate(cols[nz]); negate(u[nz]); }
          std::swap(cols[done], cols[nz]);
          std::swap(u[done], u[nz]);
          ++done;
          break;
        }
        // reduce the larger entry by the smaller
        long long x = cols[nz][static_cast<std::size_t>(r)];
        long long y = cols[nz2][static_cast<std::size_t>(r)];
        long long q = y / x;
        axpy(cols[nz2], cols[nz], -q);
        axpy(u[nz2], u[nz], -q);
        if (cols[nz2][static_cast<std::size_t>(r)] != 0) {
          std::swap(cols[nz], cols[nz2]);
          std::swap(u[nz], u[nz2]);
        }
      }
    }
    std::vector<AbelianVector> h(cols.begin(), cols.begin() + static_cast<long>(done));
    return {h, u};
  }

  static void negate(AbelianVector& v) {
    for (auto& x : v) x = -x;
  }
  static void axpy(AbelianVector& y, const AbelianVector& x, long long a) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  }

  int dim_;
  std::vector<AbelianVector> basis_;
  std::vector<AbelianVector> hnf_;
};

inline bool lattice_contains(const IntegerLattice& l, const AbelianVector& v) {
  return l.contains(v);
}

}  // namespace fgv

#endif
