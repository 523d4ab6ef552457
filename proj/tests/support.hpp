#pragma once

// Generators and slow reference implementations shared by the test binaries.
// Nothing here calls into the root-generation, Weyl-group or character code of
// the library beyond reading the Cartan matrix, so agreement is meaningful.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "lieab/charcalc.hpp"
#include "lieab/kacmoody.hpp"
#include "lieab/weylops.hpp"

namespace testing {

using Vec = std::vector<int>;
using Mat = std::vector<Vec>;
using BigRational = boost::multiprecision::cpp_rational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

inline Mat cartan(const lieab::GeneralizedCartanMatrix& gcm) {
  const int n = gcm.rank();
  Mat a(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = gcm.entries()(i, j);
  return a;
}

// s_i on root coordinates: alpha_j -> alpha_j - a_ij alpha_i.
inline Vec reflect(const Mat& a, int i, Vec beta) {
  int c = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) c += a[i][j] * beta[j];
  beta[i] -= c;
  return beta;
}

inline bool positive(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; }) &&
         std::any_of(v.begin(), v.end(), [](int x) { return x > 0; });
}

inline Vec to_vec(const lieab::Root& r) { return Vec(r.data(), r.data() + r.size()); }

inline lieab::Root to_root(const Vec& v) {
  lieab::Root r(static_cast<int>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) r(static_cast<int>(k)) = v[k];
  return r;
}

// Positive roots of a finite type as the Weyl orbit of the simple roots.
inline std::set<Vec> orbit_positive_roots(const lieab::GeneralizedCartanMatrix& gcm) {
  const Mat a = cartan(gcm);
  const int n = gcm.rank();
  std::set<Vec> all;
  std::vector<Vec> todo;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    todo.push_back(e);
    all.insert(e);
  }
  while (!todo.empty()) {
    const Vec b = todo.back();
    todo.pop_back();
    for (int i = 0; i < n; ++i) {
      Vec r = reflect(a, i, b);
      if (all.insert(r).second) todo.push_back(r);
    }
  }
  std::set<Vec> pos;
  for (const auto& r : all)
    if (positive(r)) pos.insert(r);
  return pos;
}

// Symmetrizer by propagation along edges, with rationals.
inline std::vector<BigRational> oracle_symmetrizer(const Mat& a) {
  const int n = static_cast<int>(a.size());
  std::vector<BigRational> d(n, BigRational(0));
  d[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i] != 0 && d[j] == 0 && a[i][j] != 0) {
          d[j] = d[i] * BigRational(a[i][j]) / BigRational(a[j][i]);
          changed = true;
        }
  }
  return d;
}

// Weyl dimension formula over the orbit-generated roots, evaluated in exact
// rationals one factor at a time.
inline boost::multiprecision::cpp_int oracle_weyl_dim(const lieab::GeneralizedCartanMatrix& gcm, const Vec& lambda) {
  const Mat a = cartan(gcm);
  const int n = gcm.rank();
  const auto d = oracle_symmetrizer(a);
  BigRational dim = 1;
  for (const Vec& beta : orbit_positive_roots(gcm)) {
    BigRational norm = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) norm += BigRational(beta[i] * beta[j]) * d[i] * a[i][j];
    BigRational num = 0, den = 0;
    for (int i = 0; i < n; ++i) {
      const BigRational coroot_i = 2 * BigRational(beta[i]) * d[i] / norm;
      num += coroot_i * (lambda[i] + 1);
      den += coroot_i;
    }
    dim *= num / den;
  }
  return boost::multiprecision::numerator(dim);
}

// --- words ---------------------------------------------------------------

// Reduced word built by appending random letters that increase the length.
inline lieab::WeylWord random_reduced_word(const lieab::GeneralizedCartanMatrix& gcm, int max_len, Rng& rng) {
  lieab::WeylWord w;
  const int target_len = rng.uniform(0, max_len);
  int attempts = 0;
  while (static_cast<int>(w.length()) < target_len && attempts < 50 * (max_len + 1)) {
    ++attempts;
    lieab::WeylWord next = w;
    next.letters.push_back(rng.uniform(0, gcm.rank() - 1));
    if (lieab::is_reduced(gcm, next)) w = std::move(next);
  }
  return w;
}

inline lieab::WeylWord random_word(int rank, int max_len, Rng& rng) {
  lieab::WeylWord w;
  const int len = rng.uniform(0, max_len);
  for (int k = 0; k < len; ++k) w.letters.push_back(rng.uniform(0, rank - 1));
  return w;
}

inline lieab::DominantWeight random_dominant(const lieab::GeneralizedCartanMatrix& gcm, int max_coeff, Rng& rng) {
  lieab::Weight c(gcm.rank());
  for (int i = 0; i < gcm.rank(); ++i) c(i) = rng.uniform(0, max_coeff);
  return lieab::DominantWeight(gcm, c);
}

// --- naive Demazure operators --------------------------------------------

// Characters of a finite type keyed by fundamental-weight coordinates.
using NaiveChar = std::map<Vec, std::int64_t>;

inline NaiveChar naive_demazure(const Mat& a, const NaiveChar& c, int i) {
  const int n = static_cast<int>(a.size());
  NaiveChar out;
  auto shift = [&](Vec mu, int times) {  // mu - times * alpha_i
    for (int j = 0; j < n; ++j) mu[j] -= times * a[j][i];
    return mu;
  };
  for (const auto& [mu, m] : c) {
    const int p = mu[i];
    if (p >= 0) {
      for (int t = 0; t <= p; ++t) out[shift(mu, t)] += m;
    } else {
      for (int t = 1; t <= -p - 1; ++t) out[shift(mu, -t)] -= m;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline NaiveChar naive_demazure_character(const lieab::GeneralizedCartanMatrix& gcm, const Vec& lambda,
                                          const lieab::WeylWord& w) {
  const Mat a = cartan(gcm);
  NaiveChar c{{lambda, 1}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) c = naive_demazure(a, c, *it);
  return c;
}

// Converts a library character into fundamental-weight coordinates.
inline NaiveChar as_naive(const lieab::FormalCharacter& c) {
  const Mat a = cartan(c.gcm());
  const int n = c.gcm().rank();
  NaiveChar out;
  for (const auto& [offset, m] : c.terms()) {
    Vec mu(c.anchor().coeffs().data(), c.anchor().coeffs().data() + n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) mu[j] -= offset(k) * a[j][k];
    out[mu] += m;
  }
  return out;
}

// --- brute-force Weyl group ----------------------------------------------

// Every element of a small finite Weyl group as an integer matrix on root
// coordinates (column j is the image of alpha_j).
inline std::vector<Mat> weyl_group(const lieab::GeneralizedCartanMatrix& gcm) {
  const Mat a = cartan(gcm);
  const int n = gcm.rank();
  Mat id(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  std::set<Mat> seen{id};
  std::vector<Mat> todo{id};
  while (!todo.empty()) {
    const Mat g = todo.back();
    todo.pop_back();
    for (int i = 0; i < n; ++i) {
      Mat h = g;  // s_i * g
      for (int col = 0; col < n; ++col) {
        Vec c(n);
        for (int r = 0; r < n; ++r) c[r] = g[r][col];
        c = reflect(a, i, c);
        for (int r = 0; r < n; ++r) h[r][col] = c[r];
      }
      if (seen.insert(h).second) todo.push_back(h);
    }
  }
  return {seen.begin(), seen.end()};
}

inline Mat matrix_of_word(const lieab::GeneralizedCartanMatrix& gcm, const lieab::WeylWord& w) {
  const Mat a = cartan(gcm);
  const int n = gcm.rank();
  Mat m(n, Vec(n, 0));
  for (int col = 0; col < n; ++col) {
    Vec e(n, 0);
    e[col] = 1;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) e = reflect(a, *it, e);
    for (int r = 0; r < n; ++r) m[r][col] = e[r];
  }
  return m;
}

inline Vec apply(const Mat& m, const Vec& v) {
  Vec out(v.size(), 0);
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  return out;
}

inline std::set<Vec> brute_inversion_set(const lieab::GeneralizedCartanMatrix& gcm, const Mat& w) {
  std::set<Vec> out;
  for (const Vec& beta : orbit_positive_roots(gcm))
    if (!positive(apply(w, beta))) out.insert(beta);
  return out;
}

inline std::set<Vec> as_set(std::span<const lieab::Root> roots) {
  std::set<Vec> out;
  for (const auto& r : roots) out.insert(to_vec(r));
  return out;
}

}  // namespace testing
