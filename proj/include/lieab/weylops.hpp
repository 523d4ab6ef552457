#pragma once

#include <span>
#include <vector>

#include "lieab/kacmoody.hpp"

namespace lieab {

/// Weight coordinates over fundamental weights: entry i is <lambda, alpha_i^vee>.
using Weight = Coeffs;

/// A sequence of node indices s_{i1} ... s_{il}; as an operator the rightmost
/// letter acts first.
struct WeylWord {
  std::vector<int> letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  friend bool operator==(const WeylWord&, const WeylWord&) = default;
};

/// A weight with nonnegative fundamental-weight coordinates.
class DominantWeight {
 public:
  /// Throws NotDominant on a negative coordinate and InvalidNode on a size mismatch.
  DominantWeight(const GeneralizedCartanMatrix& gcm, Weight coeffs);

  static DominantWeight fundamental(const GeneralizedCartanMatrix& gcm, int i);
  static DominantWeight rho(const GeneralizedCartanMatrix& gcm);
  static DominantWeight zero(const GeneralizedCartanMatrix& gcm);

  const Weight& coeffs() const noexcept { return coeffs_; }
  int operator[](int i) const { return coeffs_(i); }
  int size() const noexcept { return static_cast<int>(coeffs_.size()); }

 private:
  Weight coeffs_;
};

void check_word(const GeneralizedCartanMatrix& gcm, const WeylWord& w);

/// s_i(beta) = beta - <beta, alpha_i^vee> alpha_i.
Root reflect_root(const GeneralizedCartanMatrix& gcm, int i, Root beta);

/// w(beta), rightmost letter first.
Root act_on_root(const GeneralizedCartanMatrix& gcm, const WeylWord& w, Root beta);

/// s_i on fundamental-weight coordinates; alpha_i has coordinates given by
/// column i of the Cartan matrix.
Weight reflect_weight(const GeneralizedCartanMatrix& gcm, int i, Weight lambda);
Weight act_on_weight(const GeneralizedCartanMatrix& gcm, const WeylWord& w, Weight lambda);

/// {beta > 0 : w(beta) < 0}. Ordered as produced by appending letters left to
/// right; a non-reduced word collapses cancelling pairs.
std::vector<Root> inversion_set(const GeneralizedCartanMatrix& gcm, const WeylWord& w);
std::vector<Root> inversion_set(const RootSet& roots, const WeylWord& w);

bool is_reduced(const GeneralizedCartanMatrix& gcm, const WeylWord& w);
bool is_reduced(const RootSet& roots, const WeylWord& w);

/// Descent walk from rho. Throws NotFinite for affine diagrams; the result is
/// checked to invert every positive root.
WeylWord longest_element(const RootSet& roots);

/// Longest element of the parabolic subgroup generated by `nodes`, whose
/// principal submatrix must be of finite type. Letters are indices of `gcm`.
WeylWord longest_element(const GeneralizedCartanMatrix& gcm, std::span<const int> nodes);

/// Reduced word whose inversion set is exactly `set`: peel a simple root
/// (smallest index first), reflect the remainder, repeat. Letters found later
/// are prepended. Throws NotBiconvex when no such Weyl element exists.
WeylWord word_from_inversion_set(std::span<const Root> set, const RootSet& roots);

/// Set equality of root lists (order-insensitive, duplicates ignored).
bool same_root_set(std::span<const Root> a, std::span<const Root> b);

}  // namespace lieab
