#pragma once

// Formal characters anchored at a dominant weight Lambda. A term with offset
// beta (nonnegative over simple roots) stands for the monomial
// e^{Lambda - sum_j beta_j alpha_j}, so weights differing by delta stay distinct
// in affine types without choosing an affine weight basis.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lieab/kacmoody.hpp"
#include "lieab/weylops.hpp"

namespace lieab {

using BigInt = boost::multiprecision::cpp_int;

/// Packs a nonnegative offset vector into one 64-bit key, one fixed-width
/// field per node. Field width is 64 / rank bits, capped at 16.
class OffsetCodec {
 public:
  explicit OffsetCodec(int rank);

  int rank() const noexcept { return rank_; }
  int bits() const noexcept { return bits_; }
  std::uint64_t field_max() const noexcept { return field_max_; }

  std::uint64_t mask(int i) const noexcept { return field_max_ << (bits_ * i); }
  std::uint64_t unit(int i) const noexcept { return std::uint64_t{1} << (bits_ * i); }
  std::uint64_t get(std::uint64_t key, int i) const noexcept { return (key >> (bits_ * i)) & field_max_; }

  /// Throws OffsetOverflow for a coordinate outside [0, field_max].
  std::uint64_t encode(const Coeffs& offset) const;
  Coeffs decode(std::uint64_t key) const;

 private:
  int rank_;
  int bits_;
  std::uint64_t field_max_;
};

class FormalCharacter {
 public:
  struct Term {
    std::uint64_t key;
    std::int64_t mult;
  };

  FormalCharacter(GeneralizedCartanMatrix gcm, DominantWeight anchor);

  const GeneralizedCartanMatrix& gcm() const noexcept { return gcm_; }
  const DominantWeight& anchor() const noexcept { return anchor_; }
  const OffsetCodec& codec() const noexcept { return codec_; }

  /// Number of distinct weights.
  std::size_t size() const noexcept { return terms_.size(); }
  BigInt dimension() const;

  /// Terms in unspecified order; keys are distinct and multiplicities >= 1.
  std::span<const Term> raw_terms() const noexcept { return terms_; }

  /// Decoded terms sorted by offset key.
  std::vector<std::pair<Coeffs, std::int64_t>> terms() const;

  std::int64_t multiplicity(const Coeffs& offset) const;

  friend bool operator==(const FormalCharacter& a, const FormalCharacter& b);

 private:
  friend FormalCharacter char_unit(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor);
  friend FormalCharacter apply_demazure(const FormalCharacter& c, int i);

  GeneralizedCartanMatrix gcm_;
  DominantWeight anchor_;
  OffsetCodec codec_;
  std::vector<Term> terms_;
};

/// The single monomial e^Lambda.
FormalCharacter char_unit(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor);
FormalCharacter char_unit(const GeneralizedCartanMatrix& gcm, const Weight& anchor);

/// Demazure operator D_i, applied string by string along alpha_i. Throws
/// NonDemazureState if a multiplicity goes negative or an offset leaves the
/// positive cone.
FormalCharacter apply_demazure(const FormalCharacter& c, int i);

/// D_{i1}(D_{i2}(... D_{il}(e^Lambda))) for w = s_{i1} ... s_{il}. Throws
/// RejectedWord for a non-reduced word.
FormalCharacter demazure_character(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor,
                                   const WeylWord& w);

BigInt demazure_dim(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor, const WeylWord& w);

struct DemazureResult {
  BigInt dimension;
  std::size_t weight_count = 0;
  std::size_t word_length = 0;
  double elapsed_ms = 0.0;
};

DemazureResult demazure_result(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor, const WeylWord& w);

/// Weyl dimension formula with exact integer arithmetic: numerator and
/// denominator products are accumulated separately and divided once.
template <typename Int = BigInt>
Int weyl_dim(const RootSet& roots, const DominantWeight& lambda) {
  const auto& gcm = roots.gcm();
  if (!gcm.is_finite() || roots.truncated()) throw Error(ErrorKind::NotFinite, gcm.label());
  if (lambda.size() != gcm.rank()) throw Error(ErrorKind::InvalidNode, gcm.label() + ": weight size mismatch");
  Int num = 1;
  Int den = 1;
  for (const Root& beta : roots.roots()) {
    const Coeffs coroot = coroot_coeffs(gcm, beta);
    const int rho_pair = coroot.sum();
    const int lambda_pair = lambda.coeffs().dot(coroot);
    num *= Int(lambda_pair + rho_pair);
    den *= Int(rho_pair);
  }
  if (num % den != 0) throw Error(ErrorKind::InternalError, gcm.label() + ": inexact Weyl dimension");
  return Int(num / den);
}

}  // namespace lieab
