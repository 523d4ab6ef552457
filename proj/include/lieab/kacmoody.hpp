#pragma once

// Generalized Cartan matrices, root systems and the invariant form for finite
// and affine Kac-Moody diagrams.
//
// Matrix convention: entries(i, j) = <alpha_j, alpha_i^vee>. Nodes are addressed
// by a 0-based index internally; every diagram also carries display labels
// (Bourbaki 1..n for finite types, with the affine node labelled 0).

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lieab/error.hpp"

namespace lieab {

inline constexpr int kMaxRank = 16;

using Coeffs = Eigen::Matrix<int, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxRank, 1>;
using CartanEntries =
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxRank, kMaxRank>;

/// A root (or any root-lattice element) as coefficients over the simple roots.
using Root = Coeffs;

enum class DiagramKind { Finite, Affine };

class GeneralizedCartanMatrix {
 public:
  /// Validates the matrix, derives the primitive integer symmetrizer and
  /// classifies the diagram. Throws InvalidMatrix for anything that is not a
  /// symmetrizable finite or affine GCM.
  GeneralizedCartanMatrix(std::string label, CartanEntries entries, std::vector<int> node_labels);

  const std::string& label() const noexcept { return label_; }
  int rank() const noexcept { return static_cast<int>(entries_.rows()); }
  DiagramKind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == DiagramKind::Finite; }
  bool is_affine() const noexcept { return kind_ == DiagramKind::Affine; }

  int entry(int i, int j) const { return entries_(i, j); }
  const CartanEntries& entries() const noexcept { return entries_; }
  const Coeffs& symmetrizer() const noexcept { return symmetrizer_; }

  /// d_i * entries(i, j); symmetric.
  CartanEntries symmetrized() const;

  int node_label(int index) const;
  int node_index(int label) const;
  const std::vector<int>& node_labels() const noexcept { return node_labels_; }

  bool adjacent(int i, int j) const { return i != j && entries_(i, j) != 0; }
  void check_node(int index) const;

  /// Principal submatrix on the given node indices (labels carried over).
  GeneralizedCartanMatrix subdiagram(std::span<const int> nodes, std::string label) const;

  friend bool operator==(const GeneralizedCartanMatrix& a, const GeneralizedCartanMatrix& b) {
    return a.label_ == b.label_ && a.entries_ == b.entries_ && a.node_labels_ == b.node_labels_;
  }

 private:
  std::string label_;
  CartanEntries entries_;
  Coeffs symmetrizer_;
  std::vector<int> node_labels_;
  DiagramKind kind_ = DiagramKind::Finite;
};

/// Builds a catalog diagram: A_n, B_n, C_n, D_n, E6-E8, F4, G2, every untwisted
/// affine X_n~1, and the twisted D4~3 and E6~2. Throws UnsupportedType.
GeneralizedCartanMatrix catalog(std::string_view label);

/// Every catalog label with exactly `nodes` nodes, finite types first.
std::vector<std::string> catalog_labels(int nodes);

// --- root arithmetic ------------------------------------------------------

Root simple_root(const GeneralizedCartanMatrix& gcm, int i);

inline int height(const Root& beta) { return beta.sum(); }

inline bool is_positive(const Root& beta) { return (beta.array() >= 0).all() && (beta.array() > 0).any(); }

/// (beta, beta) under the form (alpha_i, alpha_j) = d_i * entries(i, j).
int norm(const GeneralizedCartanMatrix& gcm, const Root& beta);

/// (a, b) under the same form.
int inner(const GeneralizedCartanMatrix& gcm, const Root& a, const Root& b);

/// <beta, alpha_i^vee>. The only sanctioned route from roots to Cartan entries.
int pairing(const GeneralizedCartanMatrix& gcm, const Root& beta, int i);

/// beta^vee = 2 beta / (beta, beta) in the simple-coroot basis. Throws NoCoroot
/// for non-positive norm and InternalError if the expansion is not integral.
Coeffs coroot_coeffs(const GeneralizedCartanMatrix& gcm, const Root& beta);

/// Primitive positive kernel vector of an affine GCM. Throws NotAffine.
Coeffs null_root_marks(const GeneralizedCartanMatrix& gcm);

/// Largest simple-root norm; long roots are normalised against this.
int long_root_norm(const GeneralizedCartanMatrix& gcm);

/// Reflection descent: repeatedly apply s_i with <beta, alpha_i^vee> > 0 and
/// report whether the walk ends at a simple root.
bool descends_to_simple(const GeneralizedCartanMatrix& gcm, Root beta);

struct RootHash {
  std::size_t operator()(const Root& r) const noexcept;
};
struct RootEqual {
  bool operator()(const Root& a, const Root& b) const noexcept {
    return a.size() == b.size() && a == b;
  }
};

// --- root sets ------------------------------------------------------------

/// Default cutoff: complete set for finite types; 2 ht(delta) + ht(theta) of the
/// diagram with node 0 removed for affine types.
int default_height_cutoff(const GeneralizedCartanMatrix& gcm);

/// Membership queries on a truncated set must stay this far below the cutoff.
inline constexpr int kCutoffMargin = 4;

class RootSet {
 public:
  RootSet(GeneralizedCartanMatrix gcm, int height_cutoff);
  explicit RootSet(GeneralizedCartanMatrix gcm);

  const GeneralizedCartanMatrix& gcm() const noexcept { return gcm_; }
  int height_cutoff() const noexcept { return cutoff_; }
  /// True when positive roots above the cutoff exist.
  bool truncated() const noexcept { return truncated_; }

  std::size_t size() const noexcept { return roots_.size(); }
  /// Ordered by height, then by first appearance during generation.
  std::span<const Root> roots() const noexcept { return roots_; }
  const Root& operator[](std::size_t k) const { return roots_[k]; }
  bool is_real(std::size_t k) const { return real_[k] != 0; }
  std::size_t real_count() const;

  std::optional<std::size_t> find(const Root& beta) const;

  /// Positive-root membership. On a truncated set, throws HeightCutoffExceeded
  /// when the query is within kCutoffMargin of the cutoff.
  bool contains(const Root& beta) const;
  bool contains_real(const Root& beta) const;

  /// beta or -beta is a positive root (0 is not a root).
  bool is_root(const Root& beta) const;

  /// Highest root of a complete finite set.
  const Root& highest_root() const;

 private:
  void require_within_cutoff(const Root& beta) const;

  GeneralizedCartanMatrix gcm_;
  int cutoff_;
  bool truncated_ = false;
  std::vector<Root> roots_;
  std::vector<char> real_;
  std::unordered_map<Root, std::size_t, RootHash, RootEqual> index_;
};

}  // namespace lieab
