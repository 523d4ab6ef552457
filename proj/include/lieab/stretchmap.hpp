#pragma once

// Stretch embeddings: a source diagram is mapped into a diagram with one more
// node so that exactly one edge a-b lands on a distance-2 pair m(a) - u - m(b)
// through the unused node u. psi is extended from the simple roots by the
// minimal-height rule and the result is checked against every condition a
// Dynkin abelianisation needs.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lieab/kacmoody.hpp"
#include "lieab/weylops.hpp"

namespace lieab {

struct StretchCandidate {
  std::vector<int> node_map;          // source index -> target index
  std::pair<int, int> stretched_edge;  // source indices, first < second
  int unused_node = -1;                // target index
};

/// All injective node maps preserving every Cartan entry except one stretched
/// edge, whose endpoints must both neighbour the single unused target node.
std::vector<StretchCandidate> stretch_candidates(const GeneralizedCartanMatrix& source,
                                                 const GeneralizedCartanMatrix& target);

/// psi(beta) for every positive root of `source`, in source root order: the
/// minimal-height positive real target root whose coefficient at node_map[i]
/// is beta_i for all i. Throws ExtensionFailed.
std::vector<Root> extend_psi(const RootSet& source, const RootSet& target, std::span<const int> node_map);

struct ClosureResult {
  bool closed = true;
  std::vector<std::pair<Root, Root>> witnesses;  // pairs whose sum is a root outside the image
};

ClosureResult check_additive_closure(std::span<const Root> image, const RootSet& target);

/// Norm preservation after scaling both diagrams to long-root norm 2.
bool check_lengths(const RootSet& source, std::span<const Root> psi, const GeneralizedCartanMatrix& target);

/// Reduced word w over the target with inversion set equal to the image.
/// Throws NotBiconvex.
WeylWord check_weyl_element(std::span<const Root> image, const RootSet& target);

struct PsiWitness {
  int node;              // source index i of omega_i
  std::size_t root;      // source root index of beta
  int source_pairing;    // <omega_i, beta^vee>
  int target_pairing;    // <Psi(omega_i), psi(beta)^vee>
};

struct PsiCheck {
  bool ok = true;
  std::vector<PsiWitness> witnesses;
};

/// Psi(omega_i) = target fundamental weight at psi_nodes[i]; verifies
/// <Psi(omega_i), psi(beta)^vee> = <omega_i, beta^vee> for all i and beta.
PsiCheck check_Psi(const RootSet& source, std::span<const Root> psi, const GeneralizedCartanMatrix& target,
                   std::span<const int> psi_nodes);

struct BracketClass {
  std::size_t alpha;  // source root indices, alpha < beta
  std::size_t beta;
  bool kept = false;
  bool root_string_ok = false;  // meaningful only when kept
};

/// Every unordered pair of source positive roots whose sum is a root. Throws
/// EmbeddingInconsistent when a kept pair has psi(a) + psi(b) != psi(a + b).
std::vector<BracketClass> classify_brackets(const RootSet& source, std::span<const Root> psi, const RootSet& target);

/// (p, q) with beta - p alpha, ..., beta + q alpha the alpha-string through beta.
std::pair<int, int> root_string(const RootSet& roots, const Root& alpha, const Root& beta);

/// height(beta) - beta_k.
int filtration_degree(const Root& beta, int k_index);

struct CheckResults {
  bool additive_closure = false;
  bool root_lengths = false;
  bool biconvex = false;
  bool psi_compat = false;
  bool brackets = false;

  bool all() const { return additive_closure && root_lengths && biconvex && psi_compat && brackets; }
};

/// Evaluation of the closed form w0 s_1...s_k s_0...s_{k-1} read on the target:
/// w0 is the longest element of the parabolic generated by the shifted copy
/// of the source diagram, the tail runs t_1 (far end) ... t_k = k_index.
struct ClosedFormDiagnostic {
  bool available = false;
  WeylWord word;
  bool reduced = false;
  bool matches = false;          // N(word) == image of psi
  bool inverse_matches = false;  // N(word^{-1}) == image of psi
};

struct EmbeddingSpec {
  std::shared_ptr<const RootSet> source_roots;
  std::shared_ptr<const RootSet> target_roots;
  std::vector<int> node_map;
  std::pair<int, int> stretched_edge;
  int unused_node = -1;
  std::vector<Root> psi;
  int k_index = -1;
  WeylWord w_iota;
  std::vector<int> psi_nodes;  // Psi(omega_i) = target omega at psi_nodes[i]
  std::vector<BracketClass> brackets;
  CheckResults checks;
  ClosedFormDiagnostic closed_form;

  const GeneralizedCartanMatrix& source() const { return source_roots->gcm(); }
  const GeneralizedCartanMatrix& target() const { return target_roots->gcm(); }
  std::size_t image_size() const { return psi.size(); }

  /// Psi(omega_i) as a dominant target weight.
  DominantWeight Psi_fundamental(int i) const;

  std::vector<int> node_map_labels() const;
  std::pair<int, int> stretched_edge_labels() const;
  std::vector<int> w_iota_labels() const;
};

/// Tail endpoint of the stretched edge: the endpoint whose side of the source
/// diagram (after cutting the edge) is a simply-laced chain; ties go to the
/// side whose image contains the affine node, then the shorter side, then the
/// smaller index.
int tail_index(const GeneralizedCartanMatrix& source, const GeneralizedCartanMatrix& target,
               const StretchCandidate& candidate);

ClosedFormDiagnostic closed_form_diagnostic(const EmbeddingSpec& spec);

/// Runs every check on one candidate and returns the verified spec. Throws the
/// Error describing the first failed condition.
EmbeddingSpec verify_candidate(const StretchCandidate& candidate, std::shared_ptr<const RootSet> source,
                               std::shared_ptr<const RootSet> target);

struct Rejection {
  std::string target;
  StretchCandidate candidate;
  ErrorKind kind;
  std::string reason;
};

struct SearchResult {
  std::vector<EmbeddingSpec> verified;
  std::vector<Rejection> rejected;
};

/// Exhaustive search over every catalog diagram with one more node.
/// `height_cutoff` overrides the default cutoff for affine targets.
SearchResult search_embeddings(std::string_view source_label, std::optional<int> height_cutoff = std::nullopt);

std::vector<EmbeddingSpec> enumerate_embeddings(std::string_view source_label,
                                                std::optional<int> height_cutoff = std::nullopt);

/// Source labels the search accepts.
bool is_exceptional(std::string_view label);

struct DegreeReport {
  std::vector<int> literal;  // height(beta) - beta_k
  std::vector<int> variant;  // height(psi(beta))
  bool literal_additive_all = true;
  bool literal_separates = true;
  bool variant_separates = true;
  std::size_t kept = 0;
  std::size_t killed = 0;
};

/// Whether degree additivity deg(a) + deg(b) = deg(a + b) holds exactly on the
/// kept bracket pairs, for the literal degree and for the psi-height variant.
DegreeReport degree_diagnostic(const EmbeddingSpec& spec);

}  // namespace lieab
