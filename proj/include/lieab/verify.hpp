#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lieab/cache.hpp"
#include "lieab/charcalc.hpp"
#include "lieab/stretchmap.hpp"

namespace lieab {

enum class RowStatus { Equal, Mismatch, Skipped, Failed };

std::string_view to_string(RowStatus status);

struct ReportRow {
  int node = 0;  // source node label of omega_i
  BigInt weyl_dim;
  std::optional<BigInt> demazure_dim;
  RowStatus status = RowStatus::Skipped;
  std::string error;  // ErrorKind tag for FAILED rows
  std::size_t weight_count = 0;
  bool from_cache = false;
  double elapsed_ms = 0.0;
};

struct VerificationReport {
  std::string source;
  std::string target;
  std::vector<int> node_map;  // target label per source node, in source order
  std::pair<int, int> stretched_edge;
  int k_node = 0;  // source label of the tail endpoint
  std::vector<int> w_word;  // target labels
  CheckResults checks;
  ClosedFormDiagnostic closed_form;
  std::vector<ReportRow> rows;

  /// All checks pass and no attempted row is MISMATCH or FAILED.
  bool verdict() const;
  bool has_skips() const;
};

struct VerifyOptions {
  BigInt max_dim{10'000'000};
  DimensionCache* cache = nullptr;
  int jobs = 1;
  std::optional<int> height_cutoff;
};

/// Header fields of a report (no rows).
VerificationReport describe_embedding(const EmbeddingSpec& spec);

/// One row: SKIPPED above max_dim, otherwise the Demazure dimension of
/// Psi(omega_i) along w_iota against the Weyl dimension of omega_i. Library
/// errors mark the row FAILED with their tag.
ReportRow verify_row(const EmbeddingSpec& spec, int node, const VerifyOptions& options);

VerificationReport verify_embedding(const EmbeddingSpec& spec, const VerifyOptions& options);

/// Enumerates and verifies every embedding for each source. Rows run on up to
/// options.jobs threads; the output order is fixed (source, target, node map)
/// regardless of scheduling.
std::vector<VerificationReport> run_table(std::span<const std::string> sources, const VerifyOptions& options);

}  // namespace lieab
