#include "lieab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace lieab {

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Equal: return "EQUAL";
    case RowStatus::Mismatch: return "MISMATCH";
    case RowStatus::Skipped: return "SKIPPED";
    case RowStatus::Failed: return "FAILED";
  }
  return "FAILED";
}

bool VerificationReport::verdict() const {
  if (!checks.all()) return false;
  return std::none_of(rows.begin(), rows.end(), [](const ReportRow& r) {
    return r.status == RowStatus::Mismatch || r.status == RowStatus::Failed;
  });
}

bool VerificationReport::has_skips() const {
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.status == RowStatus::Skipped; });
}

VerificationReport describe_embedding(const EmbeddingSpec& spec) {
  VerificationReport report;
  report.source = spec.source().label();
  report.target = spec.target().label();
  report.node_map = spec.node_map_labels();
  report.stretched_edge = spec.stretched_edge_labels();
  report.k_node = spec.source().node_label(spec.k_index);
  report.w_word = spec.w_iota_labels();
  report.checks = spec.checks;
  report.closed_form = spec.closed_form;
  return report;
}

ReportRow verify_row(const EmbeddingSpec& spec, int node, const VerifyOptions& options) {
  ReportRow row;
  row.node = spec.source().node_label(node);
  const auto start = std::chrono::steady_clock::now();
  try {
    row.weyl_dim = weyl_dim(*spec.source_roots, DominantWeight::fundamental(spec.source(), node));
    if (row.weyl_dim > options.max_dim) {
      row.status = RowStatus::Skipped;
      return row;
    }
    const DominantWeight anchor = spec.Psi_fundamental(node);
    const std::vector<int> word = spec.w_iota_labels();
    const std::vector<int> weight(anchor.coeffs().begin(), anchor.coeffs().end());
    std::optional<CachedDimension> hit;
    if (options.cache) hit = options.cache->lookup(spec.target().label(), word, weight);
    if (hit) {
      row.demazure_dim = hit->dimension;
      row.weight_count = hit->weight_count;
      row.from_cache = true;
    } else {
      const DemazureResult r = demazure_result(spec.target(), anchor, spec.w_iota);
      row.demazure_dim = r.dimension;
      row.weight_count = r.weight_count;
      if (options.cache) options.cache->store(spec.target().label(), word, weight, {r.dimension, r.weight_count});
    }
    row.status = *row.demazure_dim == row.weyl_dim ? RowStatus::Equal : RowStatus::Mismatch;
  } catch (const Error& e) {
    row.status = RowStatus::Failed;
    row.error = std::string(to_string(e.kind()));
  }
  row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

VerificationReport verify_embedding(const EmbeddingSpec& spec, const VerifyOptions& options) {
  VerificationReport report = describe_embedding(spec);
  for (int i = 0; i < spec.source().rank(); ++i) report.rows.push_back(verify_row(spec, i, options));
  return report;
}

std::vector<VerificationReport> run_table(std::span<const std::string> sources, const VerifyOptions& options) {
  std::vector<std::string> ordered(sources.begin(), sources.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  std::vector<EmbeddingSpec> specs;
  for (const auto& s : ordered) {
    auto found = enumerate_embeddings(s, options.height_cutoff);
    std::move(found.begin(), found.end(), std::back_inserter(specs));
  }

  std::vector<VerificationReport> reports;
  struct Job {
    std::size_t report;
    int node;
  };
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    reports.push_back(describe_embedding(specs[k]));
    reports.back().rows.resize(specs[k].source().rank());
    for (int i = 0; i < specs[k].source().rank(); ++i) jobs.push_back({k, i});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++)
      reports[jobs[j].report].rows[jobs[j].node] = verify_row(specs[jobs[j].report], jobs[j].node, options);
  };
  const int threads = std::max(1, std::min<int>(options.jobs, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return reports;
}

}  // namespace lieab
