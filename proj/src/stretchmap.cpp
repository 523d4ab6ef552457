#include "lieab/stretchmap.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace lieab {

namespace {

using RootIndex = std::unordered_map<Root, std::size_t, RootHash, RootEqual>;

RootIndex index_roots(std::span<const Root> roots) {
  RootIndex idx;
  for (std::size_t k = 0; k < roots.size(); ++k) idx.emplace(roots[k], k);
  return idx;
}

void extend_map(const GeneralizedCartanMatrix& source, const GeneralizedCartanMatrix& target,
                std::pair<int, int> edge, std::vector<int>& map, std::vector<char>& used,
                std::vector<StretchCandidate>& out) {
  const int placed = static_cast<int>(std::count_if(map.begin(), map.end(), [](int x) { return x >= 0; }));
  if (placed == source.rank()) {
    const auto unused = std::find(used.begin(), used.end(), 0);
    const int u = static_cast<int>(unused - used.begin());
    if (target.adjacent(u, map[edge.first]) && target.adjacent(u, map[edge.second]))
      out.push_back({map, edge, u});
    return;
  }
  const int i = placed;
  for (int t = 0; t < target.rank(); ++t) {
    if (used[t]) continue;
    bool ok = true;
    for (int j = 0; j < i && ok; ++j) {
      const bool stretched = (std::min(i, j) == edge.first && std::max(i, j) == edge.second);
      if (stretched) {
        ok = target.entry(t, map[j]) == 0;
      } else {
        ok = target.entry(t, map[j]) == source.entry(i, j) && target.entry(map[j], t) == source.entry(j, i);
      }
    }
    if (!ok) continue;
    map[i] = t;
    used[t] = 1;
    extend_map(source, target, edge, map, used, out);
    map[i] = -1;
    used[t] = 0;
  }
}

// Nodes reachable from `start` without crossing the edge start-`blocked`.
std::vector<int> side_of(const GeneralizedCartanMatrix& g, int start, int blocked) {
  std::vector<int> seen{start};
  std::vector<int> stack{start};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < g.rank(); ++w) {
      if (!g.adjacent(v, w) || (v == start && w == blocked)) continue;
      if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
      seen.push_back(w);
      stack.push_back(w);
    }
  }
  return seen;
}

// Simply-laced path with `end` as one of its ends; returns nodes from the far
// end to `end`, or nothing.
std::optional<std::vector<int>> chain_towards(const GeneralizedCartanMatrix& g, const std::vector<int>& nodes,
                                              int end) {
  auto inside = [&](int v) { return std::find(nodes.begin(), nodes.end(), v) != nodes.end(); };
  std::vector<int> path{end};
  int prev = -1, cur = end;
  while (true) {
    int next = -1, degree = 0;
    for (int w : nodes) {
      if (!g.adjacent(cur, w)) continue;
      if (g.entry(cur, w) != -1 || g.entry(w, cur) != -1) return std::nullopt;
      ++degree;
      if (w != prev) next = w;
    }
    if (degree > (prev < 0 ? 1 : 2)) return std::nullopt;
    if (next < 0 || !inside(next)) break;
    path.push_back(next);
    prev = cur;
    cur = next;
  }
  if (path.size() != nodes.size()) return std::nullopt;
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::vector<int>> tail_chain(const GeneralizedCartanMatrix& source, int endpoint, int other) {
  return chain_towards(source, side_of(source, endpoint, other), endpoint);
}

}  // namespace

std::vector<StretchCandidate> stretch_candidates(const GeneralizedCartanMatrix& source,
                                                 const GeneralizedCartanMatrix& target) {
  std::vector<StretchCandidate> out;
  if (target.rank() != source.rank() + 1) return out;
  for (int a = 0; a < source.rank(); ++a) {
    for (int b = a + 1; b < source.rank(); ++b) {
      if (!source.adjacent(a, b)) continue;
      std::vector<int> map(source.rank(), -1);
      std::vector<char> used(target.rank(), 0);
      extend_map(source, target, {a, b}, map, used, out);
    }
  }
  return out;
}

std::vector<Root> extend_psi(const RootSet& source, const RootSet& target, std::span<const int> node_map) {
  std::vector<Root> psi;
  psi.reserve(source.size());
  for (const Root& beta : source.roots()) {
    std::optional<std::size_t> found;
    for (std::size_t k = 0; k < target.size() && !found; ++k) {
      if (!target.is_real(k)) continue;
      const Root& cand = target[k];
      bool match = true;
      for (int i = 0; i < source.gcm().rank() && match; ++i) match = cand(node_map[i]) == beta(i);
      if (match) found = k;
    }
    if (!found)
      throw Error(ErrorKind::ExtensionFailed,
                  target.gcm().label() + ": no root below height " + std::to_string(target.height_cutoff()) +
                      " matches a source root of height " + std::to_string(height(beta)));
    psi.push_back(target[*found]);
  }
  return psi;
}

ClosureResult check_additive_closure(std::span<const Root> image, const RootSet& target) {
  ClosureResult result;
  const std::unordered_set<Root, RootHash, RootEqual> members(image.begin(), image.end());
  for (std::size_t a = 0; a < image.size(); ++a) {
    for (std::size_t b = a + 1; b < image.size(); ++b) {
      const Root sum = image[a] + image[b];
      if (target.contains(sum) && !members.contains(sum)) {
        result.closed = false;
        result.witnesses.emplace_back(image[a], image[b]);
      }
    }
  }
  return result;
}

bool check_lengths(const RootSet& source, std::span<const Root> psi, const GeneralizedCartanMatrix& target) {
  const int long_source = long_root_norm(source.gcm());
  const int long_target = long_root_norm(target);
  for (std::size_t k = 0; k < source.size(); ++k) {
    if (norm(source.gcm(), source[k]) * long_target != norm(target, psi[k]) * long_source) return false;
  }
  return true;
}

WeylWord check_weyl_element(std::span<const Root> image, const RootSet& target) {
  return word_from_inversion_set(image, target);
}

PsiCheck check_Psi(const RootSet& source, std::span<const Root> psi, const GeneralizedCartanMatrix& target,
                   std::span<const int> psi_nodes) {
  PsiCheck result;
  for (std::size_t k = 0; k < source.size(); ++k) {
    const Coeffs lhs = coroot_coeffs(source.gcm(), source[k]);
    const Coeffs rhs = coroot_coeffs(target, psi[k]);
    for (int i = 0; i < source.gcm().rank(); ++i) {
      if (lhs(i) != rhs(psi_nodes[i])) {
        result.ok = false;
        result.witnesses.push_back({i, k, lhs(i), rhs(psi_nodes[i])});
      }
    }
  }
  return result;
}

std::pair<int, int> root_string(const RootSet& roots, const Root& alpha, const Root& beta) {
  constexpr int kMaxString = 8;
  int p = 0, q = 0;
  while (p < kMaxString && roots.is_root(Root(beta - (p + 1) * alpha))) ++p;
  while (q < kMaxString && roots.is_root(Root(beta + (q + 1) * alpha))) ++q;
  return {p, q};
}

std::vector<BracketClass> classify_brackets(const RootSet& source, std::span<const Root> psi, const RootSet& target) {
  std::vector<BracketClass> out;
  const auto idx = index_roots(source.roots());
  for (std::size_t a = 0; a < source.size(); ++a) {
    for (std::size_t b = a + 1; b < source.size(); ++b) {
      const auto sum = idx.find(Root(source[a] + source[b]));
      if (sum == idx.end()) continue;
      BracketClass bc{a, b};
      const Root image_sum = psi[a] + psi[b];
      bc.kept = target.contains(image_sum);
      if (bc.kept) {
        if (image_sum != psi[sum->second])
          throw Error(ErrorKind::EmbeddingInconsistent,
                      target.gcm().label() + ": kept bracket with psi(a) + psi(b) != psi(a + b)");
        bc.root_string_ok = root_string(source, source[a], source[b]) == root_string(target, psi[a], psi[b]) &&
                            root_string(source, source[b], source[a]) == root_string(target, psi[b], psi[a]);
      }
      out.push_back(bc);
    }
  }
  return out;
}

int filtration_degree(const Root& beta, int k_index) { return height(beta) - beta(k_index); }

DominantWeight EmbeddingSpec::Psi_fundamental(int i) const {
  source().check_node(i);
  return DominantWeight::fundamental(target(), psi_nodes[i]);
}

std::vector<int> EmbeddingSpec::node_map_labels() const {
  std::vector<int> out;
  for (int t : node_map) out.push_back(target().node_label(t));
  return out;
}

std::pair<int, int> EmbeddingSpec::stretched_edge_labels() const {
  return {source().node_label(stretched_edge.first), source().node_label(stretched_edge.second)};
}

std::vector<int> EmbeddingSpec::w_iota_labels() const {
  std::vector<int> out;
  for (int t : w_iota.letters) out.push_back(target().node_label(t));
  return out;
}

int tail_index(const GeneralizedCartanMatrix& source, const GeneralizedCartanMatrix& target,
               const StretchCandidate& candidate) {
  const auto [a, b] = candidate.stretched_edge;
  struct Side {
    int endpoint;
    bool chain;
    bool holds_affine;
    std::size_t size;
  };
  auto describe = [&](int end, int other) {
    const auto nodes = side_of(source, end, other);
    bool affine = false;
    if (target.is_affine()) {
      const int zero = target.node_index(0);
      for (int v : nodes) affine = affine || candidate.node_map[v] == zero;
    }
    return Side{end, chain_towards(source, nodes, end).has_value(), affine, nodes.size()};
  };
  const Side sa = describe(a, b);
  const Side sb = describe(b, a);
  auto rank = [](const Side& s) { return std::make_tuple(!s.chain, !s.holds_affine, s.size, s.endpoint); };
  return rank(sa) <= rank(sb) ? sa.endpoint : sb.endpoint;
}

ClosedFormDiagnostic closed_form_diagnostic(const EmbeddingSpec& spec) {
  ClosedFormDiagnostic diag;
  const auto& source = spec.source();
  const auto& target = spec.target();
  const int k = spec.k_index;
  const int other = spec.stretched_edge.first == k ? spec.stretched_edge.second : spec.stretched_edge.first;
  const auto tail = tail_chain(source, k, other);
  if (!tail) return diag;

  // tilde-alpha_{j-1} = image of t_j for j <= k, tilde-alpha_k = unused node
  std::vector<int> shifted;
  for (std::size_t j = 1; j < tail->size(); ++j) shifted.push_back(spec.node_map[(*tail)[j]]);
  shifted.push_back(spec.unused_node);

  const int dropped = spec.node_map[tail->front()];
  std::vector<int> copy;
  for (int t = 0; t < target.rank(); ++t)
    if (t != dropped) copy.push_back(t);
  try {
    diag.word = longest_element(target, copy);
  } catch (const Error&) {
    return diag;
  }
  diag.available = true;
  for (int t : shifted) diag.word.letters.push_back(t);
  for (int s : *tail) diag.word.letters.push_back(spec.node_map[s]);

  const auto inv = inversion_set(target, diag.word);
  diag.reduced = inv.size() == diag.word.length();
  diag.matches = same_root_set(inv, spec.psi);
  WeylWord reversed{std::vector<int>(diag.word.letters.rbegin(), diag.word.letters.rend())};
  diag.inverse_matches = same_root_set(inversion_set(target, reversed), spec.psi);
  return diag;
}

EmbeddingSpec verify_candidate(const StretchCandidate& candidate, std::shared_ptr<const RootSet> source,
                               std::shared_ptr<const RootSet> target) {
  EmbeddingSpec spec;
  spec.source_roots = std::move(source);
  spec.target_roots = std::move(target);
  spec.node_map = candidate.node_map;
  spec.stretched_edge = candidate.stretched_edge;
  spec.unused_node = candidate.unused_node;
  const RootSet& src = *spec.source_roots;
  const RootSet& tgt = *spec.target_roots;
  const std::string where = src.gcm().label() + " -> " + tgt.gcm().label();

  spec.psi = extend_psi(src, tgt, spec.node_map);
  for (int k = 0; k < src.gcm().rank(); ++k) {
    if (spec.psi[*src.find(simple_root(src.gcm(), static_cast<int>(k)))] != simple_root(tgt.gcm(), spec.node_map[k]))
      throw Error(ErrorKind::InternalError, where + ": psi disagrees with the node map");
  }
  if (index_roots(spec.psi).size() != spec.psi.size())
    throw Error(ErrorKind::EmbeddingInconsistent, where + ": psi is not injective");

  spec.checks.root_lengths = check_lengths(src, spec.psi, tgt.gcm());
  if (!spec.checks.root_lengths) throw Error(ErrorKind::EmbeddingInconsistent, where + ": root lengths not preserved");

  const auto closure = check_additive_closure(spec.psi, tgt);
  spec.checks.additive_closure = closure.closed;
  if (!closure.closed)
    throw Error(ErrorKind::EmbeddingInconsistent,
                where + ": image not additively closed (" + std::to_string(closure.witnesses.size()) + " pairs)");

  spec.w_iota = check_weyl_element(spec.psi, tgt);
  spec.checks.biconvex = spec.w_iota.length() == spec.psi.size();
  if (!spec.checks.biconvex) throw Error(ErrorKind::InternalError, where + ": w_iota length mismatch");

  spec.psi_nodes = spec.node_map;
  const auto psi_check = check_Psi(src, spec.psi, tgt.gcm(), spec.psi_nodes);
  spec.checks.psi_compat = psi_check.ok;
  if (!psi_check.ok)
    throw Error(ErrorKind::EmbeddingInconsistent,
                where + ": Psi incompatible (" + std::to_string(psi_check.witnesses.size()) + " witnesses)");

  spec.brackets = classify_brackets(src, spec.psi, tgt);
  std::size_t killed_simple = 0;
  bool strings_ok = true;
  for (const auto& bc : spec.brackets) {
    if (bc.kept) strings_ok = strings_ok && bc.root_string_ok;
    if (!bc.kept && height(src[bc.alpha]) == 1 && height(src[bc.beta]) == 1) ++killed_simple;
  }
  spec.checks.brackets = strings_ok && killed_simple == 1;
  if (!strings_ok) throw Error(ErrorKind::EmbeddingInconsistent, where + ": root strings not preserved");
  if (killed_simple != 1)
    throw Error(ErrorKind::EmbeddingInconsistent,
                where + ": " + std::to_string(killed_simple) + " simple bracket pairs killed");

  spec.k_index = tail_index(src.gcm(), tgt.gcm(), candidate);
  spec.closed_form = closed_form_diagnostic(spec);
  return spec;
}

bool is_exceptional(std::string_view label) {
  return label == "G2" || label == "F4" || label == "E6" || label == "E7" || label == "E8";
}

SearchResult search_embeddings(std::string_view source_label, std::optional<int> height_cutoff) {
  constexpr int kMaxCutoffDoublings = 3;
  if (!is_exceptional(source_label))
    throw Error(ErrorKind::UnsupportedType, std::string(source_label) + " is not an exceptional type");
  const auto source = std::make_shared<const RootSet>(catalog(source_label));
  SearchResult result;
  for (const auto& label : catalog_labels(source->gcm().rank() + 1)) {
    GeneralizedCartanMatrix target_gcm = catalog(label);
    const auto candidates = stretch_candidates(source->gcm(), target_gcm);
    if (candidates.empty()) continue;
    std::shared_ptr<const RootSet> target;
    if (target_gcm.is_affine() && height_cutoff)
      target = std::make_shared<const RootSet>(std::move(target_gcm), *height_cutoff);
    else
      target = std::make_shared<const RootSet>(std::move(target_gcm));
    for (const auto& cand : candidates) {
      for (int attempt = 0;; ++attempt) {
        try {
          result.verified.push_back(verify_candidate(cand, source, target));
        } catch (const Error& e) {
          // The default cutoff only bounds im psi; closure and root-string
          // queries can reach higher. Regenerate deeper unless the caller
          // pinned the cutoff.
          if (e.kind() == ErrorKind::HeightCutoffExceeded && !height_cutoff && attempt < kMaxCutoffDoublings) {
            target = std::make_shared<const RootSet>(target->gcm(), 2 * target->height_cutoff());
            continue;
          }
          if (e.kind() == ErrorKind::HeightCutoffExceeded || e.kind() == ErrorKind::InternalError) throw;
          result.rejected.push_back({label, cand, e.kind(), e.what()});
        }
        break;
      }
    }
  }
  std::sort(result.verified.begin(), result.verified.end(), [](const EmbeddingSpec& x, const EmbeddingSpec& y) {
    return std::make_pair(x.target().label(), x.node_map_labels()) <
           std::make_pair(y.target().label(), y.node_map_labels());
  });
  return result;
}

std::vector<EmbeddingSpec> enumerate_embeddings(std::string_view source_label, std::optional<int> height_cutoff) {
  return search_embeddings(source_label, height_cutoff).verified;
}

DegreeReport degree_diagnostic(const EmbeddingSpec& spec) {
  DegreeReport report;
  const RootSet& src = *spec.source_roots;
  for (std::size_t k = 0; k < src.size(); ++k) {
    report.literal.push_back(filtration_degree(src[k], spec.k_index));
    report.variant.push_back(height(spec.psi[k]));
  }
  for (const auto& bc : spec.brackets) {
    const std::size_t sum = *src.find(Root(src[bc.alpha] + src[bc.beta]));
    const bool literal_add = report.literal[bc.alpha] + report.literal[bc.beta] == report.literal[sum];
    const bool variant_add = report.variant[bc.alpha] + report.variant[bc.beta] == report.variant[sum];
    report.literal_additive_all = report.literal_additive_all && literal_add;
    report.literal_separates = report.literal_separates && literal_add == bc.kept;
    report.variant_separates = report.variant_separates && variant_add == bc.kept;
    ++(bc.kept ? report.kept : report.killed);
  }
  return report;
}

}  // namespace lieab
