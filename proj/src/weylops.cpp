#include "lieab/weylops.hpp"

#include <algorithm>
#include <unordered_set>

namespace lieab {

DominantWeight::DominantWeight(const GeneralizedCartanMatrix& gcm, Weight coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != gcm.rank())
    throw Error(ErrorKind::InvalidNode, gcm.label() + ": weight has " + std::to_string(coeffs_.size()) +
                                            " coordinates, diagram has " + std::to_string(gcm.rank()));
  if ((coeffs_.array() < 0).any()) throw Error(ErrorKind::NotDominant, gcm.label() + ": negative coordinate");
}

DominantWeight DominantWeight::fundamental(const GeneralizedCartanMatrix& gcm, int i) {
  gcm.check_node(i);
  Weight w = Weight::Zero(gcm.rank());
  w(i) = 1;
  return DominantWeight(gcm, std::move(w));
}

DominantWeight DominantWeight::rho(const GeneralizedCartanMatrix& gcm) {
  return DominantWeight(gcm, Weight::Ones(gcm.rank()));
}

DominantWeight DominantWeight::zero(const GeneralizedCartanMatrix& gcm) {
  return DominantWeight(gcm, Weight::Zero(gcm.rank()));
}

void check_word(const GeneralizedCartanMatrix& gcm, const WeylWord& w) {
  for (int i : w.letters) gcm.check_node(i);
}

Root reflect_root(const GeneralizedCartanMatrix& gcm, int i, Root beta) {
  beta(i) -= pairing(gcm, beta, i);
  return beta;
}

Root act_on_root(const GeneralizedCartanMatrix& gcm, const WeylWord& w, Root beta) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) beta = reflect_root(gcm, *it, std::move(beta));
  return beta;
}

Weight reflect_weight(const GeneralizedCartanMatrix& gcm, int i, Weight lambda) {
  gcm.check_node(i);
  const int c = lambda(i);
  lambda -= c * gcm.entries().col(i);
  return lambda;
}

Weight act_on_weight(const GeneralizedCartanMatrix& gcm, const WeylWord& w, Weight lambda) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) lambda = reflect_weight(gcm, *it, std::move(lambda));
  return lambda;
}

std::vector<Root> inversion_set(const GeneralizedCartanMatrix& gcm, const WeylWord& w) {
  check_word(gcm, w);
  // N(u s_i) = s_i(N(u) \ {a_i}) if a_i in N(u), else {a_i} u s_i N(u)
  std::vector<Root> current;
  for (int i : w.letters) {
    const Root alpha = simple_root(gcm, i);
    const auto hit = std::find_if(current.begin(), current.end(), [&](const Root& r) { return r == alpha; });
    const bool shrink = hit != current.end();
    if (shrink) current.erase(hit);
    for (auto& r : current) r = reflect_root(gcm, i, std::move(r));
    if (!shrink) current.insert(current.begin(), alpha);
  }
  return current;
}

std::vector<Root> inversion_set(const RootSet& roots, const WeylWord& w) {
  auto out = inversion_set(roots.gcm(), w);
  for (const auto& r : out) {
    if (!roots.contains_real(r)) throw Error(ErrorKind::InternalError, "inversion root missing from root set");
  }
  return out;
}

bool is_reduced(const GeneralizedCartanMatrix& gcm, const WeylWord& w) {
  return inversion_set(gcm, w).size() == w.length();
}

bool is_reduced(const RootSet& roots, const WeylWord& w) { return inversion_set(roots, w).size() == w.length(); }

WeylWord longest_element(const GeneralizedCartanMatrix& gcm, std::span<const int> parabolic) {
  std::vector<int> nodes(parabolic.begin(), parabolic.end());
  std::sort(nodes.begin(), nodes.end());
  for (int i : nodes) gcm.check_node(i);
  if (!gcm.subdiagram(nodes, gcm.label() + "/parabolic").is_finite())
    throw Error(ErrorKind::NotFinite, gcm.label() + ": parabolic subgroup is infinite");

  Weight lambda = Weight::Zero(gcm.rank());
  for (int i : nodes) lambda(i) = 1;
  WeylWord w;
  while (true) {
    const auto next = std::find_if(nodes.begin(), nodes.end(), [&](int i) { return lambda(i) > 0; });
    if (next == nodes.end()) break;
    const int i = *next;
    w.letters.push_back(i);
    const int c = lambda(i);
    for (int k : nodes) lambda(k) -= c * gcm.entry(k, i);
  }
  return w;
}

WeylWord longest_element(const RootSet& roots) {
  const auto& gcm = roots.gcm();
  if (!gcm.is_finite()) throw Error(ErrorKind::NotFinite, gcm.label());
  std::vector<int> all(gcm.rank());
  for (int i = 0; i < gcm.rank(); ++i) all[i] = i;
  WeylWord w = longest_element(gcm, all);
  const auto inv = inversion_set(gcm, w);
  if (inv.size() != roots.size() || w.length() != roots.size() ||
      !same_root_set(inv, std::vector<Root>(roots.roots().begin(), roots.roots().end())))
    throw Error(ErrorKind::InternalError, gcm.label() + ": descent walk did not produce w0");
  return w;
}

WeylWord word_from_inversion_set(std::span<const Root> set, const RootSet& roots) {
  const auto& gcm = roots.gcm();
  std::vector<Root> current;
  std::unordered_set<Root, RootHash, RootEqual> seen;
  for (const auto& r : set) {
    if (!roots.contains_real(r)) throw Error(ErrorKind::NotBiconvex, "not a positive real root");
    if (seen.insert(r).second) current.push_back(r);
  }

  WeylWord w;
  while (!current.empty()) {
    int pick = -1;
    for (int i = 0; i < gcm.rank() && pick < 0; ++i) {
      for (const auto& r : current) {
        if (r(i) == 1 && height(r) == 1) {
          pick = i;
          break;
        }
      }
    }
    if (pick < 0) throw Error(ErrorKind::NotBiconvex, gcm.label() + ": no simple root left in set");
    w.letters.insert(w.letters.begin(), pick);
    std::erase_if(current, [&](const Root& r) { return height(r) == 1 && r(pick) == 1; });
    for (auto& r : current) {
      r = reflect_root(gcm, pick, std::move(r));
      if (!is_positive(r)) throw Error(ErrorKind::NotBiconvex, gcm.label() + ": reflection left the positive roots");
    }
  }

  const std::vector<Root> original(seen.begin(), seen.end());
  if (!same_root_set(inversion_set(gcm, w), original))
    throw Error(ErrorKind::NotBiconvex, gcm.label() + ": set is not the inversion set of its peeled word");
  return w;
}

bool same_root_set(std::span<const Root> a, std::span<const Root> b) {
  const std::unordered_set<Root, RootHash, RootEqual> sa(a.begin(), a.end());
  const std::unordered_set<Root, RootHash, RootEqual> sb(b.begin(), b.end());
  if (sa.size() != sb.size()) return false;
  return std::all_of(sa.begin(), sa.end(), [&](const Root& r) { return sb.contains(r); });
}

}  // namespace lieab
