#include "lieab/charcalc.hpp"

#include <algorithm>
#include <chrono>

namespace lieab {

OffsetCodec::OffsetCodec(int rank) : rank_(rank), bits_(std::min(16, 64 / std::max(rank, 1))) {
  field_max_ = (std::uint64_t{1} << bits_) - 1;
}

std::uint64_t OffsetCodec::encode(const Coeffs& offset) const {
  std::uint64_t key = 0;
  for (int i = 0; i < rank_; ++i) {
    if (offset(i) < 0 || static_cast<std::uint64_t>(offset(i)) > field_max_)
      throw Error(ErrorKind::OffsetOverflow, "offset coordinate " + std::to_string(offset(i)) + " does not fit " +
                                                 std::to_string(bits_) + " bits");
    key |= static_cast<std::uint64_t>(offset(i)) << (bits_ * i);
  }
  return key;
}

Coeffs OffsetCodec::decode(std::uint64_t key) const {
  Coeffs out(rank_);
  for (int i = 0; i < rank_; ++i) out(i) = static_cast<int>(get(key, i));
  return out;
}

FormalCharacter::FormalCharacter(GeneralizedCartanMatrix gcm, DominantWeight anchor)
    : gcm_(std::move(gcm)), anchor_(std::move(anchor)), codec_(gcm_.rank()) {
  if (anchor_.size() != gcm_.rank()) throw Error(ErrorKind::InvalidNode, gcm_.label() + ": anchor size mismatch");
}

BigInt FormalCharacter::dimension() const {
  // multiplicities are individually bounded; sum in 128 bits before widening
  unsigned __int128 total = 0;
  for (const auto& t : terms_) total += static_cast<unsigned __int128>(t.mult);
  BigInt out = static_cast<std::uint64_t>(total >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(total);
  return out;
}

std::vector<std::pair<Coeffs, std::int64_t>> FormalCharacter::terms() const {
  std::vector<Term> sorted(terms_);
  std::sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  std::vector<std::pair<Coeffs, std::int64_t>> out;
  out.reserve(sorted.size());
  for (const auto& t : sorted) out.emplace_back(codec_.decode(t.key), t.mult);
  return out;
}

std::int64_t FormalCharacter::multiplicity(const Coeffs& offset) const {
  if ((offset.array() < 0).any() || (offset.array() > static_cast<int>(codec_.field_max())).any()) return 0;
  const std::uint64_t key = codec_.encode(offset);
  for (const auto& t : terms_)
    if (t.key == key) return t.mult;
  return 0;
}

bool operator==(const FormalCharacter& a, const FormalCharacter& b) {
  if (!(a.gcm_ == b.gcm_) || a.anchor_.coeffs() != b.anchor_.coeffs() || a.terms_.size() != b.terms_.size())
    return false;
  auto by_key = [](const FormalCharacter::Term& x, const FormalCharacter::Term& y) { return x.key < y.key; };
  std::vector<FormalCharacter::Term> ta(a.terms_), tb(b.terms_);
  std::sort(ta.begin(), ta.end(), by_key);
  std::sort(tb.begin(), tb.end(), by_key);
  return std::equal(ta.begin(), ta.end(), tb.begin(),
                    [](const auto& x, const auto& y) { return x.key == y.key && x.mult == y.mult; });
}

FormalCharacter char_unit(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor) {
  FormalCharacter c(gcm, anchor);
  c.terms_.push_back({0, 1});
  return c;
}

FormalCharacter char_unit(const GeneralizedCartanMatrix& gcm, const Weight& anchor) {
  return char_unit(gcm, DominantWeight(gcm, anchor));
}

FormalCharacter apply_demazure(const FormalCharacter& c, int i) {
  const auto& gcm = c.gcm_;
  const auto& codec = c.codec_;
  gcm.check_node(i);
  const std::uint64_t mask = codec.mask(i);
  const std::uint64_t field_max = codec.field_max();
  const int lambda_i = c.anchor_[i];

  // Group terms into alpha_i-strings: equal key outside field i, ascending in field i.
  std::vector<FormalCharacter::Term> sorted(c.terms_);
  std::sort(sorted.begin(), sorted.end(), [mask](const auto& a, const auto& b) {
    const std::uint64_t ra = a.key & ~mask, rb = b.key & ~mask;
    return ra != rb ? ra < rb : a.key < b.key;
  });

  FormalCharacter out(c.gcm_, c.anchor_);
  out.terms_.reserve(sorted.size() + sorted.size() / 4);
  std::vector<std::int64_t> diff;

  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorKind::NonDemazureState, gcm.label() + ": D_" + std::to_string(gcm.node_label(i)) + " " + what);
  };

  std::size_t begin = 0;
  while (begin < sorted.size()) {
    const std::uint64_t rest = sorted[begin].key & ~mask;
    std::size_t end = begin;
    while (end < sorted.size() && (sorted[end].key & ~mask) == rest) ++end;

    // rest has field i cleared, so this is the pairing without the alpha_i part
    const int top = lambda_i - pairing(gcm, codec.decode(rest), i);  // term at field value v pairs to top - 2v

    // contributions land on [lo, hi] in field i
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (std::size_t k = begin; k < end; ++k) {
      const std::int64_t v = static_cast<std::int64_t>(codec.get(sorted[k].key, i));
      const std::int64_t pair = top - 2 * v;
      if (pair >= 0) {
        lo = std::min(lo, v);
        hi = std::max(hi, v + pair);
      } else if (pair <= -2) {
        lo = std::min(lo, v + pair + 1);
        hi = std::max(hi, v - 1);
      }
    }
    if (lo <= hi) {
      if (lo < 0) fail("pushed an offset below zero");
      if (hi > static_cast<std::int64_t>(field_max))
        throw Error(ErrorKind::OffsetOverflow, gcm.label() + ": string exceeds " + std::to_string(codec.bits()) +
                                                   "-bit offset field");
      diff.assign(static_cast<std::size_t>(hi - lo + 2), 0);
      for (std::size_t k = begin; k < end; ++k) {
        const std::int64_t v = static_cast<std::int64_t>(codec.get(sorted[k].key, i));
        const std::int64_t pair = top - 2 * v;
        const std::int64_t m = sorted[k].mult;
        if (pair >= 0) {
          diff[v - lo] += m;
          diff[v + pair + 1 - lo] -= m;
        } else if (pair <= -2) {
          diff[v + pair + 1 - lo] -= m;
          diff[v - lo] += m;
        }
      }
      std::int64_t running = 0;
      for (std::int64_t pos = lo; pos <= hi; ++pos) {
        if (__builtin_add_overflow(running, diff[pos - lo], &running)) fail("multiplicity overflow");
        if (running < 0) fail("produced a negative multiplicity");
        if (running > 0) out.terms_.push_back({rest | (static_cast<std::uint64_t>(pos) << (codec.bits() * i)), running});
      }
    }
    begin = end;
  }
  return out;
}

FormalCharacter demazure_character(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor,
                                   const WeylWord& w) {
  if (!is_reduced(gcm, w)) throw Error(ErrorKind::RejectedWord, gcm.label() + ": word is not reduced");
  FormalCharacter c = char_unit(gcm, anchor);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) c = apply_demazure(c, *it);
  return c;
}

BigInt demazure_dim(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor, const WeylWord& w) {
  return demazure_character(gcm, anchor, w).dimension();
}

DemazureResult demazure_result(const GeneralizedCartanMatrix& gcm, const DominantWeight& anchor, const WeylWord& w) {
  const auto start = std::chrono::steady_clock::now();
  const FormalCharacter c = demazure_character(gcm, anchor, w);
  DemazureResult r;
  r.dimension = c.dimension();
  r.weight_count = c.size();
  r.word_length = w.length();
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace lieab
