#include "lieab/kacmoody.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <numeric>
#include <regex>
#include <utility>

namespace lieab {

namespace {

using Rational = boost::rational<std::int64_t>;

// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
std::int64_t determinant(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::int64_t leading_minor(const CartanEntries& b, int k) {
  std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m[i][j] = b(i, j);
  return determinant(std::move(m));
}

Coeffs derive_symmetrizer(const CartanEntries& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::optional<Rational>> d(n);
  for (int start = 0; start < n; ++start) {
    if (d[start]) continue;
    d[start] = Rational(1);
    std::vector<int> queue{start};
    while (!queue.empty()) {
      const int i = queue.back();
      queue.pop_back();
      for (int j = 0; j < n; ++j) {
        if (i == j || a(i, j) == 0) continue;
        // d_i a_ij = d_j a_ji
        const Rational dj = *d[i] * Rational(a(i, j), a(j, i));
        if (!d[j]) {
          d[j] = dj;
          queue.push_back(j);
        } else if (*d[j] != dj) {
          throw Error(ErrorKind::InvalidMatrix, "matrix is not symmetrizable");
        }
      }
    }
  }
  std::int64_t den = 1;
  for (const auto& x : d) den = std::lcm(den, x->denominator());
  std::int64_t g = 0;
  for (const auto& x : d) g = std::gcd(g, x->numerator() * (den / x->denominator()));
  Coeffs out(n);
  for (int i = 0; i < n; ++i) out(i) = static_cast<int>(d[i]->numerator() * (den / d[i]->denominator()) / g);
  return out;
}

CartanEntries chain(int n) {
  CartanEntries a = CartanEntries::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 2;
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = -1;
  return a;
}

void link(CartanEntries& a, int i, int j) { a(i, j) = a(j, i) = -1; }

std::vector<int> one_based(int n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  return labels;
}

GeneralizedCartanMatrix finite_type(char series, int n, const std::string& label) {
  CartanEntries a;
  switch (series) {
    case 'A':
      a = chain(n);
      break;
    case 'B':
      a = chain(n);
      a(n - 1, n - 2) = -2;  // alpha_n short
      break;
    case 'C':
      a = chain(n);
      a(n - 2, n - 1) = -2;  // alpha_n long
      break;
    case 'D':
      a = chain(n - 1);
      a.conservativeResize(n, n);
      a.row(n - 1).setZero();
      a.col(n - 1).setZero();
      a(n - 1, n - 1) = 2;
      link(a, n - 1, n - 3);
      break;
    case 'E':
      // 1-3-4-5-...-n with 2 attached to 4
      a = CartanEntries::Zero(n, n);
      for (int i = 0; i < n; ++i) a(i, i) = 2;
      link(a, 0, 2);
      link(a, 1, 3);
      for (int i = 2; i + 1 < n; ++i) link(a, i, i + 1);
      break;
    case 'F':
      a = chain(4);
      a(2, 1) = -2;  // alpha_1, alpha_2 long
      break;
    case 'G':
      // alpha_1 long, alpha_2 short: positive roots a2, a1, a1+a2, a1+2a2, a1+3a2, 2a1+3a2
      a = chain(2);
      a(1, 0) = -3;
      break;
    default:
      throw Error(ErrorKind::UnsupportedType, label);
  }
  return GeneralizedCartanMatrix(label, std::move(a), one_based(n));
}

// Extends a finite diagram by alpha_0 = delta - theta.
GeneralizedCartanMatrix untwisted_affine(const GeneralizedCartanMatrix& finite, const std::string& label) {
  const RootSet roots(finite);
  const Root& theta = roots.highest_root();
  const Coeffs theta_vee = coroot_coeffs(finite, theta);
  const int n = finite.rank();
  CartanEntries a = CartanEntries::Zero(n + 1, n + 1);
  a.bottomRightCorner(n, n) = finite.entries();
  a(0, 0) = 2;
  for (int j = 0; j < n; ++j) {
    // <alpha_j, theta^vee> = sum_i theta^vee_i <alpha_j, alpha_i^vee>
    int alpha_j_theta = 0;
    for (int i = 0; i < n; ++i) alpha_j_theta += theta_vee(i) * finite.entry(i, j);
    a(0, j + 1) = -alpha_j_theta;
    a(j + 1, 0) = -pairing(finite, theta, j);
  }
  std::vector<int> labels{0};
  for (int l : finite.node_labels()) labels.push_back(l);
  return GeneralizedCartanMatrix(label, std::move(a), std::move(labels));
}

struct ParsedLabel {
  char series;
  int n;
  int twist;  // 0 for finite
};

std::optional<ParsedLabel> parse_label(std::string_view label) {
  static const std::regex pattern(R"(([A-G])(\d{1,2})(?:~([123]))?)");
  std::cmatch m;
  if (!std::regex_match(label.begin(), label.end(), m, pattern)) return std::nullopt;
  ParsedLabel p{m[1].str()[0], std::stoi(m[2].str()), m[3].matched ? std::stoi(m[3].str()) : 0};
  return p;
}

constexpr int kCatalogMaxN = 12;

bool finite_supported(char s, int n) {
  switch (s) {
    case 'A': return n >= 1 && n <= kCatalogMaxN;
    case 'B': return n >= 2 && n <= kCatalogMaxN;
    case 'C': return n >= 3 && n <= kCatalogMaxN;
    case 'D': return n >= 4 && n <= kCatalogMaxN;
    case 'E': return n >= 6 && n <= 8;
    case 'F': return n == 4;
    case 'G': return n == 2;
    default: return false;
  }
}

bool untwisted_supported(char s, int n) {
  switch (s) {
    case 'A': return n >= 1 && n <= kCatalogMaxN;
    case 'B': return n >= 3 && n <= kCatalogMaxN;
    case 'C': return n >= 2 && n <= kCatalogMaxN;
    default: return finite_supported(s, n);
  }
}

}  // namespace

// --- GeneralizedCartanMatrix ----------------------------------------------

GeneralizedCartanMatrix::GeneralizedCartanMatrix(std::string label, CartanEntries entries,
                                                 std::vector<int> node_labels)
    : label_(std::move(label)), entries_(std::move(entries)), node_labels_(std::move(node_labels)) {
  const int n = static_cast<int>(entries_.rows());
  if (n == 0 || n > kMaxRank || entries_.cols() != n)
    throw Error(ErrorKind::InvalidMatrix, label_ + ": bad dimensions");
  if (static_cast<int>(node_labels_.size()) != n)
    throw Error(ErrorKind::InvalidMatrix, label_ + ": label count mismatch");
  for (int i = 0; i < n; ++i) {
    if (entries_(i, i) != 2) throw Error(ErrorKind::InvalidMatrix, label_ + ": diagonal entry != 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (entries_(i, j) > 0) throw Error(ErrorKind::InvalidMatrix, label_ + ": positive off-diagonal entry");
      if ((entries_(i, j) == 0) != (entries_(j, i) == 0))
        throw Error(ErrorKind::InvalidMatrix, label_ + ": asymmetric zero pattern");
    }
  }
  symmetrizer_ = derive_symmetrizer(entries_);

  const CartanEntries b = symmetrized();
  for (int k = 1; k < n; ++k) {
    if (leading_minor(b, k) <= 0)
      throw Error(ErrorKind::InvalidMatrix, label_ + ": neither finite nor affine");
  }
  const std::int64_t det = leading_minor(b, n);
  if (det > 0) {
    kind_ = DiagramKind::Finite;
  } else if (det == 0) {
    kind_ = DiagramKind::Affine;
  } else {
    throw Error(ErrorKind::InvalidMatrix, label_ + ": indefinite");
  }
}

CartanEntries GeneralizedCartanMatrix::symmetrized() const {
  CartanEntries b = entries_;
  for (int i = 0; i < rank(); ++i) b.row(i) *= symmetrizer_(i);
  return b;
}

void GeneralizedCartanMatrix::check_node(int index) const {
  if (index < 0 || index >= rank())
    throw Error(ErrorKind::InvalidNode, label_ + ": node index " + std::to_string(index));
}

int GeneralizedCartanMatrix::node_label(int index) const {
  check_node(index);
  return node_labels_[index];
}

int GeneralizedCartanMatrix::node_index(int label) const {
  const auto it = std::find(node_labels_.begin(), node_labels_.end(), label);
  if (it == node_labels_.end())
    throw Error(ErrorKind::InvalidNode, label_ + ": no node labelled " + std::to_string(label));
  return static_cast<int>(it - node_labels_.begin());
}

GeneralizedCartanMatrix GeneralizedCartanMatrix::subdiagram(std::span<const int> nodes, std::string label) const {
  const int k = static_cast<int>(nodes.size());
  CartanEntries a(k, k);
  std::vector<int> labels;
  for (int r = 0; r < k; ++r) {
    check_node(nodes[r]);
    labels.push_back(node_labels_[nodes[r]]);
    for (int c = 0; c < k; ++c) a(r, c) = entries_(nodes[r], nodes[c]);
  }
  return GeneralizedCartanMatrix(std::move(label), std::move(a), std::move(labels));
}

// --- catalog --------------------------------------------------------------

GeneralizedCartanMatrix catalog(std::string_view label) {
  const auto parsed = parse_label(label);
  if (!parsed) throw Error(ErrorKind::UnsupportedType, std::string(label));
  const auto [s, n, twist] = *parsed;
  const std::string name(label);
  if (twist == 0) {
    if (!finite_supported(s, n)) throw Error(ErrorKind::UnsupportedType, name);
    return finite_type(s, n, name);
  }
  if (twist == 1) {
    if (!untwisted_supported(s, n)) throw Error(ErrorKind::UnsupportedType, name);
    return untwisted_affine(finite_type(s, n, std::string(1, s) + std::to_string(n)), name);
  }
  if (twist == 3 && s == 'D' && n == 4) {
    // 0 - 1 <= 2, alpha_2 long; marks (1, 2, 1)
    CartanEntries a = chain(3);
    a(1, 2) = -3;
    return GeneralizedCartanMatrix(name, std::move(a), {0, 1, 2});
  }
  if (twist == 2 && s == 'E' && n == 6) {
    // 0 - 1 - 2 <= 3 - 4, alpha_0..alpha_2 short; marks (1, 2, 3, 2, 1)
    CartanEntries a = chain(5);
    a(2, 3) = -2;
    return GeneralizedCartanMatrix(name, std::move(a), {0, 1, 2, 3, 4});
  }
  throw Error(ErrorKind::UnsupportedType, name);
}

std::vector<std::string> catalog_labels(int nodes) {
  std::vector<std::string> out;
  for (char s : std::string("ABCDEFG"))
    if (finite_supported(s, nodes)) out.push_back(std::string(1, s) + std::to_string(nodes));
  for (char s : std::string("ABCDEFG"))
    if (untwisted_supported(s, nodes - 1)) out.push_back(std::string(1, s) + std::to_string(nodes - 1) + "~1");
  if (nodes == 3) out.emplace_back("D4~3");
  if (nodes == 5) out.emplace_back("E6~2");
  return out;
}

// --- root arithmetic ------------------------------------------------------

Root simple_root(const GeneralizedCartanMatrix& gcm, int i) {
  gcm.check_node(i);
  Root r = Root::Zero(gcm.rank());
  r(i) = 1;
  return r;
}

int inner(const GeneralizedCartanMatrix& gcm, const Root& a, const Root& b) {
  int total = 0;
  for (int i = 0; i < gcm.rank(); ++i) {
    if (a(i) == 0) continue;
    int row = 0;
    for (int j = 0; j < gcm.rank(); ++j) row += gcm.entry(i, j) * b(j);
    total += a(i) * gcm.symmetrizer()(i) * row;
  }
  return total;
}

int norm(const GeneralizedCartanMatrix& gcm, const Root& beta) { return inner(gcm, beta, beta); }

int pairing(const GeneralizedCartanMatrix& gcm, const Root& beta, int i) {
  gcm.check_node(i);
  int total = 0;
  for (int j = 0; j < gcm.rank(); ++j) total += gcm.entry(i, j) * beta(j);
  return total;
}

Coeffs coroot_coeffs(const GeneralizedCartanMatrix& gcm, const Root& beta) {
  const int nb = norm(gcm, beta);
  if (nb <= 0) throw Error(ErrorKind::NoCoroot, gcm.label() + ": root of norm " + std::to_string(nb));
  Coeffs out(gcm.rank());
  for (int i = 0; i < gcm.rank(); ++i) {
    const int num = 2 * beta(i) * gcm.symmetrizer()(i);
    if (num % nb != 0) throw Error(ErrorKind::InternalError, gcm.label() + ": non-integral coroot");
    out(i) = num / nb;
  }
  return out;
}

Coeffs null_root_marks(const GeneralizedCartanMatrix& gcm) {
  const int n = gcm.rank();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = gcm.entry(i, j);

  // reduced row echelon form
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int p = row;
    while (p < n && m[p][col].numerator() == 0) ++p;
    if (p == n) continue;
    std::swap(m[row], m[p]);
    const Rational lead = m[row][col];
    for (auto& x : m[row]) x /= lead;
    for (int r = 0; r < n; ++r) {
      if (r == row || m[r][col].numerator() == 0) continue;
      const Rational f = m[r][col];
      for (int c = 0; c < n; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (n - row != 1)
    throw Error(ErrorKind::NotAffine, gcm.label() + ": kernel dimension " + std::to_string(n - row));

  int free_col = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
  std::vector<Rational> v(n, Rational(0));
  v[free_col] = 1;
  for (int r = 0; r < row; ++r) v[pivot_col[r]] = -m[r][free_col];

  std::int64_t den = 1;
  for (const auto& x : v) den = std::lcm(den, x.denominator());
  std::int64_t g = 0;
  for (const auto& x : v) g = std::gcd(g, x.numerator() * (den / x.denominator()));
  Coeffs marks(n);
  for (int i = 0; i < n; ++i) marks(i) = static_cast<int>(v[i].numerator() * (den / v[i].denominator()) / g);
  if (marks.sum() < 0) marks = -marks;
  if ((marks.array() <= 0).any()) throw Error(ErrorKind::NotAffine, gcm.label() + ": kernel not positive");
  return marks;
}

int long_root_norm(const GeneralizedCartanMatrix& gcm) { return 2 * gcm.symmetrizer().maxCoeff(); }

bool descends_to_simple(const GeneralizedCartanMatrix& gcm, Root beta) {
  if (!is_positive(beta)) return false;
  while (height(beta) > 1) {
    int step = -1;
    for (int i = 0; i < gcm.rank(); ++i) {
      if (beta(i) > 0 && pairing(gcm, beta, i) > 0) {
        step = i;
        break;
      }
    }
    if (step < 0) return false;
    beta(step) -= pairing(gcm, beta, step);
    if (!is_positive(beta)) return false;
  }
  return true;
}

std::size_t RootHash::operator()(const Root& r) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(r(i)));
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// --- RootSet --------------------------------------------------------------

int default_height_cutoff(const GeneralizedCartanMatrix& gcm) {
  if (gcm.is_finite()) return height(RootSet(gcm).highest_root());
  std::vector<int> rest;
  const int affine_node = gcm.node_index(0);
  for (int i = 0; i < gcm.rank(); ++i)
    if (i != affine_node) rest.push_back(i);
  const GeneralizedCartanMatrix underlying = gcm.subdiagram(rest, gcm.label() + "/0");
  return 2 * height(null_root_marks(gcm)) + height(RootSet(underlying).highest_root());
}

namespace {
constexpr int kUnboundedCutoff = 1 << 20;
}

RootSet::RootSet(GeneralizedCartanMatrix gcm) : RootSet(gcm, gcm.is_finite() ? kUnboundedCutoff : default_height_cutoff(gcm)) {
  if (gcm_.is_finite()) cutoff_ = height(roots_.back());
}

RootSet::RootSet(GeneralizedCartanMatrix gcm, int height_cutoff) : gcm_(std::move(gcm)), cutoff_(height_cutoff) {
  if (cutoff_ < 1) throw Error(ErrorKind::InternalError, "height cutoff must be >= 1");
  const int n = gcm_.rank();

  std::vector<Root> level;
  for (int i = 0; i < n; ++i) level.push_back(simple_root(gcm_, i));
  int h = 1;
  while (!level.empty()) {
    if (h > cutoff_) {
      truncated_ = true;
      break;
    }
    for (auto& r : level) {
      index_.emplace(r, roots_.size());
      roots_.push_back(std::move(r));
    }
    const std::size_t begin = roots_.size() - level.size();
    level.clear();
    std::unordered_map<Root, char, RootHash, RootEqual> seen;
    for (std::size_t k = begin; k < roots_.size(); ++k) {
      const Root beta = roots_[k];
      for (int i = 0; i < n; ++i) {
        int p = 0;
        Root down = beta;
        while (true) {
          down(i) -= 1;
          if (down(i) < 0 || !index_.contains(down)) break;
          ++p;
        }
        if (p - pairing(gcm_, beta, i) > 0) {
          Root up = beta;
          up(i) += 1;
          if (seen.emplace(up, 1).second) level.push_back(std::move(up));
        }
      }
    }
    ++h;
  }

  real_.reserve(roots_.size());
  for (const auto& r : roots_) real_.push_back(norm(gcm_, r) > 0 && descends_to_simple(gcm_, r) ? 1 : 0);
}

std::size_t RootSet::real_count() const { return static_cast<std::size_t>(std::count(real_.begin(), real_.end(), 1)); }

std::optional<std::size_t> RootSet::find(const Root& beta) const {
  const auto it = index_.find(beta);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void RootSet::require_within_cutoff(const Root& beta) const {
  if (beta.size() != gcm_.rank()) throw Error(ErrorKind::InternalError, "root length mismatch");
  if (truncated_ && height(beta) > cutoff_ - kCutoffMargin)
    throw Error(ErrorKind::HeightCutoffExceeded,
                gcm_.label() + ": query of height " + std::to_string(height(beta)) + " against cutoff " +
                    std::to_string(cutoff_));
}

bool RootSet::contains(const Root& beta) const {
  if (!is_positive(beta)) return false;
  require_within_cutoff(beta);
  return index_.contains(beta);
}

bool RootSet::contains_real(const Root& beta) const {
  if (!is_positive(beta)) return false;
  require_within_cutoff(beta);
  const auto k = find(beta);
  return k && is_real(*k);
}

bool RootSet::is_root(const Root& beta) const { return contains(beta) || contains(Root(-beta)); }

const Root& RootSet::highest_root() const {
  if (!gcm_.is_finite() || truncated_ || roots_.empty())
    throw Error(ErrorKind::NotFinite, gcm_.label() + ": no highest root");
  return roots_.back();
}

}  // namespace lieab
