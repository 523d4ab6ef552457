#include <doctest.h>

#include "support.hpp"

using namespace lieab;
using testing::Vec;

namespace {

WeylWord word(std::initializer_list<int> letters) { return WeylWord{std::vector<int>(letters)}; }

}  // namespace

TEST_CASE("simple reflections on roots") {
  const auto a2 = catalog("A2");
  CHECK(reflect_root(a2, 0, simple_root(a2, 0)) == Root(-simple_root(a2, 0)));
  CHECK(testing::to_vec(reflect_root(a2, 0, testing::to_root({0, 1}))) == Vec{1, 1});

  const auto a3 = catalog("A3");
  const Root a3_3 = simple_root(a3, 2);
  CHECK(reflect_root(a3, 0, a3_3) == a3_3);  // orthogonal

  CHECK_THROWS_AS((void)reflect_root(a2, 5, simple_root(a2, 0)), Error);
  CHECK_THROWS_AS(check_word(a2, word({0, 2})), Error);
}

TEST_CASE("reflections are involutions on roots and weights") {
  testing::Rng rng(11);
  for (const char* label : {"A3", "B3", "G2", "F4", "G2~1", "D4~3"}) {
    const auto gcm = catalog(label);
    for (int trial = 0; trial < 200; ++trial) {
      Root beta(gcm.rank());
      Weight lambda(gcm.rank());
      for (int i = 0; i < gcm.rank(); ++i) {
        beta(i) = rng.uniform(-5, 5);
        lambda(i) = rng.uniform(-5, 5);
      }
      const int i = rng.uniform(0, gcm.rank() - 1);
      CHECK(reflect_root(gcm, i, reflect_root(gcm, i, beta)) == beta);
      CHECK(reflect_weight(gcm, i, reflect_weight(gcm, i, lambda)) == lambda);
    }
  }
}

TEST_CASE("weight action") {
  const auto a2 = catalog("A2");
  const Weight rho = DominantWeight::rho(a2).coeffs();
  CHECK(act_on_weight(a2, WeylWord{}, rho) == rho);
  // s_1(omega_1) = omega_1 - alpha_1 = (-1, 1)
  CHECK(testing::to_vec(reflect_weight(a2, 0, DominantWeight::fundamental(a2, 0).coeffs())) == Vec{-1, 1});

  // w0(rho) = -rho, with w0 found by brute force as the element of W(A2)
  // sending every positive root negative.
  const auto group = testing::weyl_group(a2);
  CHECK(group.size() == 6);
  std::size_t longest = 0;
  for (const auto& g : group) {
    if (testing::brute_inversion_set(a2, g).size() == 3) ++longest;
  }
  CHECK(longest == 1);
  CHECK(act_on_weight(a2, word({0, 1, 0}), rho) == Weight(-rho));
  CHECK(act_on_weight(a2, longest_element(RootSet(a2)), rho) == Weight(-rho));

  CHECK_THROWS_AS(DominantWeight(a2, testing::to_root({1, -1})), Error);
  CHECK_THROWS_AS(DominantWeight(a2, testing::to_root({1, 1, 1})), Error);
}

TEST_CASE("inversion sets against the brute-force group") {
  const auto a2 = catalog("A2");
  CHECK(inversion_set(a2, WeylWord{}).empty());
  CHECK(inversion_set(a2, word({0, 0})).empty());
  const auto full = inversion_set(a2, word({0, 1, 0}));
  CHECK(testing::as_set(full) == testing::orbit_positive_roots(a2));
  CHECK(is_reduced(a2, word({0, 1})));
  CHECK_FALSE(is_reduced(a2, word({0, 0})));

  testing::Rng rng(23);
  for (const char* label : {"A2", "A3", "B3", "C3", "G2", "B2"}) {
    const auto gcm = catalog(label);
    const RootSet roots(gcm);
    for (int trial = 0; trial < 300; ++trial) {
      const WeylWord w = testing::random_word(gcm.rank(), 8, rng);
      const auto expected = testing::brute_inversion_set(gcm, testing::matrix_of_word(gcm, w));
      const auto got = inversion_set(roots, w);
      CHECK(testing::as_set(got) == expected);
      CHECK(got.size() == expected.size());
      CHECK(got.size() <= w.length());
      CHECK(is_reduced(gcm, w) == (got.size() == w.length()));
      CHECK(is_reduced(roots, w) == is_reduced(gcm, w));
    }
  }
}

TEST_CASE("exchange: one more letter changes the inversion set by one root") {
  testing::Rng rng(5);
  std::size_t cases = 0;
  for (const char* label : {"A3", "B3", "G2"}) {
    const auto gcm = catalog(label);
    for (int trial = 0; trial < 500; ++trial) {
      const WeylWord w = testing::random_word(gcm.rank(), 10, rng);
      WeylWord longer = w;
      longer.letters.push_back(rng.uniform(0, gcm.rank() - 1));
      const auto before = testing::as_set(inversion_set(gcm, w));
      const auto after = testing::as_set(inversion_set(gcm, longer));
      const long diff = static_cast<long>(after.size()) - static_cast<long>(before.size());
      CHECK((diff == 1 || diff == -1));
      ++cases;
    }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("longest elements") {
  CHECK(longest_element(RootSet(catalog("A1"))).letters == std::vector<int>{0});
  CHECK(longest_element(RootSet(catalog("A2"))).length() == 3);
  CHECK(longest_element(RootSet(catalog("G2"))).length() == 6);

  const std::map<std::string, std::size_t> lengths{{"F4", 24}, {"E6", 36}, {"E7", 63}, {"E8", 120}, {"D4", 12}};
  for (const auto& [label, len] : lengths) {
    const RootSet roots(catalog(label));
    const WeylWord w0 = longest_element(roots);
    CHECK(w0.length() == len);
    CHECK(is_reduced(roots, w0));
  }

  std::vector<std::string> classical;
  for (int n = 1; n <= 12; ++n) classical.push_back("A" + std::to_string(n));
  for (int n = 2; n <= 12; ++n) classical.push_back("B" + std::to_string(n));
  for (int n = 3; n <= 12; ++n) classical.push_back("C" + std::to_string(n));
  for (int n = 4; n <= 12; ++n) classical.push_back("D" + std::to_string(n));
  for (const auto& label : classical) {
    CAPTURE(label);
    const RootSet roots(catalog(label));
    CHECK(testing::as_set(inversion_set(roots, longest_element(roots))) == testing::as_set(roots.roots()));
  }

  CHECK_THROWS_AS((void)longest_element(RootSet(catalog("A2~1"))), Error);

  // parabolic on the image of G2 inside G2~1
  const auto g21 = catalog("G2~1");
  const std::vector<int> nodes{1, 2};
  const WeylWord w = longest_element(g21, nodes);
  CHECK(w.length() == 6);
  CHECK(is_reduced(g21, w));
  for (int letter : w.letters) CHECK((letter == 1 || letter == 2));
}

TEST_CASE("words from inversion sets") {
  const auto a2 = catalog("A2");
  const RootSet a2_roots(a2);
  CHECK(word_from_inversion_set({}, a2_roots).empty());
  const std::vector<Root> single{simple_root(a2, 0)};
  CHECK(word_from_inversion_set(single, a2_roots).letters == std::vector<int>{0});

  // {alpha_1 + alpha_2} alone is not an inversion set
  const std::vector<Root> bad{testing::to_root({1, 1})};
  try {
    (void)word_from_inversion_set(bad, a2_roots);
    FAIL("non-biconvex set accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotBiconvex);
  }
  const std::vector<Root> not_closed{simple_root(a2, 0), simple_root(a2, 1)};
  CHECK_THROWS_AS((void)word_from_inversion_set(not_closed, a2_roots), Error);
}

TEST_CASE("inversion set round trip") {
  testing::Rng rng(1234);
  std::size_t cases = 0;
  for (const char* label : {"A3", "B3", "C4", "D4", "G2", "F4", "E6", "G2~1", "D4~3", "A2~1", "C2~1"}) {
    const auto gcm = catalog(label);
    const RootSet roots(gcm, gcm.is_finite() ? 1 << 20 : 40);
    for (int trial = 0; trial < 120; ++trial) {
      const WeylWord w = testing::random_reduced_word(gcm, 9, rng);
      const auto set = inversion_set(roots, w);
      const WeylWord back = word_from_inversion_set(set, roots);
      CHECK(back.length() == w.length());
      CHECK(is_reduced(roots, back));
      CHECK(same_root_set(inversion_set(roots, back), set));
      ++cases;
    }
  }
  CHECK(cases >= 1000);
}

TEST_CASE("same_root_set ignores order and duplicates") {
  const auto a2 = catalog("A2");
  const std::vector<Root> x{simple_root(a2, 0), simple_root(a2, 1)};
  const std::vector<Root> y{simple_root(a2, 1), simple_root(a2, 0), simple_root(a2, 1)};
  const std::vector<Root> z{simple_root(a2, 1)};
  CHECK(same_root_set(x, y));
  CHECK_FALSE(same_root_set(x, z));
}
