#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "ssgc/label.hpp"

using namespace ssgc;

namespace {

const SchemeParams k2{2};

Label L(ProcessorId c, Sting s, std::vector<Sting> a,
        const SchemeParams& p = k2) {
  return Label::make(p, c, s, std::move(a));
}

}  // namespace

TEST_CASE("cmp_label orders by creator first") {
  CHECK(cmp_label(L(1, 2, {1, 3}), L(2, 2, {1, 3})) == LabelOrdering::Less);
  CHECK(cmp_label(L(2, 2, {1, 3}), L(1, 2, {1, 3})) == LabelOrdering::Greater);
  CHECK(cmp_label(L(1, 2, {1, 3}), L(1, 2, {1, 3})) == LabelOrdering::Equal);
}

TEST_CASE("same creator, stings in each other's antistings") {
  CHECK(cmp_label(L(1, 2, {4, 5}), L(1, 4, {2, 3})) ==
        LabelOrdering::Incomparable);
  // 2 in {2,3}, 4 not in {1,5}
  CHECK(cmp_label(L(1, 2, {1, 5}), L(1, 4, {2, 3})) == LabelOrdering::Less);
}

TEST_CASE("cancels") {
  CHECK(cancels(L(1, 4, {2, 3}), L(1, 2, {4, 5})));
  CHECK_FALSE(cancels(L(2, 2, {1, 3}), L(1, 2, {1, 3})));
  CHECK_FALSE(cancels(L(1, 2, {1, 3}), L(1, 2, {1, 3})));
  CHECK(cancels(L(1, 4, {2, 3}), L(1, 2, {1, 5})));
}

TEST_CASE("cmp_label is antisymmetric over every k=2 label") {
  std::vector<Label> all;
  for (ProcessorId c = 0; c < 2; ++c)
    for (Sting s = 1; s <= 5; ++s)
      for (Sting a = 1; a <= 5; ++a)
        for (Sting b = a + 1; b <= 5; ++b) all.push_back(L(c, s, {a, b}));
  REQUIRE(all.size() == 100);
  for (const Label& x : all) {
    CHECK(cmp_label(x, x) == LabelOrdering::Equal);
    for (const Label& y : all) {
      const LabelOrdering xy = cmp_label(x, y);
      const LabelOrdering yx = cmp_label(y, x);
      switch (xy) {
        case LabelOrdering::Less: CHECK(yx == LabelOrdering::Greater); break;
        case LabelOrdering::Greater: CHECK(yx == LabelOrdering::Less); break;
        case LabelOrdering::Equal:
          CHECK(yx == LabelOrdering::Equal);
          CHECK(x == y);
          break;
        case LabelOrdering::Incomparable:
          CHECK(yx == LabelOrdering::Incomparable);
          break;
      }
    }
  }
}

TEST_CASE("next_label worked examples") {
  const std::vector<Label> in{L(3, 3, {1, 2})};
  const Label out = next_label(k2, 3, in);
  CHECK(out == L(3, 4, {1, 3}));
  CHECK(cmp_label(in[0], out) == LabelOrdering::Less);

  const Label first = next_label(k2, 7, {});
  CHECK(first == L(7, 3, {1, 2}));
  const SchemeParams k5{5};
  CHECK(next_label(k5, 0, {}) == L(0, 6, {1, 2, 3, 4, 5}, k5));
}

TEST_CASE("next_label rejects more than k inputs") {
  const std::vector<Label> in{L(0, 1, {2, 3}), L(0, 2, {1, 3}), L(0, 3, {1, 2})};
  CHECK_THROWS_AS(next_label(k2, 0, in), std::invalid_argument);
}

TEST_CASE("next_label dominates random same-creator inputs") {
  std::mt19937_64 rng(20261018);
  int cases = 0;
  for (; cases < 10000; ++cases) {
    const SchemeParams p{static_cast<std::uint32_t>(2 + rng() % 7)};
    const std::uint64_t d = p.domain_size();
    const std::size_t count = rng() % (p.k + 1);
    std::vector<Label> in;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<std::int64_t> anti;
      for (std::uint32_t j = 0; j < p.k; ++j)
        anti.push_back(static_cast<std::int64_t>(1 + rng() % d));
      in.push_back(Label::clamp(p, 4, 2, static_cast<std::int64_t>(1 + rng() % d),
                                anti));
    }
    const Label out = next_label(p, 2, in);
    REQUIRE(out.creator() == 2);
    REQUIRE(p.in_domain(out.sting()));
    REQUIRE(out.antistings().size() == p.k);
    for (const Label& l : in) REQUIRE(cmp_label(l, out) == LabelOrdering::Less);
  }
  CHECK(cases == 10000);
}

TEST_CASE("clamp normalizes hostile input") {
  const std::vector<std::int64_t> anti{-4, 99, 99};
  const Label l = Label::clamp(k2, 3, 17, 0, anti);
  CHECK(l.creator() == 17 % 3);
  CHECK(k2.in_domain(l.sting()));
  REQUIRE(l.antistings().size() == 2);
  CHECK(l.antistings()[0] != l.antistings()[1]);
}

TEST_CASE("render and parse round trip") {
  const Label l = L(3, 4, {1, 3});
  CHECK(render(l) == "3:4:{1,3}");
  CHECK(parse_label(k2, "3:4:{1,3}") == l);
  CHECK(parse_label(k2, "3:4:{3,1}") == l);
  CHECK_THROWS_AS(parse_label(k2, "3:4:{1}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_label(k2, "3:9:{1,3}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_label(k2, "x"), std::invalid_argument);
  CHECK(render_id(l).rfind("3:4:#", 0) == 0);
}
