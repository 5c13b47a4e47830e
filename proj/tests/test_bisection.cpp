#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "cg/bisection.hpp"
#include "cg/error.hpp"
#include "cg/random_gen.hpp"

using namespace cg;

namespace {

TwistTable random_tt(const ActionPtr& action, Rng& rng, int max_splits = 4) {
  return random_twist_table(action, rng, max_splits);
}

// A possibly-partial bisection: J of a random table with some parts dropped.
Bisection random_partial(const OraclePtr& g, Rng& rng) {
  Bisection full = J_map(random_table(g, rng));
  std::vector<WordPart> parts = full.word_parts();
  while (parts.size() > 1 && rng() % 3 == 0)
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(rng() % parts.size()));
  return Bisection::make_words(std::move(parts), g);
}

Bisection random_partial_twisted(const ActionPtr& action, Rng& rng) {
  Bisection full = J_map_twisted(random_tt(action, rng, 3));
  std::vector<TwistPart> parts = full.twist_parts();
  while (parts.size() > 1 && rng() % 3 == 0)
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(rng() % parts.size()));
  return Bisection::make_twisted(std::move(parts), action);
}

ClopenSet random_clopen(Rng& rng) {
  // random refinement of the full space, keep a nonempty random subset
  std::vector<Word> blocks{Word{}};
  int steps = static_cast<int>(rng() % 5);
  for (int i = 0; i < steps; ++i) {
    std::size_t bi = rng() % blocks.size();
    Word w = blocks[bi];
    blocks[bi] = w + '0';
    blocks.push_back(w + '1');
  }
  std::vector<Word> keep;
  for (const auto& w : blocks)
    if (rng() % 2) keep.push_back(w);
  if (keep.empty()) keep.push_back(blocks[rng() % blocks.size()]);
  return ClopenSet::from_words(std::move(keep));
}

ClopenSet random_clopen_twisted(const SAction& action, Rng& rng) {
  auto bricks = random_brick_partition(action, rng, static_cast<int>(rng() % 4));
  std::vector<BrickFn> keep;
  for (const auto& b : bricks)
    if (rng() % 2) keep.push_back(b);
  if (keep.empty()) keep.push_back(bricks[rng() % bricks.size()]);
  return ClopenSet::from_bricks(std::move(keep));
}

Bisection std_part(const Word& img, const Word& dom, const OraclePtr& g) {
  return Bisection::make_words({WordPart{img, dom, g->identity()}}, g);
}

}  // namespace

TEST_CASE("clopen sets") {
  auto u = ClopenSet::from_words({"10", "0"});
  CHECK(u.words() == std::vector<Word>{"0", "10"});
  CHECK(!u.is_complete());
  CHECK(ClopenSet::from_words({"0", "10", "11"}).is_complete());
  // sibling blocks merge
  CHECK(ClopenSet::from_words({"0", "1"}) == ClopenSet::from_words({Word{}}));
  CHECK_THROWS_AS(ClopenSet::from_words({"0", "01"}), Error);
  CHECK(ClopenSet::from_words({}).empty());

  CHECK(clopen_subset(ClopenSet::from_words({"00"}), u));
  CHECK(!clopen_subset(u, ClopenSet::from_words({"00"})));
  CHECK(clopen_subset(ClopenSet::from_words({}), u));
}

TEST_CASE("source and range of standard parts") {
  auto triv = trivial_group();
  Bisection b = std_part("1", "0", triv);
  CHECK(source(b) == ClopenSet::from_words({"0"}));
  CHECK(range(b) == ClopenSet::from_words({"1"}));
  CHECK(!is_full(b));
  CHECK(b.word_parts()[0].shift_exponent() == 0);

  Bisection unit = unit_bisection(ClopenSet::from_words({Word{}}), triv);
  CHECK(source(unit) == range(unit));
  CHECK(source(unit).is_complete());
  CHECK(is_full(unit));
}

TEST_CASE("composition of standard parts") {
  auto triv = trivial_group();
  // round trip on a brick gives the unit over that brick
  Bisection a = std_part("1", "0", triv);
  Bisection r = compose(a, invert(a));
  CHECK(bisection_eq(r, unit_bisection(ClopenSet::from_words({"1"}), triv)));
  CHECK(bisection_eq(compose(invert(a), a),
                     unit_bisection(ClopenSet::from_words({"0"}), triv)));

  // shift exponents add: (img e, dom 0) after (img 0, dom 00)
  Bisection p = std_part("", "0", triv);
  Bisection q = std_part("0", "00", triv);
  Bisection pq = compose(p, q);
  REQUIRE(pq.word_parts().size() == 1);
  CHECK(pq.word_parts()[0].img == "");
  CHECK(pq.word_parts()[0].dom == "00");
  CHECK(pq.word_parts()[0].shift_exponent() ==
        p.word_parts()[0].shift_exponent() + q.word_parts()[0].shift_exponent());

  // disjoint locus composes to the empty bisection
  Bisection empty = compose(std_part("1", "0", triv), std_part("0", "1", triv));
  CHECK(!empty.empty());  // ranges/sources match here: 0 -> 1 then 1 -> 0
  Bisection really_empty =
      compose(std_part("0", "0", triv), std_part("1", "1", triv));
  CHECK(really_empty.empty());
}

TEST_CASE("groupoid laws on partial bisections") {
  auto s3 = symmetric_group_3();
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    Bisection a = random_partial(s3, rng);
    Bisection b = random_partial(s3, rng);
    Bisection c = random_partial(s3, rng);
    CHECK(bisection_eq(compose(compose(a, b), c), compose(a, compose(b, c))));
    CHECK(bisection_eq(invert(invert(a)), a));
    CHECK(bisection_eq(invert(compose(a, b)),
                       compose(invert(b), invert(a))));
    // a . a^-1 is the unit over the range
    CHECK(bisection_eq(compose(a, invert(a)),
                       unit_bisection(range(a), a.oracle())));
    // shift-exponent additivity on the composite parts: pick a point of the
    // composite domain block and locate the two parts that act on it (b
    // first, then a)
    Bisection ab = compose(a, b);
    for (const auto& part : ab.word_parts()) {
      CantorPoint x(part.dom, "0");
      long long n = 0;
      bool found = false;
      for (const auto& pb : b.word_parts()) {
        if (!x.has_prefix(pb.dom)) continue;
        CantorPoint y = prepend(pb.img, *strip_prefix(pb.dom, x));
        for (const auto& pa : a.word_parts())
          if (y.has_prefix(pa.dom)) {
            n = pa.shift_exponent() + pb.shift_exponent();
            found = true;
          }
      }
      REQUIRE(found);
      CHECK(part.shift_exponent() == n);
    }
  }
}

TEST_CASE("fullness is preserved by the group operations") {
  auto s3 = symmetric_group_3();
  Rng rng(19);
  for (int t = 0; t < 200; ++t) {
    Bisection a = J_map(random_table(s3, rng));
    Bisection b = J_map(random_table(s3, rng));
    CHECK(is_full(a));
    CHECK(is_full(compose(a, b)));
    CHECK(is_full(invert(a)));
  }
}

TEST_CASE("I and J are mutually inverse isomorphisms") {
  auto s3 = symmetric_group_3();
  CHECK(bisection_eq(J_map(GTable::identity(s3)),
                     unit_bisection(ClopenSet::from_words({Word{}}), s3)));

  // J(iota0(g)) has the label on the 0-block and identity on the 1-block
  GroupElem g1 = s3->parse("1");
  Bisection j = J_map(iota0(g1, s3));
  REQUIRE(j.word_parts().size() == 2);
  CHECK(j.word_parts()[0].dom == "0");
  CHECK(j.word_parts()[0].img == "0");
  CHECK(s3->equals(j.word_parts()[0].label, g1));
  CHECK(s3->equals(j.word_parts()[1].label, s3->identity()));

  Rng rng(29);
  for (int t = 0; t < 300; ++t) {
    GTable a = random_table(s3, rng);
    GTable b = random_table(s3, rng);
    CHECK(eq(I_map(J_map(a)), a));
    CHECK(bisection_eq(J_map(mul(a, b)), compose(J_map(a), J_map(b))));
    CHECK(eq(I_map(compose(J_map(a), J_map(b))), mul(a, b)));
    Bisection full = J_map(a);
    CHECK(bisection_eq(J_map(I_map(full)), full));
  }

  // the two allowed lifting choices give the same parts: the stored label is
  // k^-1 h in both conventions
  for (int t = 0; t < 100; ++t) {
    GTable a = random_table(s3, rng);
    std::vector<WordPart> alt;
    for (const auto& s : a.slots()) {
      GroupElem k = s3->invert(s.label);  // k = g^-1, h = e
      alt.push_back(
          WordPart{s.img, s.dom, s3->multiply(s3->invert(k), s3->identity())});
    }
    CHECK(bisection_eq(Bisection::make_words(std::move(alt), s3), J_map(a)));
  }

  CHECK_THROWS_AS(I_map(std_part("1", "0", trivial_group())), Error);
}

TEST_CASE("twisted dictionary") {
  auto z = action_translation_z();
  auto g = z->oracle();
  GroupElem plus1 = g->parse("(1)");

  CHECK(bisection_eq(
      J_map_twisted(TwistTable::identity(z)),
      unit_bisection_twisted(ClopenSet::from_bricks({BrickFn{}}), z)));

  // the global twist is a single part with unit words and label gamma
  Bisection jt = J_map_twisted(TwistTable::tau(plus1, z));
  REQUIRE(jt.twist_parts().size() == 1);
  CHECK(jt.twist_parts()[0].cw.empty());
  CHECK(g->equals(jt.twist_parts()[0].label, plus1));
  CHECK(tt_eq(I_map_twisted(jt), TwistTable::tau(plus1, z)));

  // the semidirect source formula: part with w' at s1 and w at s0, label +1,
  // has source brick at coordinate -1
  SElem s0 = z->parse_s("0");
  SElem s1 = z->parse_s("1");
  SElem sm1 = z->parse_s("-1");
  TwistPart part;
  part.label = plus1;
  part.cw[s1].first = "1";
  part.cw[s0].second = "0";
  // complete to a full bisection is unnecessary for source/range
  Bisection tb = Bisection::make_twisted({part}, z);
  CHECK(source(tb) ==
        ClopenSet::from_bricks({BrickFn::make({{sm1, "0"}})}));
  CHECK(range(tb) == ClopenSet::from_bricks({BrickFn::make({{s1, "1"}})}));

  Rng rng(37);
  for (int t = 0; t < 200; ++t) {
    TwistTable a = random_tt(z, rng, 3);
    TwistTable b = random_tt(z, rng, 3);
    CHECK(is_full(J_map_twisted(a)));
    CHECK(tt_eq(I_map_twisted(J_map_twisted(a)), a));
    CHECK(bisection_eq(J_map_twisted(tt_mul(a, b)),
                       compose(J_map_twisted(a), J_map_twisted(b))));
    CHECK(tt_eq(I_map_twisted(compose(J_map_twisted(a), J_map_twisted(b))),
                tt_mul(a, b)));
  }

  CHECK_THROWS_AS(I_map_twisted(tb), Error);  // not full
}

TEST_CASE("groupoid laws on partial twisted bisections") {
  auto z = action_translation_z();
  Rng rng(41);
  for (int t = 0; t < 150; ++t) {
    Bisection a = random_partial_twisted(z, rng);
    Bisection b = random_partial_twisted(z, rng);
    Bisection c = random_partial_twisted(z, rng);
    CHECK(bisection_eq(compose(compose(a, b), c), compose(a, compose(b, c))));
    CHECK(bisection_eq(invert(invert(a)), a));
    CHECK(bisection_eq(invert(compose(a, b)),
                       compose(invert(b), invert(a))));
    CHECK(bisection_eq(compose(a, invert(a)),
                       unit_bisection_twisted(range(a), z)));
  }
}

TEST_CASE("minimality witnesses") {
  auto triv = trivial_group();

  // single-brick case: full space into {0}
  Bisection w = min_witness(ClopenSet::from_words({Word{}}),
                            ClopenSet::from_words({"0"}), triv);
  REQUIRE(w.word_parts().size() == 1);
  CHECK(w.word_parts()[0].img == "0");
  CHECK(w.word_parts()[0].dom == "");
  CHECK(w.word_parts()[0].shift_exponent() == -1);

  // subdivision case
  Bisection w2 = min_witness(ClopenSet::from_words({"00", "01"}),
                             ClopenSet::from_words({"11"}), triv);
  CHECK(source(w2) == ClopenSet::from_words({"0"}));
  CHECK(clopen_subset(range(w2), ClopenSet::from_words({"11"})));

  CHECK_THROWS_AS(min_witness(ClopenSet::from_words({Word{}}),
                              ClopenSet::from_words({}), triv),
                  Error);

  Rng rng(53);
  for (int t = 0; t < 300; ++t) {
    ClopenSet u = random_clopen(rng);
    ClopenSet v = random_clopen(rng);
    Bisection sigma = min_witness(u, v, triv);
    CHECK(source(sigma) == u);
    CHECK(clopen_subset(range(sigma), v));
  }

  // twisted flavor
  auto z = action_translation_z();
  SElem s0 = z->parse_s("0");
  Bisection tw = min_witness_twisted(
      ClopenSet::from_bricks({BrickFn{}}),
      ClopenSet::from_bricks({BrickFn::make({{s0, "0"}})}), z);
  REQUIRE(tw.twist_parts().size() == 1);
  CHECK(range(tw) == ClopenSet::from_bricks({BrickFn::make({{s0, "0"}})}));
  CHECK(source(tw) == ClopenSet::from_bricks({BrickFn{}}));
  CHECK(z->oracle()->is_identity(tw.twist_parts()[0].label));

  for (int t = 0; t < 200; ++t) {
    ClopenSet u = random_clopen_twisted(*z, rng);
    ClopenSet v = random_clopen_twisted(*z, rng);
    Bisection sigma = min_witness_twisted(u, v, z);
    CHECK(source(sigma) == u);
    CHECK(clopen_subset(range(sigma), v));
  }
}

TEST_CASE("isotropy points") {
  auto triv = trivial_group();
  GroupElem e = triv->identity();

  auto pts = isotropy_points(WordPart{"", "0", e}, 2);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == CantorPoint("", "0"));

  CHECK(isotropy_points(WordPart{"1", "0", e}, 3).empty());

  auto pts2 = isotropy_points(WordPart{"", "01", e}, 3);
  REQUIRE(pts2.size() == 1);
  CHECK(pts2[0] == CantorPoint("", "01"));

  // expanding side: dom is a prefix of img
  auto pts3 = isotropy_points(WordPart{"01", "0", e}, 3);
  REQUIRE(pts3.size() == 1);
  CHECK(pts3[0] == CantorPoint("0", "1"));

  CHECK_THROWS_AS(isotropy_points(WordPart{"0", "0", e}, 3), Error);

  // brute-force agreement: the returned set matches a scan over all
  // eventually periodic points with small preperiod and period
  Rng rng(61);
  auto points = enumerate_points(4, 16);
  for (int t = 0; t < 200; ++t) {
    // random standard part from a random table slot
    GTable a = random_table(trivial_group(), rng);
    const TableSlot& slot = a.slots()[rng() % a.size()];
    WordPart part{slot.img, slot.dom, e};
    if (part.dom == part.img) continue;
    auto got = isotropy_points(part, 4);
    std::vector<CantorPoint> expect;
    for (const auto& x : points) {
      if (!x.has_prefix(part.dom)) continue;
      if (prepend(part.img, *strip_prefix(part.dom, x)) == x)
        expect.push_back(x);
    }
    // drop scan hits whose canonical preperiod exceeds the bound
    std::erase_if(expect, [](const CantorPoint& x) {
      return x.preperiod().size() > 4;
    });
    CHECK(got == expect);
    for (const auto& x : got) {
      REQUIRE(x.has_prefix(part.dom));
      CHECK(prepend(part.img, *strip_prefix(part.dom, x)) == x);
    }
  }
}
