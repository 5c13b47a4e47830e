#include "cg/random_gen.hpp"

#include <algorithm>

namespace cg {

namespace {

// A complete prefix code obtained from {e} by `steps` random splits.
std::vector<Word> random_partition_words(Rng& rng, int steps) {
  std::vector<Word> blocks{Word{}};
  for (int i = 0; i < steps; ++i) {
    std::size_t bi = rng() % blocks.size();
    Word w = blocks[bi];
    blocks[bi] = w + '0';
    blocks.push_back(w + '1');
  }
  return blocks;
}

}  // namespace

GTable random_table(const OraclePtr& oracle, Rng& rng, int max_expansions) {
  int steps = static_cast<int>(rng() % (max_expansions + 1));
  std::vector<Word> doms = random_partition_words(rng, steps);
  std::vector<Word> imgs = random_partition_words(rng, steps);
  std::shuffle(imgs.begin(), imgs.end(), rng);
  RawTable slots;
  for (std::size_t i = 0; i < doms.size(); ++i)
    slots.push_back(TableSlot{doms[i], imgs[i], oracle->sample(rng)});
  // make() reduces, so the result can be smaller than steps+1 slots.
  return GTable::make(std::move(slots), oracle);
}

std::vector<BrickFn> random_brick_partition(const SAction& action, Rng& rng,
                                            int steps) {
  auto pool = action.sample_coords();
  std::vector<BrickFn> bricks{BrickFn{}};
  for (int i = 0; i < steps; ++i) {
    std::size_t bi = rng() % bricks.size();
    SElem s = pool[rng() % pool.size()];
    Word w = bricks[bi].at(s);
    auto m0 = bricks[bi].support();
    auto m1 = bricks[bi].support();
    m0[s] = w + '0';
    m1[s] = w + '1';
    bricks[bi] = BrickFn::make(std::move(m0));
    bricks.push_back(BrickFn::make(std::move(m1)));
  }
  return bricks;
}

TwistTable random_twist_table(const ActionPtr& action, Rng& rng,
                              int max_splits) {
  int steps = static_cast<int>(rng() % (max_splits + 1));
  auto doms = random_brick_partition(*action, rng, steps);
  auto imgs = random_brick_partition(*action, rng, steps);
  std::shuffle(imgs.begin(), imgs.end(), rng);
  std::vector<TwistPiece> pieces;
  for (std::size_t i = 0; i < doms.size(); ++i)
    pieces.push_back({doms[i], action->oracle()->sample(rng), imgs[i]});
  return TwistTable::make(std::move(pieces), action);
}

Bisection random_word_bisection(const OraclePtr& oracle, Rng& rng) {
  Bisection full = J_map(random_table(oracle, rng));
  std::vector<WordPart> parts = full.word_parts();
  while (parts.size() > 1 && rng() % 3 == 0)
    parts.erase(parts.begin() +
                static_cast<std::ptrdiff_t>(rng() % parts.size()));
  return Bisection::make_words(std::move(parts), oracle);
}

Bisection random_twisted_bisection(const ActionPtr& action, Rng& rng) {
  Bisection full = J_map_twisted(random_twist_table(action, rng, 3));
  std::vector<TwistPart> parts = full.twist_parts();
  while (parts.size() > 1 && rng() % 3 == 0)
    parts.erase(parts.begin() +
                static_cast<std::ptrdiff_t>(rng() % parts.size()));
  return Bisection::make_twisted(std::move(parts), action);
}

ClopenSet random_clopen_words(Rng& rng) {
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

ClopenSet random_clopen_bricks(const SAction& action, Rng& rng) {
  auto bricks =
      random_brick_partition(action, rng, static_cast<int>(rng() % 4));
  std::vector<BrickFn> keep;
  for (const auto& b : bricks)
    if (rng() % 2) keep.push_back(b);
  if (keep.empty()) keep.push_back(bricks[rng() % bricks.size()]);
  return ClopenSet::from_bricks(std::move(keep));
}

CantorPoint random_point(Rng& rng, std::size_t max_preperiod,
                         std::size_t max_period) {
  auto bits = [&rng](std::size_t n) {
    Word w;
    for (std::size_t i = 0; i < n; ++i) w += (rng() % 2) ? '1' : '0';
    return w;
  };
  Word pre = bits(rng() % (max_preperiod + 1));
  Word per = bits(1 + rng() % max_period);
  return CantorPoint(std::move(pre), std::move(per));
}

}  // namespace cg
