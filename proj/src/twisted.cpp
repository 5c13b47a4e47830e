#include "cg/twisted.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "cg/error.hpp"

namespace cg {

namespace {

using boost::multiprecision::cpp_int;

SElem sact(const SAction& action, const GroupElem& g, const SElem& s) {
  return action.apply(g, s);
}

SElem sact_inv(const SAction& action, const GroupElem& g, const SElem& s) {
  return action.apply(action.oracle()->invert(g), s);
}

void check_same_action(const TwistTable& a, const TwistTable& b) {
  if (a.action()->name() != b.action()->name())
    fail(ErrorKind::ActionMismatch,
         "tables over different actions: " + a.action()->name() + " vs " +
             b.action()->name());
}

// Exact measure: the bricks are already pairwise disjoint, so they partition
// the cube iff sum of prod_s 2^-|b(s)| equals 1.
void check_brick_partition(const std::vector<BrickFn>& bricks) {
  for (std::size_t i = 0; i < bricks.size(); ++i)
    for (std::size_t j = i + 1; j < bricks.size(); ++j)
      if (brick_intersect(bricks[i], bricks[j]).has_value())
        fail(ErrorKind::Overlap, "bricks overlap");
  if (bricks.empty()) fail(ErrorKind::Gap, "bricks do not cover the cube");
  std::size_t max_exp = 0;
  std::vector<std::size_t> exps;
  for (const auto& b : bricks) {
    std::size_t e = 0;
    for (const auto& [s, w] : b.support()) e += w.size();
    exps.push_back(e);
    max_exp = std::max(max_exp, e);
  }
  cpp_int total = 0;
  for (std::size_t e : exps) total += cpp_int(1) << (max_exp - e);
  if (total != cpp_int(1) << max_exp)
    fail(ErrorKind::Gap, "bricks do not cover the cube");
}

// The word-by-word remainder of sub over base: rem(s) with
// sub(s) = base(s) . rem(s); throws when base does not contain sub.
std::map<SElem, Word> brick_remainder(const BrickFn& base, const BrickFn& sub) {
  std::map<SElem, Word> rem;
  for (const auto& [s, w] : base.support())
    if (!is_prefix(w, sub.at(s)))
      fail(ErrorKind::Containment, "sub-brick not contained in brick");
  for (const auto& [s, w] : sub.support()) {
    Word b = base.at(s);
    if (w.size() > b.size()) rem[s] = w.substr(b.size());
  }
  return rem;
}

// Appends remainders to base, moving each remainder coordinate through
// coord_map first.
template <typename CoordMap>
BrickFn extend_brick(const BrickFn& base, const std::map<SElem, Word>& rem,
                     CoordMap coord_map) {
  std::map<SElem, Word> out = base.support();
  for (const auto& [s, u] : rem) {
    SElem t = coord_map(s);
    out[t] = base.at(t) + u;
  }
  return BrickFn::make(std::move(out));
}

struct SiblingDiff {
  SElem coord;
  Word stem;         // common word with the final bit removed (may be empty)
  bool a_is_zero;    // whether a carries the '0' side
};

// Detects bricks identical except at one coordinate holding sibling words.
std::optional<SiblingDiff> sibling_diff(const BrickFn& a, const BrickFn& b) {
  // non-empty words mean the supports must coincide for a sibling pair
  if (a.support().size() != b.support().size()) return std::nullopt;
  std::optional<SiblingDiff> found;
  auto ia = a.support().begin();
  auto ib = b.support().begin();
  for (; ia != a.support().end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return std::nullopt;
    if (ia->second == ib->second) continue;
    if (found.has_value()) return std::nullopt;
    const Word& x = ia->second;
    const Word& y = ib->second;
    if (x.size() != y.size()) return std::nullopt;
    if (x.substr(0, x.size() - 1) != y.substr(0, y.size() - 1))
      return std::nullopt;
    if (x.back() == y.back()) return std::nullopt;
    found = SiblingDiff{ia->first, x.substr(0, x.size() - 1), x.back() == '0'};
  }
  return found;
}

BrickFn with_stem(const BrickFn& b, const SElem& s, const Word& stem) {
  std::map<SElem, Word> m = b.support();
  if (stem.empty())
    m.erase(s);
  else
    m[s] = stem;
  return BrickFn::make(std::move(m));
}

std::optional<TwistPiece> try_merge(const SAction& action, const TwistPiece& p,
                                    const TwistPiece& q) {
  if (!action.oracle()->equals(p.twist, q.twist)) return std::nullopt;
  auto dd = sibling_diff(p.dom, q.dom);
  if (!dd) return std::nullopt;
  auto di = sibling_diff(p.img, q.img);
  if (!di) return std::nullopt;
  // the image-side split must sit at the twisted coordinate, same side
  if (!(sact(action, p.twist, dd->coord) == di->coord)) return std::nullopt;
  if (dd->a_is_zero != di->a_is_zero) return std::nullopt;
  return TwistPiece{with_stem(p.dom, dd->coord, dd->stem), p.twist,
                    with_stem(p.img, di->coord, di->stem)};
}

}  // namespace

bool is_brick_partition(const std::vector<BrickFn>& bricks) {
  try {
    check_brick_partition(bricks);
  } catch (const Error&) {
    return false;
  }
  return true;
}

namespace {

std::size_t brick_exponent(const BrickFn& b) {
  std::size_t e = 0;
  for (const auto& [s, w] : b.support()) e += w.size();
  return e;
}

// Sum of 2^-exponent as an exact dyadic: numerator over 2^scale.
cpp_int dyadic_total(const std::vector<std::size_t>& exps, std::size_t scale) {
  cpp_int total = 0;
  for (std::size_t e : exps) total += cpp_int(1) << (scale - e);
  return total;
}

// Measures of a family and of the pairwise intersection with another,
// comparable because they share the scale.
struct FamilyMeasure {
  cpp_int mu_a, mu_b, mu_meet;
};

FamilyMeasure family_measures(const std::vector<BrickFn>& a,
                              const std::vector<BrickFn>& b) {
  std::vector<std::size_t> ea, eb, em;
  for (const auto& x : a) ea.push_back(brick_exponent(x));
  for (const auto& y : b) eb.push_back(brick_exponent(y));
  for (const auto& x : a)
    for (const auto& y : b) {
      auto m = brick_intersect(x, y);
      if (m) em.push_back(brick_exponent(*m));
    }
  std::size_t scale = 0;
  for (std::size_t e : ea) scale = std::max(scale, e);
  for (std::size_t e : eb) scale = std::max(scale, e);
  for (std::size_t e : em) scale = std::max(scale, e);
  return {dyadic_total(ea, scale), dyadic_total(eb, scale),
          dyadic_total(em, scale)};
}

}  // namespace

bool brick_sets_equal(const std::vector<BrickFn>& a,
                      const std::vector<BrickFn>& b) {
  FamilyMeasure m = family_measures(a, b);
  return m.mu_a == m.mu_meet && m.mu_b == m.mu_meet;
}

bool brick_set_subset(const std::vector<BrickFn>& a,
                      const std::vector<BrickFn>& b) {
  FamilyMeasure m = family_measures(a, b);
  return m.mu_a == m.mu_meet;
}

std::vector<TwistPiece> canonicalize_pieces(std::vector<TwistPiece> pieces,
                                            const SAction& action) {
  std::sort(pieces.begin(), pieces.end());
  // Sibling merges on bricks are not confluent, so explore every merge
  // order (merging strictly shrinks the list, so the search is finite) and
  // keep the smallest fully reduced form.
  std::set<std::vector<TwistPiece>> seen;
  std::vector<std::vector<TwistPiece>> frontier{pieces};
  std::optional<std::vector<TwistPiece>> best;
  constexpr std::size_t kStateCap = 20000;
  while (!frontier.empty() && seen.size() < kStateCap) {
    std::vector<TwistPiece> cur = std::move(frontier.back());
    frontier.pop_back();
    if (!seen.insert(cur).second) continue;
    bool terminal = true;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        auto merged = try_merge(action, cur[i], cur[j]);
        if (!merged) continue;
        terminal = false;
        std::vector<TwistPiece> next;
        for (std::size_t k = 0; k < cur.size(); ++k)
          if (k != i && k != j) next.push_back(cur[k]);
        next.push_back(*merged);
        std::sort(next.begin(), next.end());
        if (!seen.contains(next)) frontier.push_back(std::move(next));
      }
    if (terminal) {
      if (!best || cur.size() < best->size() ||
          (cur.size() == best->size() && cur < *best))
        best = std::move(cur);
    }
  }
  std::vector<TwistPiece> out = best ? std::move(*best) : std::move(pieces);
  std::sort(out.begin(), out.end(),
            [](const TwistPiece& x, const TwistPiece& y) {
              return x.dom < y.dom;
            });
  return out;
}

bool pieces_semantically_equal(const std::vector<TwistPiece>& a,
                               const std::vector<TwistPiece>& b,
                               const SAction& action) {
  const auto& oracle = *action.oracle();
  std::vector<BrickFn> doms_a, doms_b;
  for (const auto& p : a) doms_a.push_back(p.dom);
  for (const auto& q : b) doms_b.push_back(q.dom);
  if (!brick_sets_equal(doms_a, doms_b)) return false;
  for (const auto& p : a)
    for (const auto& q : b) {
      auto m = brick_intersect(p.dom, q.dom);
      if (!m) continue;
      if (!oracle.equals(p.twist, q.twist)) return false;
      if (piece_pushforward(action, p, *m) != piece_pushforward(action, q, *m))
        return false;
    }
  return true;
}

BrickFn BrickFn::make(std::map<SElem, Word> support) {
  for (const auto& [s, w] : support) {
    if (w.empty())
      fail(ErrorKind::Alphabet, "brick words must be non-empty");
    check_word(w);
  }
  return BrickFn(std::move(support));
}

Word BrickFn::at(const SElem& s) const {
  auto it = support_.find(s);
  return it == support_.end() ? Word{} : it->second;
}

CubePoint::CubePoint(CantorPoint default_value,
                     std::map<SElem, CantorPoint> support)
    : default_(std::move(default_value)) {
  for (auto& [s, x] : support)
    if (!(x == default_)) support_.emplace(s, std::move(x));
}

const CantorPoint& CubePoint::at(const SElem& s) const {
  auto it = support_.find(s);
  return it == support_.end() ? default_ : it->second;
}

bool brick_contains(const BrickFn& psi, const CubePoint& kappa) {
  for (const auto& [s, w] : psi.support())
    if (!kappa.at(s).has_prefix(w)) return false;
  return true;
}

std::optional<BrickFn> brick_intersect(const BrickFn& phi, const BrickFn& psi) {
  std::map<SElem, Word> out = phi.support();
  for (const auto& [s, w] : psi.support()) {
    auto it = out.find(s);
    if (it == out.end()) {
      out.emplace(s, w);
    } else if (is_prefix(it->second, w)) {
      it->second = w;
    } else if (!is_prefix(w, it->second)) {
      return std::nullopt;
    }
  }
  return BrickFn::make(std::move(out));
}

CubePoint h_apply(const BrickFn& psi, const CubePoint& kappa) {
  std::map<SElem, CantorPoint> out = kappa.support();
  for (const auto& [s, w] : psi.support()) {
    auto it = out.find(s);
    if (it == out.end())
      out.emplace(s, prepend(w, kappa.default_value()));
    else
      it->second = prepend(w, it->second);
  }
  return CubePoint(kappa.default_value(), std::move(out));
}

std::optional<CubePoint> h_unapply(const BrickFn& psi, const CubePoint& kappa) {
  std::map<SElem, CantorPoint> out = kappa.support();
  for (const auto& [s, w] : psi.support()) {
    auto stripped = strip_prefix(w, kappa.at(s));
    if (!stripped) return std::nullopt;
    out.insert_or_assign(s, *stripped);
  }
  return CubePoint(kappa.default_value(), std::move(out));
}

CubePoint twist_apply(const SAction& action, const GroupElem& gamma,
                      const CubePoint& kappa) {
  std::map<SElem, CantorPoint> out;
  for (const auto& [s, x] : kappa.support())
    out.emplace(sact(action, gamma, s), x);
  return CubePoint(kappa.default_value(), std::move(out));
}

BrickFn twist_brick(const SAction& action, const GroupElem& gamma,
                    const BrickFn& psi) {
  std::map<SElem, Word> out;
  for (const auto& [s, w] : psi.support())
    out.emplace(sact(action, gamma, s), w);
  return BrickFn::make(std::move(out));
}

TwistTable TwistTable::make(std::vector<TwistPiece> pieces, ActionPtr action) {
  if (!action) fail(ErrorKind::ActionMismatch, "a table needs an action");
  if (pieces.empty())
    fail(ErrorKind::SizeMismatch, "a table needs at least one piece");
  std::vector<BrickFn> doms, imgs;
  for (const auto& p : pieces) {
    doms.push_back(p.dom);
    imgs.push_back(p.img);
  }
  check_brick_partition(doms);
  check_brick_partition(imgs);
  std::vector<TwistPiece> canon = canonicalize_pieces(std::move(pieces), *action);
  return TwistTable(std::move(canon), std::move(action));
}

TwistTable TwistTable::identity(ActionPtr action) {
  GroupElem e = action->oracle()->identity();
  return TwistTable::make({TwistPiece{BrickFn{}, e, BrickFn{}}},
                          std::move(action));
}

TwistTable TwistTable::tau(const GroupElem& gamma, ActionPtr action) {
  return TwistTable::make({TwistPiece{BrickFn{}, gamma, BrickFn{}}},
                          std::move(action));
}

std::vector<TwistPiece> TwistTable::expand_at(std::size_t i,
                                              const SElem& s) const {
  if (i >= pieces_.size()) fail(ErrorKind::Index, "piece index out of range");
  std::vector<TwistPiece> out;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    if (j != i) {
      out.push_back(pieces_[j]);
      continue;
    }
    const TwistPiece& p = pieces_[j];
    SElem t = sact(*action_, p.twist, s);
    Word dw = p.dom.at(s);
    Word iw = p.img.at(t);
    for (char bit : {'0', '1'}) {
      out.push_back(TwistPiece{with_stem(p.dom, s, dw + bit), p.twist,
                               with_stem(p.img, t, iw + bit)});
    }
  }
  return out;
}

bool TwistTable::is_identity() const {
  return pieces_.size() == 1 && pieces_[0].dom.whole_cube() &&
         pieces_[0].img.whole_cube() &&
         action_->oracle()->is_identity(pieces_[0].twist);
}

CubePoint tt_act(const TwistTable& t, const CubePoint& kappa) {
  for (const auto& p : t.pieces()) {
    if (!brick_contains(p.dom, kappa)) continue;
    auto inner = h_unapply(p.dom, kappa);
    return h_apply(p.img, twist_apply(*t.action(), p.twist, *inner));
  }
  fail(ErrorKind::Internal, "domain bricks did not cover the point");
}

BrickFn piece_pullback(const SAction& action, const TwistPiece& piece,
                       const BrickFn& sub) {
  std::map<SElem, Word> rem = brick_remainder(piece.img, sub);
  const GroupElem ginv = action.oracle()->invert(piece.twist);
  return extend_brick(piece.dom, rem,
                      [&](const SElem& s) { return action.apply(ginv, s); });
}

BrickFn piece_pushforward(const SAction& action, const TwistPiece& piece,
                          const BrickFn& sub) {
  std::map<SElem, Word> rem = brick_remainder(piece.dom, sub);
  return extend_brick(piece.img, rem, [&](const SElem& s) {
    return action.apply(piece.twist, s);
  });
}

TwistTable tt_mul(const TwistTable& a, const TwistTable& b) {
  check_same_action(a, b);
  const SAction& action = *a.action();
  const auto& oracle = *action.oracle();
  std::vector<TwistPiece> out;
  for (const auto& q : b.pieces()) {
    for (const auto& p : a.pieces()) {
      auto mid = brick_intersect(q.img, p.dom);
      if (!mid) continue;
      out.push_back(TwistPiece{piece_pullback(action, q, *mid),
                               oracle.multiply(p.twist, q.twist),
                               piece_pushforward(action, p, *mid)});
    }
  }
  return TwistTable::make(std::move(out), a.action());
}

TwistTable tt_inv(const TwistTable& a) {
  const auto& oracle = *a.action()->oracle();
  std::vector<TwistPiece> out;
  for (const auto& p : a.pieces())
    out.push_back(TwistPiece{p.img, oracle.invert(p.twist), p.dom});
  return TwistTable::make(std::move(out), a.action());
}

bool tt_eq(const TwistTable& a, const TwistTable& b) {
  check_same_action(a, b);
  // fast path: identical canonical forms
  if (a.size() == b.size()) {
    const auto& oracle = *a.action()->oracle();
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) {
      const TwistPiece& p = a.pieces()[i];
      const TwistPiece& q = b.pieces()[i];
      same = p.dom == q.dom && p.img == q.img &&
             oracle.equals(p.twist, q.twist);
    }
    if (same) return true;
  }
  return pieces_semantically_equal(a.pieces(), b.pieces(), *a.action());
}

TwistTable embed_v_coordinate(const GTable& t, const SElem& s,
                              ActionPtr action) {
  const auto& oracle = *t.oracle();
  GroupElem e = action->oracle()->identity();
  std::vector<TwistPiece> out;
  for (const auto& slot : t.slots()) {
    if (!oracle.is_identity(slot.label))
      fail(ErrorKind::OracleMismatch,
           "coordinate embedding needs trivial labels");
    std::map<SElem, Word> dom, img;
    if (!slot.dom.empty()) dom.emplace(s, slot.dom);
    if (!slot.img.empty()) img.emplace(s, slot.img);
    out.push_back(TwistPiece{BrickFn::make(std::move(dom)), e,
                             BrickFn::make(std::move(img))});
  }
  return TwistTable::make(std::move(out), std::move(action));
}

std::vector<CubePoint> corner_samples(const TwistTable& a,
                                      const TwistTable& b) {
  check_same_action(a, b);
  const SAction& action = *a.action();
  // coordinates the two elements can possibly see
  std::set<SElem> coords;
  auto note_piece = [&](const TwistPiece& p) {
    for (const auto& [s, w] : p.dom.support()) {
      coords.insert(s);
      coords.insert(sact(action, p.twist, s));
    }
    for (const auto& [s, w] : p.img.support()) {
      coords.insert(s);
      coords.insert(sact_inv(action, p.twist, s));
    }
  };
  for (const auto& p : a.pieces()) note_piece(p);
  for (const auto& p : b.pieces()) note_piece(p);
  for (const auto& s : action.sample_coords()) coords.insert(s);

  // common refinement of the two domain partitions
  std::vector<BrickFn> bricks;
  for (const auto& p : a.pieces())
    for (const auto& q : b.pieces()) {
      auto m = brick_intersect(p.dom, q.dom);
      if (m) bricks.push_back(*m);
    }

  std::vector<CantorPoint> tails = enumerate_points(1, 2);
  CantorPoint zero("", "0");
  std::vector<CubePoint> out;
  for (const auto& brick : bricks) {
    for (const auto& tail : tails) {
      // uniform tail on every seen coordinate
      std::map<SElem, CantorPoint> uniform;
      for (const auto& s : coords) uniform.emplace(s, tail);
      out.push_back(h_apply(brick, CubePoint(zero, std::move(uniform))));
      // single-coordinate spikes, which separate coordinate permutations
      for (const auto& s : coords) {
        std::map<SElem, CantorPoint> single{{s, tail}};
        out.push_back(h_apply(brick, CubePoint(zero, std::move(single))));
      }
    }
  }
  return out;
}

std::optional<unsigned> tt_order(const TwistTable& a, unsigned max) {
  TwistTable power = a;
  for (unsigned k = 1; k <= max; ++k) {
    if (power.is_identity()) return k;
    power = tt_mul(power, a);
  }
  return std::nullopt;
}

}  // namespace cg
