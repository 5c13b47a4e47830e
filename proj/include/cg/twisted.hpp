#ifndef CG_TWISTED_HPP
#define CG_TWISTED_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cg/cantor.hpp"
#include "cg/group.hpp"
#include "cg/gtable.hpp"
#include "cg/word.hpp"

namespace cg {

// A dyadic brick of the Cantor cube: a finitely supported assignment of
// non-empty binary words to coordinates.  The empty assignment is the whole
// cube.  std::map gives a fixed total order for canonical piece sorting.
class BrickFn {
 public:
  BrickFn() = default;
  static BrickFn make(std::map<SElem, Word> support);

  const std::map<SElem, Word>& support() const { return support_; }
  bool whole_cube() const { return support_.empty(); }

  // The word at s, empty when s is outside the support.
  Word at(const SElem& s) const;

  auto operator<=>(const BrickFn&) const = default;

 private:
  explicit BrickFn(std::map<SElem, Word> m) : support_(std::move(m)) {}
  std::map<SElem, Word> support_;
};

// A point of the Cantor cube that is constant off a finite support.  The
// default value is carried explicitly; entries equal to the default are
// dropped so equality is syntactic.
class CubePoint {
 public:
  explicit CubePoint(CantorPoint default_value,
                     std::map<SElem, CantorPoint> support = {});

  const CantorPoint& default_value() const { return default_; }
  const std::map<SElem, CantorPoint>& support() const { return support_; }

  const CantorPoint& at(const SElem& s) const;

  bool operator==(const CubePoint&) const = default;

 private:
  CantorPoint default_;
  std::map<SElem, CantorPoint> support_;
};

bool brick_contains(const BrickFn& psi, const CubePoint& kappa);

// Coordinate-wise intersection: the longer word wins; nullopt when some
// coordinate carries incomparable words (disjoint bricks).
std::optional<BrickFn> brick_intersect(const BrickFn& phi, const BrickFn& psi);

// The canonical homeomorphism onto the brick: prepend psi(s) coordinate-wise.
CubePoint h_apply(const BrickFn& psi, const CubePoint& kappa);
std::optional<CubePoint> h_unapply(const BrickFn& psi, const CubePoint& kappa);

// The twist homeomorphism: new point at s is the old point at gamma^-1 s,
// i.e. the finite support is relabelled by s -> gamma.s.
CubePoint twist_apply(const SAction& action, const GroupElem& gamma,
                      const CubePoint& kappa);
BrickFn twist_brick(const SAction& action, const GroupElem& gamma,
                    const BrickFn& psi);

// One piece of a twisted element: the brick B(dom) is carried onto B(img)
// by h_img . twist . h_dom^-1.
struct TwistPiece {
  BrickFn dom;
  GroupElem twist;
  BrickFn img;

  auto operator<=>(const TwistPiece&) const = default;
};

// An element of the twisted group in canonical form: domain bricks and image
// bricks each partition the cube, sibling pieces merged, pieces sorted by
// domain brick.
class TwistTable {
 public:
  static TwistTable make(std::vector<TwistPiece> pieces, ActionPtr action);
  static TwistTable identity(ActionPtr action);
  // The global twist tau_gamma: the embedding of the acting group.
  static TwistTable tau(const GroupElem& gamma, ActionPtr action);

  const ActionPtr& action() const { return action_; }
  const std::vector<TwistPiece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  // Splits piece i on coordinate s; returns the raw, unreduced piece list.
  std::vector<TwistPiece> expand_at(std::size_t i, const SElem& s) const;

  bool is_identity() const;

 private:
  TwistTable(std::vector<TwistPiece> pieces, ActionPtr action)
      : pieces_(std::move(pieces)), action_(std::move(action)) {}

  std::vector<TwistPiece> pieces_;
  ActionPtr action_;
};

CubePoint tt_act(const TwistTable& t, const CubePoint& kappa);

// Preimage of a sub-brick of the image under the piece's homeomorphism:
// phi'(s) = phi(s) . u_{gamma.s} where sub(s) = psi(s) . u_s.
BrickFn piece_pullback(const SAction& action, const TwistPiece& piece,
                       const BrickFn& sub);
// Image of a sub-brick of the domain, the dual formula.
BrickFn piece_pushforward(const SAction& action, const TwistPiece& piece,
                          const BrickFn& sub);

TwistTable tt_mul(const TwistTable& a, const TwistTable& b);
TwistTable tt_inv(const TwistTable& a);
bool tt_eq(const TwistTable& a, const TwistTable& b);

// The coordinate-s copy of V: table pair w -> w' becomes piece
// ({s:w}, e, {s:w'}).
TwistTable embed_v_coordinate(const GTable& t, const SElem& s,
                              ActionPtr action);

// Sample points separating twisted elements: for each brick of the common
// domain refinement, points of the brick obtained by appending small
// eventually periodic tails on the touched coordinates.
std::vector<CubePoint> corner_samples(const TwistTable& a,
                                      const TwistTable& b);

std::optional<unsigned> tt_order(const TwistTable& a, unsigned max);

// True iff the bricks are pairwise disjoint and cover the cube (exact
// measure arithmetic).
bool is_brick_partition(const std::vector<BrickFn>& bricks);

// Exact set equality / containment for finite disjoint brick families, by
// inclusion-exclusion-free measure arithmetic (the pairwise intersections of
// two disjoint families are themselves disjoint).
bool brick_sets_equal(const std::vector<BrickFn>& a,
                      const std::vector<BrickFn>& b);
bool brick_set_subset(const std::vector<BrickFn>& a,
                      const std::vector<BrickFn>& b);

// Sibling-merge canonicalization of a raw piece list (no partition
// requirement; also used by the bisection layer on partial families).
// Sibling merges need not be confluent for bricks, so this explores every
// merge order and returns the smallest fully reduced form (piece count,
// then lexicographic) — deterministic in the input set.
std::vector<TwistPiece> canonicalize_pieces(std::vector<TwistPiece> pieces,
                                            const SAction& action);

// Semantic equality of raw piece families representing partial maps: same
// source set and, on every common domain sub-brick, the same twist and the
// same image.  tt_eq delegates to this; it does not depend on canonical
// forms.
bool pieces_semantically_equal(const std::vector<TwistPiece>& a,
                               const std::vector<TwistPiece>& b,
                               const SAction& action);

}  // namespace cg

#endif
