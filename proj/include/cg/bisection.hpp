#ifndef CG_BISECTION_HPP
#define CG_BISECTION_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "cg/cantor.hpp"
#include "cg/group.hpp"
#include "cg/gtable.hpp"
#include "cg/twisted.hpp"
#include "cg/word.hpp"

namespace cg {

enum class Flavor { V2, V2xG, SV2xG };

// A standard compact open bisection {(w' z, n, w z)} x {label}; the shift
// exponent n = |dom| - |img| is derived, never stored.
struct WordPart {
  Word img;   // w'
  Word dom;   // w
  GroupElem label;

  long long shift_exponent() const {
    return static_cast<long long>(dom.size()) -
           static_cast<long long>(img.size());
  }

  bool operator==(const WordPart&) const = default;
};

// The twisted analogue: coordinate-wise word pairs s -> (w'_s, w_s) plus the
// group label g.  Its source brick is s -> w_{g.s} (the semidirect source
// relabelling) and its range brick is s -> w'_s.
struct TwistPart {
  std::map<SElem, std::pair<Word, Word>> cw;
  GroupElem label;

  bool operator==(const TwistPart&) const = default;
};

// A finite union of standard clopen blocks (words) or bricks, pairwise
// disjoint, in canonical merged+sorted form.  May cover a proper subset of
// the unit space.
class ClopenSet {
 public:
  static ClopenSet from_words(std::vector<Word> words);
  static ClopenSet from_bricks(std::vector<BrickFn> bricks);

  bool twisted() const { return twisted_; }
  const std::vector<Word>& words() const { return words_; }
  const std::vector<BrickFn>& bricks() const { return bricks_; }
  bool empty() const { return words_.empty() && bricks_.empty(); }
  std::size_t size() const {
    return twisted_ ? bricks_.size() : words_.size();
  }

  // Whether the blocks tile the whole unit space (exact measure).
  bool is_complete() const;

  // Set equality: canonical word lists compare directly; brick families are
  // compared by exact measure arithmetic (their merged forms need not be
  // unique).
  bool operator==(const ClopenSet& other) const;

 private:
  bool twisted_ = false;
  std::vector<Word> words_;
  std::vector<BrickFn> bricks_;
};

// A finite disjoint union of standard parts.  Fullness is a property, not an
// invariant: partial (even empty) bisections are first-class values.
class Bisection {
 public:
  static Bisection make_words(std::vector<WordPart> parts, OraclePtr oracle);
  static Bisection make_twisted(std::vector<TwistPart> parts,
                                ActionPtr action);

  Flavor flavor() const { return flavor_; }
  const OraclePtr& oracle() const { return oracle_; }
  const ActionPtr& action() const { return action_; }
  const std::vector<WordPart>& word_parts() const { return wparts_; }
  const std::vector<TwistPart>& twist_parts() const { return tparts_; }
  bool empty() const { return wparts_.empty() && tparts_.empty(); }

 private:
  Flavor flavor_ = Flavor::V2;
  OraclePtr oracle_;
  ActionPtr action_;
  std::vector<WordPart> wparts_;
  std::vector<TwistPart> tparts_;
};

ClopenSet source(const Bisection& b);
ClopenSet range(const Bisection& b);

// Groupoid composition restricted to the matching locus (may be empty) and
// inversion; on full bisections these are the group operations.
Bisection compose(const Bisection& a, const Bisection& b);
Bisection invert(const Bisection& a);

bool bisection_eq(const Bisection& a, const Bisection& b);

bool is_full(const Bisection& b);

// The unit bisection over a clopen set (identity words/bricks, identity
// label).
Bisection unit_bisection(const ClopenSet& u, OraclePtr oracle);
Bisection unit_bisection_twisted(const ClopenSet& u, ActionPtr action);

// Full-group dictionary for tables: J sends a table into the full group of
// bisections, I reads a full bisection back.  Mutually inverse group
// isomorphisms.
Bisection J_map(const GTable& t);
GTable I_map(const Bisection& b);

// The twisted dictionary: piece (D, g, M) corresponds to the part with
// label g, w'_s = M(s) and w_s = D(g^-1 s).
Bisection J_map_twisted(const TwistTable& t);
TwistTable I_map_twisted(const Bisection& b);

// A bisection with source exactly U and range inside V, built by subdividing
// V until it has at least as many blocks as U.
Bisection min_witness(const ClopenSet& u, const ClopenSet& v,
                      OraclePtr oracle);
Bisection min_witness_twisted(const ClopenSet& u, const ClopenSet& v,
                              ActionPtr action);

// Set containment; exact (word prefix test resp. measure arithmetic).
bool clopen_subset(const ClopenSet& a, const ClopenSet& b);

// Fixed points of the prefix substitution w z -> w' z with preperiod at most
// bound (at most one exists).  Empty when the words are incomparable; a unit
// part (w = w') raises ShiftZeroIdentity.
std::vector<CantorPoint> isotropy_points(const WordPart& part,
                                         std::size_t bound);

}  // namespace cg

#endif
