#ifndef CG_GTABLE_HPP
#define CG_GTABLE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cg/cantor.hpp"
#include "cg/group.hpp"
#include "cg/word.hpp"

namespace cg {

// One row of a (G-)table: the prefix substitution dom -> img carrying the
// label attached to the domain slot.
struct TableSlot {
  Word dom;
  Word img;
  GroupElem label;

  bool operator==(const TableSlot&) const = default;
};

// An unreduced table, kept only as an intermediate (expansion output,
// multiplication scratch).
using RawTable = std::vector<TableSlot>;

// An element of V(G) in canonical form: both partitions sorted, fully
// G-reduced.  V itself is the trivial-label specialization.  Slots are
// stored sorted by domain word; the permutation and the two PartitionSets
// of the (W', alpha, W) presentation are derived views.
class GTable {
 public:
  // Sorts, validates both sides as partition sets, reduces.
  static GTable make(RawTable slots, OraclePtr oracle);
  static GTable identity(OraclePtr oracle);

  const OraclePtr& oracle() const { return oracle_; }
  const std::vector<TableSlot>& slots() const { return slots_; }
  std::size_t size() const { return slots_.size(); }

  PartitionSet domain() const;
  PartitionSet image() const;
  // perm()[i] is the image index (0-based, lexicographic) of domain slot i.
  std::vector<std::size_t> perm() const;

  // G-expansion at domain slot i (0-based); returns the raw, unreduced
  // table so reduction round-trips can be exercised.
  RawTable expand_at(std::size_t i) const;

  bool is_identity() const;

 private:
  GTable(RawTable slots, OraclePtr oracle)
      : slots_(std::move(slots)), oracle_(std::move(oracle)) {}

  RawTable slots_;
  OraclePtr oracle_;
};

GTable mul(const GTable& a, const GTable& b);
GTable inv(const GTable& a);
GTable conjugate(const GTable& a, const GTable& t);  // a t a^-1
bool eq(const GTable& a, const GTable& b);

// The underlying point motion plus the consumed label as trace metadata
// (labels do not move points of the Cantor space).
std::pair<CantorPoint, GroupElem> act(const GTable& a, const CantorPoint& x);

GTable iota0(const GroupElem& g, OraclePtr oracle);
GTable iota_empty(const GroupElem& g, OraclePtr oracle);

// Forgets the labels: same partitions and permutation over the trivial
// oracle.
GTable pi_forget(const GTable& a);

// Kernel of pi, read off the canonical form.
bool in_pi_kernel(const GTable& a);

// Applies a group homomorphism to every label (the functor V on morphisms).
GTable map_labels(const GTable& a,
                  const std::function<GroupElem(const GroupElem&)>& hom,
                  OraclePtr target_oracle);

struct CenterResult {
  enum class Kind { Central, NotCentral, Unknown };
  Kind kind;
  std::optional<GroupElem> z;       // set when central
  std::optional<GTable> witness;    // non-commuting element when not central
};

// The fixed probe set: transpositions of the four length-2 bricks plus
// iota0 of the oracle generators.
std::vector<GTable> center_probes(const OraclePtr& oracle);

CenterResult center_test(const GTable& a);

// The n-cycle on {0, 10, ..., 1^(n-2)0, 1^(n-1)} with identity labels;
// order exactly n and nontrivial pi-image.
GTable torsion_generator(unsigned n, OraclePtr oracle);

// Least k <= max with a^k = identity, nullopt if none.
std::optional<unsigned> order(const GTable& a, unsigned max);

}  // namespace cg

#endif
