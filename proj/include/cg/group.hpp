#ifndef CG_GROUP_HPP
#define CG_GROUP_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace cg {

// Freely reduced word in generators a,b,c,...: letter k > 0 is generator
// k-1, letter -k its inverse.
using FreeWord = std::vector<int>;

// Canonical element payload; interpretation belongs to the oracle that made
// it.  monostate is only used transiently while parsing.
struct GroupElem {
  std::variant<std::monostate, std::uint32_t, FreeWord,
               std::vector<long long>>
      v;

  auto operator<=>(const GroupElem&) const = default;
};

using Rng = std::mt19937_64;

// Pure group oracle: identity, multiplication, inversion, canonical-form
// equality, parser/printer and a three-valued centrality test.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  virtual GroupElem identity() const = 0;
  virtual GroupElem multiply(const GroupElem& a, const GroupElem& b) const = 0;
  virtual GroupElem invert(const GroupElem& a) const = 0;
  virtual bool equals(const GroupElem& a, const GroupElem& b) const = 0;
  virtual std::vector<GroupElem> generators() const = 0;

  virtual GroupElem parse(const std::string& text) const = 0;
  virtual std::string print(const GroupElem& a) const = 0;

  // nullopt means undecidable for this instance.
  virtual std::optional<bool> is_central(const GroupElem& a) const = 0;

  // All elements, for finite oracles only.
  virtual std::optional<std::vector<GroupElem>> all_elements() const {
    return std::nullopt;
  }

  virtual GroupElem sample(Rng& rng) const = 0;
  virtual std::string name() const = 0;

  bool is_identity(const GroupElem& a) const { return equals(a, identity()); }
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

OraclePtr trivial_group();
OraclePtr free_group(unsigned rank);
OraclePtr zn_group(unsigned n);

// Cayley-table ingestion.  Format: first line n, then n rows of 0-based
// indices; element 0 must be the identity.  Validates the Latin-square
// property, identity/inverses, and associativity (exhaustively for n <= 64,
// by random triples above).
OraclePtr load_cayley_table(const std::string& table_text);
OraclePtr load_cayley_file(const std::string& path);

// Shipped finite instances, generated as Cayley tables.
OraclePtr cyclic_group(unsigned n);  // Z/n
OraclePtr symmetric_group_3();       // S3

// A coordinate of the Cantor cube: an integer for Z acting on Z and for
// finite index sets, a group element for regular actions.
struct SElem {
  std::variant<long long, GroupElem> v;

  auto operator<=>(const SElem&) const = default;
};

// A faithful action of the oracle's group on a countable set S.  The set is
// never materialized; only the coordinates actually touched exist.
class SAction {
 public:
  virtual ~SAction() = default;

  virtual const OraclePtr& oracle() const = 0;
  virtual SElem apply(const GroupElem& g, const SElem& s) const = 0;

  virtual SElem parse_s(const std::string& text) const = 0;
  virtual std::string print_s(const SElem& s) const = 0;

  // A designated coordinate (used when a brick must be split on a fresh
  // coordinate).
  virtual SElem base() const = 0;
  // Small deterministic pool of coordinates for randomized suites.
  virtual std::vector<SElem> sample_coords() const = 0;

  virtual std::string name() const = 0;
};

using ActionPtr = std::shared_ptr<const SAction>;

ActionPtr action_translation_z();
ActionPtr action_regular(OraclePtr oracle);
ActionPtr action_trivial_finite(unsigned n);

// Exact for finite oracles; decisive for the shipped infinite instances;
// nullopt otherwise.
std::optional<bool> is_central(const GroupOracle& oracle, const GroupElem& g);

}  // namespace cg

#endif
