#ifndef CG_PARSE_HPP
#define CG_PARSE_HPP

#include <cstdint>
#include <string>
#include <variant>

#include "cg/bisection.hpp"
#include "cg/group.hpp"
#include "cg/gtable.hpp"
#include "cg/twisted.hpp"

namespace cg {

// Immutable evaluation context: the active label group, the active cube
// action, output mode and the seed for randomized commands.
struct Session {
  OraclePtr oracle;
  ActionPtr action;
  bool json = false;
  std::uint64_t seed = 0;
};

Session default_session();

// Named registry: trivial, z<N> (cyclic), s3, f<N> (free), z^<N> (free
// abelian), cayley:<file> (resolved against CG_ORACLE_PATH when relative).
OraclePtr oracle_by_name(const std::string& name);
// translation (Z on Z), trivial:<N>, regular:<oracle name>.
ActionPtr action_by_name(const std::string& name);

using Element = std::variant<GTable, TwistTable, Bisection>;

// Element grammars:
//   V{ 00 -> 1 : a, 01 -> 00, 1 -> 01 : b^-1 }     (label omitted = identity)
//   SV{ {0:0} -[(1)]-> {1:1}, {0:1} -> {1:0} }     (-> = identity twist)
//   B{ 0 => 1 [g], ... }  /  B{ {0:0} => {1:1} [g], ... }
// print . parse is the identity on canonical forms.
Element parse_element(const std::string& text, const Session& s);
std::string print_element(const Element& e);

bool elements_equal(const Element& a, const Element& b);

// Expression language over elements: `*`, `^-1`, `^k`, parentheses, and the
// wrappers pi(...), iota0(label), iotaE(label), J(...), I(...).
Element eval_expression(const std::string& text, const Session& s);

// JSON round trip; schema has a version field and a type tag.
std::string element_to_json(const Element& e);
Element element_from_json(const std::string& text, const Session& s);

// Points: CantorPoint text for tables, `{s:pt, s:pt}` (default (0)) or
// `default pt {s:pt}` for cube points.
CubePoint parse_cube_point(const std::string& text, const SAction& action);
std::string print_cube_point(const CubePoint& k, const SAction& action);

// Clopen sets: `{00,01}` (words) or `{{0:0},{1:1}}` (bricks).
ClopenSet parse_clopen(const std::string& text, const Session& s);
std::string print_clopen(const ClopenSet& u, const Session& s);

struct CommandResult {
  bool ok = true;
  std::string output;  // plain text or a JSON report, per Session::json
};

CommandResult cmd_eval(const Session& s, const std::string& expr);
CommandResult cmd_act(const Session& s, const std::string& expr,
                      const std::string& point);
CommandResult cmd_order(const Session& s, const std::string& expr,
                        unsigned max);
CommandResult cmd_center(const Session& s, const std::string& expr);
CommandResult cmd_witness(const Session& s, const std::string& u,
                          const std::string& v);

}  // namespace cg

#endif
