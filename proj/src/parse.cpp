#include "cg/parse.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cg/error.hpp"

namespace cg {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// cursor

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void ws() {
    while (pos < s.size() &&
           std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eof() {
    ws();
    return pos >= s.size();
  }

  char peek() {
    ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  // Consumes the literal if it comes next (after whitespace).
  bool lit(const std::string& t) {
    ws();
    if (s.compare(pos, t.size(), t) != 0) return false;
    pos += t.size();
    return true;
  }

  void expect(const std::string& t) {
    if (!lit(t)) fail_here("expected '" + t + "'");
  }

  [[noreturn]] void fail_here(const std::string& msg) {
    fail(ErrorKind::Parse,
         msg + " at position " + std::to_string(pos) + " in \"" + s + "\"");
  }

  // Reads until one of the stop characters at bracket depth zero (or the
  // end); the stop character is not consumed.  Brackets of all three kinds
  // nest, so labels like "(1,-3)" survive comma splitting.
  std::string until(const std::string& stops) {
    ws();
    int depth = 0;
    std::size_t start = pos;
    while (pos < s.size()) {
      char c = s[pos];
      if (depth == 0 && stops.find(c) != std::string::npos) break;
      if (c == '(' || c == '[' || c == '{') {
        ++depth;
      } else if (c == ')' || c == ']' || c == '}') {
        --depth;
        if (depth < 0) fail_here("unbalanced bracket");
      }
      ++pos;
    }
    std::size_t end = pos;
    while (end > start &&
           std::isspace(static_cast<unsigned char>(s[end - 1])))
      --end;
    return s.substr(start, end - start);
  }

  // A run of 0/1 characters, or 'e' for the empty word.
  Word word() {
    ws();
    if (pos < s.size() && s[pos] == 'e') {
      ++pos;
      return Word{};
    }
    std::size_t start = pos;
    while (pos < s.size() && (s[pos] == '0' || s[pos] == '1')) ++pos;
    if (pos == start) fail_here("expected a binary word");
    return s.substr(start, pos - start);
  }

  long long integer() {
    ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start ||
        (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail_here("expected an integer");
    return std::stoll(s.substr(start, pos - start));
  }
};

// ---------------------------------------------------------------------------
// element text forms

GTable parse_gtable(Cursor& c, const OraclePtr& oracle) {
  c.expect("V");
  c.expect("{");
  RawTable slots;
  if (!c.lit("}")) {
    for (;;) {
      TableSlot slot;
      slot.dom = c.word();
      c.expect("->");
      slot.img = c.word();
      if (c.lit(":")) {
        std::string text = c.until(",}");
        if (text.empty()) c.fail_here("expected a label");
        slot.label = oracle->parse(text);
      } else {
        slot.label = oracle->identity();
      }
      slots.push_back(std::move(slot));
      if (c.lit(",")) continue;
      c.expect("}");
      break;
    }
  }
  return GTable::make(std::move(slots), oracle);
}

std::string print_gtable(const GTable& t) {
  const GroupOracle& oracle = *t.oracle();
  std::string out = "V{ ";
  bool first = true;
  for (const auto& s : t.slots()) {
    if (!first) out += ", ";
    first = false;
    out += print_word(s.dom) + " -> " + print_word(s.img);
    if (!oracle.is_identity(s.label)) out += " : " + oracle.print(s.label);
  }
  out += " }";
  return out;
}

BrickFn parse_brick(Cursor& c, const SAction& action) {
  c.expect("{");
  std::map<SElem, Word> m;
  if (!c.lit("}")) {
    for (;;) {
      std::string tok = c.until(":");
      if (tok.empty()) c.fail_here("expected a coordinate");
      c.expect(":");
      SElem s = action.parse_s(tok);
      Word w = c.word();
      if (m.count(s)) c.fail_here("repeated coordinate in brick");
      m.emplace(std::move(s), std::move(w));
      if (c.lit(",")) continue;
      c.expect("}");
      break;
    }
  }
  return BrickFn::make(std::move(m));
}

std::string print_brick(const BrickFn& b, const SAction& action) {
  std::string out = "{";
  bool first = true;
  for (const auto& [s, w] : b.support()) {
    if (!first) out += ", ";
    first = false;
    out += action.print_s(s) + ":" + w;
  }
  out += "}";
  return out;
}

TwistTable parse_twist_table(Cursor& c, const ActionPtr& action) {
  const GroupOracle& oracle = *action->oracle();
  c.expect("SV");
  c.expect("{");
  std::vector<TwistPiece> pieces;
  if (!c.lit("}")) {
    for (;;) {
      TwistPiece piece;
      piece.dom = parse_brick(c, *action);
      c.expect("-");
      if (c.lit("[")) {
        std::string text = c.until("]");
        if (text.empty()) c.fail_here("expected a twist label");
        piece.twist = oracle.parse(text);
        c.expect("]");
        c.expect("->");
      } else {
        c.expect(">");
        piece.twist = oracle.identity();
      }
      piece.img = parse_brick(c, *action);
      pieces.push_back(std::move(piece));
      if (c.lit(",")) continue;
      c.expect("}");
      break;
    }
  }
  return TwistTable::make(std::move(pieces), action);
}

std::string print_twist_table(const TwistTable& t) {
  const SAction& action = *t.action();
  const GroupOracle& oracle = *action.oracle();
  std::string out = "SV{ ";
  bool first = true;
  for (const auto& p : t.pieces()) {
    if (!first) out += ", ";
    first = false;
    out += print_brick(p.dom, action);
    if (oracle.is_identity(p.twist))
      out += " -> ";
    else
      out += " -[" + oracle.print(p.twist) + "]-> ";
    out += print_brick(p.img, action);
  }
  out += " }";
  return out;
}

// The two sides of a twisted part, as bricks over the same coordinates: the
// left brick collects the domain words w_s, the right one the image words
// w'_s.  Either side may be missing a coordinate (empty word).
std::pair<BrickFn, BrickFn> part_sides(const TwistPart& p) {
  std::map<SElem, Word> dom, img;
  for (const auto& [s, ww] : p.cw) {
    if (!ww.second.empty()) dom.emplace(s, ww.second);
    if (!ww.first.empty()) img.emplace(s, ww.first);
  }
  return {BrickFn::make(std::move(dom)), BrickFn::make(std::move(img))};
}

Bisection parse_bisection(Cursor& c, const Session& sess) {
  c.expect("B");
  c.expect("{");
  if (c.lit("}"))  // empty: word flavor by convention
    return Bisection::make_words({}, sess.oracle);
  bool twisted = c.peek() == '{';
  std::vector<WordPart> wparts;
  std::vector<TwistPart> tparts;
  for (;;) {
    if (twisted) {
      if (!sess.action)
        c.fail_here("twisted bisection literal without an action");
      TwistPart p;
      BrickFn dom = parse_brick(c, *sess.action);
      c.expect("=>");
      BrickFn img = parse_brick(c, *sess.action);
      for (const auto& [s, w] : dom.support()) p.cw[s].second = w;
      for (const auto& [s, w] : img.support()) p.cw[s].first = w;
      p.label = sess.action->oracle()->identity();
      if (c.lit("[")) {
        std::string text = c.until("]");
        if (text.empty()) c.fail_here("expected a label");
        p.label = sess.action->oracle()->parse(text);
        c.expect("]");
      }
      tparts.push_back(std::move(p));
    } else {
      WordPart p;
      p.dom = c.word();
      c.expect("=>");
      p.img = c.word();
      p.label = sess.oracle->identity();
      if (c.lit("[")) {
        std::string text = c.until("]");
        if (text.empty()) c.fail_here("expected a label");
        p.label = sess.oracle->parse(text);
        c.expect("]");
      }
      wparts.push_back(std::move(p));
    }
    if (c.lit(",")) continue;
    c.expect("}");
    break;
  }
  if (twisted) return Bisection::make_twisted(std::move(tparts), sess.action);
  return Bisection::make_words(std::move(wparts), sess.oracle);
}

std::string print_bisection(const Bisection& b) {
  std::string out = "B{ ";
  bool first = true;
  if (b.flavor() == Flavor::SV2xG) {
    const SAction& action = *b.action();
    const GroupOracle& oracle = *action.oracle();
    for (const auto& p : b.twist_parts()) {
      if (!first) out += ", ";
      first = false;
      auto [dom, img] = part_sides(p);
      out += print_brick(dom, action) + " => " + print_brick(img, action);
      if (!oracle.is_identity(p.label)) out += " [" + oracle.print(p.label) + "]";
    }
  } else {
    const GroupOracle& oracle = *b.oracle();
    for (const auto& p : b.word_parts()) {
      if (!first) out += ", ";
      first = false;
      out += print_word(p.dom) + " => " + print_word(p.img);
      if (!oracle.is_identity(p.label)) out += " [" + oracle.print(p.label) + "]";
    }
  }
  if (first) return "B{}";
  out += " }";
  return out;
}

// ---------------------------------------------------------------------------
// expressions

Element element_identity_like(const Element& e) {
  if (const auto* t = std::get_if<GTable>(&e))
    return GTable::identity(t->oracle());
  if (const auto* t = std::get_if<TwistTable>(&e))
    return TwistTable::identity(t->action());
  const auto& b = std::get<Bisection>(e);
  if (b.flavor() == Flavor::SV2xG)
    return unit_bisection_twisted(source(b), b.action());
  return unit_bisection(source(b), b.oracle());
}

Element element_mul(const Element& a, const Element& b) {
  if (a.index() != b.index())
    fail(ErrorKind::ActionMismatch,
         "cannot multiply elements of different kinds");
  if (const auto* x = std::get_if<GTable>(&a))
    return mul(*x, std::get<GTable>(b));
  if (const auto* x = std::get_if<TwistTable>(&a))
    return tt_mul(*x, std::get<TwistTable>(b));
  return compose(std::get<Bisection>(a), std::get<Bisection>(b));
}

Element element_inv(const Element& a) {
  if (const auto* x = std::get_if<GTable>(&a)) return inv(*x);
  if (const auto* x = std::get_if<TwistTable>(&a)) return tt_inv(*x);
  return invert(std::get<Bisection>(a));
}

Element element_pow(const Element& a, long long k) {
  if (k < 0) return element_pow(element_inv(a), -k);
  Element acc = element_identity_like(a);
  for (long long i = 0; i < k; ++i) acc = element_mul(acc, a);
  return acc;
}

Element parse_expr(Cursor& c, const Session& sess);

Element parse_primary(Cursor& c, const Session& sess) {
  c.ws();
  if (c.lit("(")) {
    Element e = parse_expr(c, sess);
    c.expect(")");
    return e;
  }
  if (c.s.compare(c.pos, 2, "SV") == 0) {
    if (!sess.action)
      fail(ErrorKind::ActionMismatch, "twisted literal without an action");
    return parse_twist_table(c, sess.action);
  }
  if (c.s.compare(c.pos, 1, "V") == 0) return parse_gtable(c, sess.oracle);
  if (c.s.compare(c.pos, 1, "B") == 0) return parse_bisection(c, sess);
  if (c.lit("pi")) {
    c.expect("(");
    Element e = parse_expr(c, sess);
    c.expect(")");
    if (const auto* t = std::get_if<GTable>(&e)) return pi_forget(*t);
    fail(ErrorKind::ActionMismatch, "pi expects a table");
  }
  bool at0 = c.s.compare(c.pos, 5, "iota0") == 0;
  if (at0 || c.s.compare(c.pos, 5, "iotaE") == 0) {
    c.pos += 5;
    c.expect("(");
    std::string text = c.until(")");
    c.expect(")");
    GroupElem g = sess.oracle->parse(text.empty() ? "e" : text);
    return at0 ? iota0(g, sess.oracle) : iota_empty(g, sess.oracle);
  }
  if (c.lit("J")) {
    c.expect("(");
    Element e = parse_expr(c, sess);
    c.expect(")");
    if (const auto* t = std::get_if<GTable>(&e)) return J_map(*t);
    if (const auto* t = std::get_if<TwistTable>(&e)) return J_map_twisted(*t);
    fail(ErrorKind::ActionMismatch, "J expects a table");
  }
  if (c.lit("I")) {
    c.expect("(");
    Element e = parse_expr(c, sess);
    c.expect(")");
    const auto* b = std::get_if<Bisection>(&e);
    if (!b) fail(ErrorKind::ActionMismatch, "I expects a bisection");
    if (b->flavor() == Flavor::SV2xG) return I_map_twisted(*b);
    return I_map(*b);
  }
  c.fail_here("expected an element");
}

Element parse_power(Cursor& c, const Session& sess) {
  Element e = parse_primary(c, sess);
  while (c.lit("^")) {
    long long k = c.integer();
    e = element_pow(e, k);
  }
  return e;
}

Element parse_expr(Cursor& c, const Session& sess) {
  Element e = parse_power(c, sess);
  while (c.lit("*")) {
    Element f = parse_power(c, sess);
    e = element_mul(e, f);
  }
  return e;
}

// ---------------------------------------------------------------------------
// json

json brick_to_json(const BrickFn& b, const SAction& action) {
  json j = json::object();
  for (const auto& [s, w] : b.support()) j[action.print_s(s)] = w;
  return j;
}

BrickFn brick_from_json(const json& j, const SAction& action) {
  if (!j.is_object()) fail(ErrorKind::Parse, "brick must be a JSON object");
  std::map<SElem, Word> m;
  for (const auto& [k, v] : j.items())
    m[action.parse_s(k)] = parse_word(v.get<std::string>());
  return BrickFn::make(std::move(m));
}

json table_to_json(const GTable& t) {
  const GroupOracle& oracle = *t.oracle();
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "table";
  j["oracle"] = oracle.name();
  json dom = json::array(), img = json::array(), labels = json::array(),
       perm = json::array();
  PartitionSet image = t.image();
  for (const auto& w : image.words()) img.push_back(print_word(w));
  std::vector<std::size_t> p = t.perm();
  for (std::size_t i = 0; i < t.size(); ++i) {
    dom.push_back(print_word(t.slots()[i].dom));
    perm.push_back(p[i] + 1);  // 1-based
    labels.push_back(oracle.print(t.slots()[i].label));
  }
  j["domain"] = dom;
  j["image"] = img;
  j["perm"] = perm;
  j["labels"] = labels;
  return j;
}

GTable table_from_json(const json& j, const OraclePtr& oracle) {
  if (j.value("oracle", oracle->name()) != oracle->name())
    fail(ErrorKind::OracleMismatch,
         "serialized table uses oracle " + j["oracle"].get<std::string>() +
             ", session uses " + oracle->name());
  const auto& dom = j.at("domain");
  const auto& img = j.at("image");
  const auto& perm = j.at("perm");
  const auto& labels = j.at("labels");
  if (dom.size() != perm.size() || dom.size() != labels.size() ||
      dom.size() != img.size())
    fail(ErrorKind::SizeMismatch, "table arrays must have equal length");
  RawTable slots;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    std::size_t pi = perm[i].get<std::size_t>();
    if (pi < 1 || pi > img.size())
      fail(ErrorKind::Index, "perm entry out of range");
    slots.push_back(TableSlot{parse_word(dom[i].get<std::string>()),
                              parse_word(img[pi - 1].get<std::string>()),
                              oracle->parse(labels[i].get<std::string>())});
  }
  return GTable::make(std::move(slots), oracle);
}

json twist_table_to_json(const TwistTable& t) {
  const SAction& action = *t.action();
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "twist_table";
  j["action"] = action.name();
  json pieces = json::array();
  for (const auto& p : t.pieces()) {
    json pj;
    pj["dom"] = brick_to_json(p.dom, action);
    pj["twist"] = action.oracle()->print(p.twist);
    pj["img"] = brick_to_json(p.img, action);
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = pieces;
  return j;
}

TwistTable twist_table_from_json(const json& j, const ActionPtr& action) {
  if (j.value("action", action->name()) != action->name())
    fail(ErrorKind::ActionMismatch,
         "serialized element uses action " + j["action"].get<std::string>() +
             ", session uses " + action->name());
  std::vector<TwistPiece> pieces;
  for (const auto& pj : j.at("pieces"))
    pieces.push_back(TwistPiece{
        brick_from_json(pj.at("dom"), *action),
        action->oracle()->parse(pj.at("twist").get<std::string>()),
        brick_from_json(pj.at("img"), *action)});
  return TwistTable::make(std::move(pieces), action);
}

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::V2: return "V2";
    case Flavor::V2xG: return "V2xG";
    case Flavor::SV2xG: return "SV2xG";
  }
  return "V2";
}

json bisection_to_json(const Bisection& b) {
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "bisection";
  j["flavor"] = flavor_name(b.flavor());
  json parts = json::array();
  if (b.flavor() == Flavor::SV2xG) {
    const SAction& action = *b.action();
    j["action"] = action.name();
    for (const auto& p : b.twist_parts()) {
      auto [dom, img] = part_sides(p);
      json pj;
      pj["dom"] = brick_to_json(dom, action);
      pj["img"] = brick_to_json(img, action);
      pj["label"] = action.oracle()->print(p.label);
      parts.push_back(std::move(pj));
    }
  } else {
    j["oracle"] = b.oracle()->name();
    for (const auto& p : b.word_parts()) {
      json pj;
      pj["dom"] = print_word(p.dom);
      pj["img"] = print_word(p.img);
      pj["label"] = b.oracle()->print(p.label);
      parts.push_back(std::move(pj));
    }
  }
  j["parts"] = parts;
  return j;
}

Bisection bisection_from_json(const json& j, const Session& sess) {
  std::string flavor = j.value("flavor", "V2");
  if (flavor == "SV2xG") {
    if (!sess.action)
      fail(ErrorKind::ActionMismatch, "twisted bisection without an action");
    if (j.value("action", sess.action->name()) != sess.action->name())
      fail(ErrorKind::ActionMismatch,
           "serialized element uses action " + j["action"].get<std::string>() +
               ", session uses " + sess.action->name());
    std::vector<TwistPart> parts;
    for (const auto& pj : j.at("parts")) {
      TwistPart p;
      BrickFn dom = brick_from_json(pj.at("dom"), *sess.action);
      BrickFn img = brick_from_json(pj.at("img"), *sess.action);
      for (const auto& [s, w] : dom.support()) p.cw[s].second = w;
      for (const auto& [s, w] : img.support()) p.cw[s].first = w;
      p.label = sess.action->oracle()->parse(pj.at("label").get<std::string>());
      parts.push_back(std::move(p));
    }
    return Bisection::make_twisted(std::move(parts), sess.action);
  }
  if (j.value("oracle", sess.oracle->name()) != sess.oracle->name())
    fail(ErrorKind::OracleMismatch,
         "serialized element uses oracle " + j["oracle"].get<std::string>() +
             ", session uses " + sess.oracle->name());
  std::vector<WordPart> parts;
  for (const auto& pj : j.at("parts"))
    parts.push_back(
        WordPart{parse_word(pj.at("img").get<std::string>()),
                 parse_word(pj.at("dom").get<std::string>()),
                 sess.oracle->parse(pj.at("label").get<std::string>())});
  return Bisection::make_words(std::move(parts), sess.oracle);
}

json element_json(const Element& e) {
  if (const auto* t = std::get_if<GTable>(&e)) return table_to_json(*t);
  if (const auto* t = std::get_if<TwistTable>(&e))
    return twist_table_to_json(*t);
  return bisection_to_json(std::get<Bisection>(e));
}

// ---------------------------------------------------------------------------
// reports

json report_header(const Session& s, const std::string& command) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["oracle"] = s.oracle->name();
  if (s.action) j["action"] = s.action->name();
  j["seed"] = s.seed;
  return j;
}

CommandResult finish(const Session& s, json j, const std::string& plain,
                     bool ok = true) {
  j["ok"] = ok;
  CommandResult out;
  out.ok = ok;
  out.output = s.json ? j.dump() : plain;
  return out;
}

CommandResult report_error(const Session& s, const std::string& command,
                           const Error& err) {
  json j = report_header(s, command);
  j["error"] = {{"kind", error_kind_name(err.kind())},
                {"message", err.what()}};
  return finish(s, std::move(j),
                std::string("error: ") + error_kind_name(err.kind()) + ": " +
                    err.what(),
                false);
}

}  // namespace

// ---------------------------------------------------------------------------
// public api

Session default_session() {
  Session s;
  s.oracle = trivial_group();
  s.action = action_translation_z();
  return s;
}

OraclePtr oracle_by_name(const std::string& name) {
  if (name == "trivial") return trivial_group();
  if (name == "s3") return symmetric_group_3();
  if (name.rfind("cayley:", 0) == 0) {
    std::string path = name.substr(7);
    const char* root = std::getenv("CG_ORACLE_PATH");
    if (root && !path.empty() && path[0] != '/')
      path = std::string(root) + "/" + path;
    return load_cayley_file(path);
  }
  auto tail_number = [&](std::size_t off) -> long long {
    const std::string tail = name.substr(off);
    if (tail.empty() ||
        tail.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::Parse, "unknown oracle name: " + name);
    return std::stoll(tail);
  };
  if (name.rfind("z^", 0) == 0)
    return zn_group(static_cast<unsigned>(tail_number(2)));
  if (!name.empty() && name[0] == 'z')
    return cyclic_group(static_cast<unsigned>(tail_number(1)));
  if (!name.empty() && name[0] == 'f')
    return free_group(static_cast<unsigned>(tail_number(1)));
  fail(ErrorKind::Parse, "unknown oracle name: " + name);
}

ActionPtr action_by_name(const std::string& name) {
  if (name == "translation" || name == "z-translation")
    return action_translation_z();
  if (name.rfind("trivial:", 0) == 0) {
    const std::string tail = name.substr(8);
    if (tail.empty() ||
        tail.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::Parse, "unknown action name: " + name);
    return action_trivial_finite(static_cast<unsigned>(std::stoul(tail)));
  }
  if (name.rfind("regular:", 0) == 0)
    return action_regular(oracle_by_name(name.substr(8)));
  fail(ErrorKind::Parse, "unknown action name: " + name);
}

Element parse_element(const std::string& text, const Session& s) {
  Cursor c{text};
  c.ws();
  Element e = [&]() -> Element {
    if (text.compare(c.pos, 2, "SV") == 0) {
      if (!s.action)
        fail(ErrorKind::ActionMismatch, "twisted literal without an action");
      return parse_twist_table(c, s.action);
    }
    if (text.compare(c.pos, 1, "V") == 0) return parse_gtable(c, s.oracle);
    if (text.compare(c.pos, 1, "B") == 0) return parse_bisection(c, s);
    c.fail_here("expected V{...}, SV{...} or B{...}");
  }();
  if (!c.eof()) c.fail_here("trailing input");
  return e;
}

std::string print_element(const Element& e) {
  if (const auto* t = std::get_if<GTable>(&e)) return print_gtable(*t);
  if (const auto* t = std::get_if<TwistTable>(&e))
    return print_twist_table(*t);
  return print_bisection(std::get<Bisection>(e));
}

bool elements_equal(const Element& a, const Element& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<GTable>(&a))
    return eq(*x, std::get<GTable>(b));
  if (const auto* x = std::get_if<TwistTable>(&a))
    return tt_eq(*x, std::get<TwistTable>(b));
  return bisection_eq(std::get<Bisection>(a), std::get<Bisection>(b));
}

Element eval_expression(const std::string& text, const Session& s) {
  Cursor c{text};
  Element e = parse_expr(c, s);
  if (!c.eof()) c.fail_here("trailing input");
  return e;
}

std::string element_to_json(const Element& e) { return element_json(e).dump(); }

Element element_from_json(const std::string& text, const Session& s) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    fail(ErrorKind::Parse, std::string("invalid JSON: ") + ex.what());
  }
  try {
    const std::string type = j.value("type", "");
    if (type == "table") return table_from_json(j, s.oracle);
    if (type == "twist_table") {
      if (!s.action)
        fail(ErrorKind::ActionMismatch, "twisted element without an action");
      return twist_table_from_json(j, s.action);
    }
    if (type == "bisection") return bisection_from_json(j, s);
    fail(ErrorKind::Parse, "unknown element type: " + type);
  } catch (const json::exception& ex) {
    fail(ErrorKind::Parse, std::string("malformed element JSON: ") + ex.what());
  }
}

CubePoint parse_cube_point(const std::string& text, const SAction& action) {
  Cursor c{text};
  c.ws();
  CantorPoint def("", "0");
  if (c.peek() != '{' && !c.eof()) {
    std::string head = c.until("{");
    def = CantorPoint::parse(head);
  }
  std::map<SElem, CantorPoint> support;
  if (c.lit("{")) {
    if (!c.lit("}")) {
      for (;;) {
        std::string tok = c.until(":");
        if (tok.empty()) c.fail_here("expected a coordinate");
        c.expect(":");
        SElem s = action.parse_s(tok);
        std::string pt = c.until(",}");
        if (support.count(s)) c.fail_here("repeated coordinate");
        support.emplace(std::move(s), CantorPoint::parse(pt));
        if (c.lit(",")) continue;
        c.expect("}");
        break;
      }
    }
  }
  if (!c.eof()) c.fail_here("trailing input");
  return CubePoint(std::move(def), std::move(support));
}

std::string print_cube_point(const CubePoint& k, const SAction& action) {
  std::string out = k.default_value().str();
  if (k.support().empty()) return out;
  out += " {";
  bool first = true;
  for (const auto& [s, p] : k.support()) {
    if (!first) out += ", ";
    first = false;
    out += action.print_s(s) + ":" + p.str();
  }
  out += "}";
  return out;
}

ClopenSet parse_clopen(const std::string& text, const Session& s) {
  Cursor c{text};
  c.expect("{");
  if (c.lit("}")) {
    if (!c.eof()) c.fail_here("trailing input");
    return ClopenSet::from_words({});
  }
  if (c.peek() == '{') {
    if (!s.action) c.fail_here("brick clopen set without an action");
    std::vector<BrickFn> bricks;
    for (;;) {
      bricks.push_back(parse_brick(c, *s.action));
      if (c.lit(",")) continue;
      c.expect("}");
      break;
    }
    if (!c.eof()) c.fail_here("trailing input");
    return ClopenSet::from_bricks(std::move(bricks));
  }
  std::vector<Word> words;
  for (;;) {
    words.push_back(c.word());
    if (c.lit(",")) continue;
    c.expect("}");
    break;
  }
  if (!c.eof()) c.fail_here("trailing input");
  return ClopenSet::from_words(std::move(words));
}

std::string print_clopen(const ClopenSet& u, const Session& s) {
  std::string out = "{";
  bool first = true;
  if (u.twisted()) {
    for (const auto& b : u.bricks()) {
      if (!first) out += ", ";
      first = false;
      out += print_brick(b, *s.action);
    }
  } else {
    for (const auto& w : u.words()) {
      if (!first) out += ", ";
      first = false;
      out += print_word(w);
    }
  }
  out += "}";
  return out;
}

// ---------------------------------------------------------------------------
// commands

CommandResult cmd_eval(const Session& s, const std::string& expr) {
  try {
    Element e = eval_expression(expr, s);
    json j = report_header(s, "eval");
    j["input"] = {{"expr", expr}};
    j["result"] = {{"element", element_json(e)},
                   {"text", print_element(e)}};
    return finish(s, std::move(j), print_element(e));
  } catch (const Error& err) {
    return report_error(s, "eval", err);
  }
}

CommandResult cmd_act(const Session& s, const std::string& expr,
                      const std::string& point) {
  try {
    Element e = eval_expression(expr, s);
    json j = report_header(s, "act");
    j["input"] = {{"expr", expr}, {"point", point}};
    if (const auto* t = std::get_if<GTable>(&e)) {
      auto [y, label] = act(*t, CantorPoint::parse(point));
      j["result"] = {{"point", y.str()}, {"label", t->oracle()->print(label)}};
      return finish(s, std::move(j),
                    y.str() + " [" + t->oracle()->print(label) + "]");
    }
    if (const auto* t = std::get_if<TwistTable>(&e)) {
      CubePoint y = tt_act(*t, parse_cube_point(point, *t->action()));
      j["result"] = {{"point", print_cube_point(y, *t->action())}};
      return finish(s, std::move(j), print_cube_point(y, *t->action()));
    }
    const Bisection& b = std::get<Bisection>(e);
    if (b.flavor() == Flavor::SV2xG) {
      const SAction& action = *b.action();
      const GroupOracle& oracle = *action.oracle();
      CubePoint x = parse_cube_point(point, action);
      for (const auto& p : b.twist_parts()) {
        auto [left, img] = part_sides(p);
        BrickFn dom = twist_brick(action, oracle.invert(p.label), left);
        auto inner = h_unapply(dom, x);
        if (!inner) continue;
        CubePoint y = h_apply(img, twist_apply(action, p.label, *inner));
        j["result"] = {{"defined", true},
                       {"point", print_cube_point(y, action)},
                       {"label", oracle.print(p.label)}};
        return finish(s, std::move(j),
                      print_cube_point(y, action) + " [" +
                          oracle.print(p.label) + "]");
      }
      j["result"] = {{"defined", false}};
      return finish(s, std::move(j), "undefined");
    }
    // word-flavor partial application
    CantorPoint x = CantorPoint::parse(point);
    for (const auto& p : b.word_parts()) {
      if (!x.has_prefix(p.dom)) continue;
      CantorPoint y = prepend(p.img, *strip_prefix(p.dom, x));
      j["result"] = {{"defined", true},
                     {"point", y.str()},
                     {"label", b.oracle()->print(p.label)}};
      return finish(s, std::move(j),
                    y.str() + " [" + b.oracle()->print(p.label) + "]");
    }
    j["result"] = {{"defined", false}};
    return finish(s, std::move(j), "undefined");
  } catch (const Error& err) {
    return report_error(s, "act", err);
  }
}

CommandResult cmd_order(const Session& s, const std::string& expr,
                        unsigned max) {
  try {
    Element e = eval_expression(expr, s);
    std::optional<unsigned> n;
    if (const auto* t = std::get_if<GTable>(&e))
      n = order(*t, max);
    else if (const auto* t = std::get_if<TwistTable>(&e))
      n = tt_order(*t, max);
    else {
      const Bisection& b = std::get<Bisection>(e);
      if (b.flavor() == Flavor::SV2xG)
        n = tt_order(I_map_twisted(b), max);
      else
        n = order(I_map(b), max);
    }
    json j = report_header(s, "order");
    j["input"] = {{"expr", expr}, {"max", max}};
    if (n)
      j["result"] = {{"order", *n}};
    else
      j["result"] = {{"order", nullptr}};
    std::string plain = n ? "order: " + std::to_string(*n)
                          : "order: none up to " + std::to_string(max);
    return finish(s, std::move(j), plain);
  } catch (const Error& err) {
    return report_error(s, "order", err);
  }
}

CommandResult cmd_center(const Session& s, const std::string& expr) {
  try {
    Element e = eval_expression(expr, s);
    const GTable* t = std::get_if<GTable>(&e);
    GTable held = t ? *t : GTable::identity(s.oracle);
    if (!t) {
      const Bisection* b = std::get_if<Bisection>(&e);
      if (!b || b->flavor() == Flavor::SV2xG)
        fail(ErrorKind::ActionMismatch,
             "center test requires a table or a word-flavor bisection");
      held = I_map(*b);
    }
    CenterResult r = center_test(held);
    json j = report_header(s, "center");
    j["input"] = {{"expr", expr}};
    json rj;
    std::string plain;
    switch (r.kind) {
      case CenterResult::Kind::Central:
        rj["kind"] = "central";
        plain = "central";
        if (r.z) {
          rj["z"] = held.oracle()->print(*r.z);
          plain += " (z = " + held.oracle()->print(*r.z) + ")";
        }
        break;
      case CenterResult::Kind::NotCentral:
        rj["kind"] = "not-central";
        plain = "not central";
        if (r.witness) {
          rj["witness"] = print_gtable(*r.witness);
          plain += " (witness " + print_gtable(*r.witness) + ")";
        }
        break;
      case CenterResult::Kind::Unknown:
        rj["kind"] = "unknown";
        plain = "unknown";
        break;
    }
    j["result"] = rj;
    return finish(s, std::move(j), plain);
  } catch (const Error& err) {
    return report_error(s, "center", err);
  }
}

CommandResult cmd_witness(const Session& s, const std::string& u,
                          const std::string& v) {
  try {
    ClopenSet cu = parse_clopen(u, s);
    ClopenSet cv = parse_clopen(v, s);
    Bisection w = (cu.twisted() || cv.twisted())
                      ? min_witness_twisted(cu, cv, s.action)
                      : min_witness(cu, cv, s.oracle);
    json j = report_header(s, "witness");
    j["input"] = {{"U", u}, {"V", v}};
    j["result"] = {{"element", bisection_to_json(w)},
                   {"text", print_bisection(w)}};
    return finish(s, std::move(j), print_bisection(w));
  } catch (const Error& err) {
    return report_error(s, "witness", err);
  }
}

}  // namespace cg
