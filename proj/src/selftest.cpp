#include "cg/selftest.hpp"

#include <functional>
#include <sstream>

#include <json.hpp>

#include "cg/error.hpp"
#include "cg/random_gen.hpp"

namespace cg {

namespace {

using nlohmann::json;

// Runs one property n times against a suite-local deterministic rng.
struct SuiteBuilder {
  SuiteResult result;
  Rng rng;
  unsigned n;

  SuiteBuilder(std::string name, std::uint64_t seed, unsigned n_)
      : rng(seed ^ std::hash<std::string>{}(name)), n(n_) {
    result.name = std::move(name);
  }

  void prop(const std::string& name,
            const std::function<bool(Rng&)>& check) {
    PropertyResult p;
    p.name = name;
    for (unsigned i = 0; i < n; ++i) {
      ++p.checks;
      bool ok = false;
      try {
        ok = check(rng);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) ++p.failures;
    }
    result.properties.push_back(std::move(p));
  }
};

PartitionSet random_partition(Rng& rng) {
  return random_table(trivial_group(), rng).domain();
}

SuiteResult suite_words(std::uint64_t seed, unsigned n) {
  SuiteBuilder b("words", seed, n);
  b.prop("refinement-commutes", [](Rng& rng) {
    PartitionSet p = random_partition(rng), q = random_partition(rng);
    return common_refinement(p, q) == common_refinement(q, p);
  });
  b.prop("refinement-associates", [](Rng& rng) {
    PartitionSet p = random_partition(rng), q = random_partition(rng),
                 r = random_partition(rng);
    return common_refinement(common_refinement(p, q), r) ==
           common_refinement(p, common_refinement(q, r));
  });
  b.prop("refinement-idempotent", [](Rng& rng) {
    PartitionSet p = random_partition(rng);
    return common_refinement(p, p) == p;
  });
  b.prop("expansion-stays-complete", [](Rng& rng) {
    PartitionSet p = random_partition(rng);
    PartitionSet q = p.expand(rng() % p.size());
    return q.size() == p.size() + 1 && dyadic_sum_is_one(q.words());
  });
  return b.result;
}

SuiteResult suite_cantor(std::uint64_t seed, unsigned n) {
  SuiteBuilder b("cantor", seed, n);
  b.prop("parse-print-round-trip", [](Rng& rng) {
    CantorPoint x = random_point(rng);
    return CantorPoint::parse(x.str()) == x;
  });
  b.prop("prepend-strip-inverse", [](Rng& rng) {
    CantorPoint x = random_point(rng);
    Word w;
    for (int i = 0; i < static_cast<int>(rng() % 4); ++i)
      w += (rng() % 2) ? '1' : '0';
    auto y = strip_prefix(w, prepend(w, x));
    return y && *y == x;
  });
  b.prop("shift-inverts-prepend", [](Rng& rng) {
    CantorPoint x = random_point(rng);
    return prepend("0", x).shift() == x && prepend("1", x).shift() == x;
  });
  b.prop("order-matches-bits", [](Rng& rng) {
    CantorPoint x = random_point(rng), y = random_point(rng);
    for (std::size_t i = 0; i < 64; ++i) {
      if (x.bit(i) < y.bit(i)) return x < y;
      if (x.bit(i) > y.bit(i)) return y < x;
    }
    return x == y;
  });
  return b.result;
}

SuiteResult suite_groups(std::uint64_t seed, unsigned n) {
  SuiteBuilder b("groups", seed, n);
  std::vector<OraclePtr> oracles{symmetric_group_3(), cyclic_group(4),
                                 free_group(2), zn_group(2)};
  b.prop("associativity", [oracles](Rng& rng) {
    const auto& g = *oracles[rng() % oracles.size()];
    GroupElem x = g.sample(rng), y = g.sample(rng), z = g.sample(rng);
    return g.equals(g.multiply(g.multiply(x, y), z),
                    g.multiply(x, g.multiply(y, z)));
  });
  b.prop("identity-and-inverses", [oracles](Rng& rng) {
    const auto& g = *oracles[rng() % oracles.size()];
    GroupElem x = g.sample(rng);
    return g.equals(g.multiply(x, g.identity()), x) &&
           g.is_identity(g.multiply(x, g.invert(x)));
  });
  b.prop("parse-print-round-trip", [oracles](Rng& rng) {
    const auto& g = *oracles[rng() % oracles.size()];
    GroupElem x = g.sample(rng);
    return g.equals(g.parse(g.print(x)), x);
  });
  b.prop("centrality-matches-generators", [](Rng& rng) {
    auto s3 = symmetric_group_3();
    GroupElem x = s3->sample(rng);
    auto central = is_central(*s3, x);
    if (!central) return false;
    for (const auto& g : s3->generators())
      if (!s3->equals(s3->multiply(x, g), s3->multiply(g, x)))
        return !*central;
    return *central;
  });
  return b.result;
}

SuiteResult suite_tables(std::uint64_t seed, unsigned n) {
  SuiteBuilder b("tables", seed, n);
  OraclePtr s3 = symmetric_group_3();
  b.prop("group-axioms", [s3](Rng& rng) {
    GTable x = random_table(s3, rng), y = random_table(s3, rng),
           z = random_table(s3, rng);
    return eq(mul(mul(x, y), z), mul(x, mul(y, z))) &&
           mul(x, inv(x)).is_identity() &&
           eq(mul(x, GTable::identity(s3)), x);
  });
  b.prop("expand-reduce-round-trip", [s3](Rng& rng) {
    GTable x = random_table(s3, rng);
    return eq(GTable::make(x.expand_at(rng() % x.size()), s3), x);
  });
  b.prop("action-is-homomorphism", [s3](Rng& rng) {
    GTable x = random_table(s3, rng), y = random_table(s3, rng);
    CantorPoint p = random_point(rng);
    return act(mul(x, y), p).first == act(x, act(y, p).first).first;
  });
  b.prop("iota-homomorphisms", [s3](Rng& rng) {
    GroupElem g = s3->sample(rng), h = s3->sample(rng);
    return eq(mul(iota0(g, s3), iota0(h, s3)),
              iota0(s3->multiply(g, h), s3)) &&
           eq(mul(iota_empty(g, s3), iota_empty(h, s3)),
              iota_empty(s3->multiply(g, h), s3));
  });
  b.prop("pi-homomorphism-and-kernel", [s3](Rng& rng) {
    GTable x = random_table(s3, rng), y = random_table(s3, rng);
    return eq(pi_forget(mul(x, y)), mul(pi_forget(x), pi_forget(y))) &&
           in_pi_kernel(iota_empty(s3->sample(rng), s3));
  });
  return b.result;
}

SuiteResult suite_twisted(std::uint64_t seed, unsigned n) {
  SuiteBuilder b("twisted", seed, n);
  ActionPtr z = action_translation_z();
  b.prop("group-axioms", [z](Rng& rng) {
    TwistTable x = random_twist_table(z, rng, 3),
               y = random_twist_table(z, rng, 3),
               w = random_twist_table(z, rng, 3);
    return tt_eq(tt_mul(tt_mul(x, y), w), tt_mul(x, tt_mul(y, w))) &&
           tt_mul(x, tt_inv(x)).is_identity();
  });
  b.prop("expand-reduce-round-trip", [z](Rng& rng) {
    TwistTable x = random_twist_table(z, rng, 3);
    auto pool = z->sample_coords();
    auto raw = x.expand_at(rng() % x.size(), pool[rng() % pool.size()]);
    return tt_eq(TwistTable::make(std::move(raw), z), x);
  });
  b.prop("tau-homomorphism", [z](Rng& rng) {
    GroupElem g = z->oracle()->sample(rng), h = z->oracle()->sample(rng);
    return tt_eq(tt_mul(TwistTable::tau(g, z), TwistTable::tau(h, z)),
                 TwistTable::tau(z->oracle()->multiply(g, h), z));
  });
  b.prop("action-is-homomorphism", [z](Rng& rng) {
    TwistTable x = random_twist_table(z, rng, 2),
               y = random_twist_table(z, rng, 2);
    TwistTable xy = tt_mul(x, y);
    for (const auto& k : corner_samples(x, y))
      if (!(tt_act(xy, k) == tt_act(x, tt_act(y, k)))) return false;
    return true;
  });
  b.prop("equality-is-pointwise", [z](Rng& rng) {
    TwistTable x = random_twist_table(z, rng, 2),
               y = random_twist_table(z, rng, 2);
    bool same = true;
    for (const auto& k : corner_samples(x, y))
      if (!(tt_act(x, k) == tt_act(y, k))) {
        same = false;
        break;
      }
    return tt_eq(x, y) == same;
  });
  return b.result;
}

SuiteResult suite_bisections(std::uint64_t seed, unsigned n) {
  SuiteBuilder b("bisections", seed, n);
  OraclePtr s3 = symmetric_group_3();
  ActionPtr z = action_translation_z();
  b.prop("groupoid-laws", [s3](Rng& rng) {
    Bisection x = random_word_bisection(s3, rng),
              y = random_word_bisection(s3, rng),
              w = random_word_bisection(s3, rng);
    return bisection_eq(compose(compose(x, y), w),
                        compose(x, compose(y, w))) &&
           bisection_eq(compose(x, invert(x)),
                        unit_bisection(range(x), s3));
  });
  b.prop("groupoid-laws-twisted", [z](Rng& rng) {
    Bisection x = random_twisted_bisection(z, rng),
              y = random_twisted_bisection(z, rng);
    return bisection_eq(compose(x, invert(x)),
                        unit_bisection_twisted(range(x), z));
  });
  b.prop("I-J-inverse", [s3, z](Rng& rng) {
    GTable t = random_table(s3, rng);
    TwistTable u = random_twist_table(z, rng, 3);
    return eq(I_map(J_map(t)), t) &&
           tt_eq(I_map_twisted(J_map_twisted(u)), u);
  });
  b.prop("min-witness-postconditions", [s3](Rng& rng) {
    ClopenSet u = random_clopen_words(rng), v = random_clopen_words(rng);
    Bisection w = min_witness(u, v, s3);
    return source(w) == u && clopen_subset(range(w), v);
  });
  b.prop("isotropy-matches-brute-force", [s3](Rng& rng) {
    Bisection x = random_word_bisection(s3, rng);
    for (const auto& part : x.word_parts()) {
      if (part.dom == part.img) continue;
      auto fixed = isotropy_points(part, 3);
      for (const auto& p : enumerate_points(3, 6)) {
        bool is_fixed = false;
        if (p.has_prefix(part.dom))
          is_fixed = prepend(part.img, *strip_prefix(part.dom, p)) == p;
        bool listed = false;
        for (const auto& f : fixed) listed = listed || f == p;
        if (is_fixed != listed) return false;
      }
    }
    return true;
  });
  return b.result;
}

SuiteResult suite_parse(std::uint64_t seed, unsigned n) {
  SuiteBuilder b("parse", seed, n);
  Session sw = default_session();
  sw.oracle = symmetric_group_3();
  Session st = default_session();
  st.oracle = st.action->oracle();
  b.prop("text-round-trip", [sw, st](Rng& rng) {
    Element es[3] = {Element{random_table(sw.oracle, rng)},
                     Element{random_twist_table(st.action, rng, 3)},
                     Element{random_word_bisection(sw.oracle, rng)}};
    const Session* sessions[3] = {&sw, &st, &sw};
    for (int i = 0; i < 3; ++i) {
      std::string text = print_element(es[i]);
      if (!elements_equal(parse_element(text, *sessions[i]), es[i]))
        return false;
      if (print_element(parse_element(text, *sessions[i])) != text)
        return false;
    }
    return true;
  });
  b.prop("json-round-trip", [sw, st](Rng& rng) {
    Element es[3] = {Element{random_table(sw.oracle, rng)},
                     Element{random_twist_table(st.action, rng, 3)},
                     Element{random_twisted_bisection(st.action, rng)}};
    const Session* sessions[3] = {&sw, &st, &st};
    for (int i = 0; i < 3; ++i) {
      std::string text = element_to_json(es[i]);
      if (!elements_equal(element_from_json(text, *sessions[i]), es[i]))
        return false;
    }
    return true;
  });
  b.prop("eval-inverse-law", [sw](Rng& rng) {
    GTable t = random_table(sw.oracle, rng);
    std::string text = print_element(Element{t});
    Element e = eval_expression(text + " * " + text + " ^ -1", sw);
    return std::get<GTable>(e).is_identity();
  });
  return b.result;
}

using SuiteFn = SuiteResult (*)(std::uint64_t, unsigned);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"words", suite_words},         {"cantor", suite_cantor},
      {"groups", suite_groups},       {"tables", suite_tables},
      {"twisted", suite_twisted},     {"bisections", suite_bisections},
      {"parse", suite_parse},
  };
  return table;
}

}  // namespace

std::vector<std::string> selftest_suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suite_table()) out.push_back(name);
  return out;
}

std::vector<SuiteResult> run_selftest(const std::string& suite,
                                      std::uint64_t seed, unsigned n) {
  if (n == 0) n = 1;
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : suite_table())
    if (suite == "all" || suite == name) out.push_back(fn(seed, n));
  if (out.empty())
    fail(ErrorKind::UnknownSuite, "unknown selftest suite: " + suite);
  return out;
}

CommandResult cmd_selftest(const Session& s, const std::string& suite,
                           unsigned n) {
  try {
    std::vector<SuiteResult> results = run_selftest(suite, s.seed, n);
    bool all_ok = true;
    std::ostringstream plain;
    json suites = json::array();
    for (const auto& r : results) {
      all_ok = all_ok && r.ok();
      json props = json::array();
      for (const auto& p : r.properties) {
        plain << r.name << "." << p.name << ": checks=" << p.checks
              << " failures=" << p.failures << "\n";
        props.push_back({{"name", p.name},
                         {"checks", p.checks},
                         {"failures", p.failures}});
      }
      suites.push_back(
          {{"name", r.name}, {"ok", r.ok()}, {"properties", props}});
    }
    plain << "selftest: " << (all_ok ? "PASS" : "FAIL");
    json j;
    j["schema"] = 1;
    j["command"] = "selftest";
    j["oracle"] = s.oracle->name();
    if (s.action) j["action"] = s.action->name();
    j["seed"] = s.seed;
    j["input"] = {{"suite", suite}, {"n", n}};
    j["result"] = {{"suites", suites}};
    j["ok"] = all_ok;
    CommandResult out;
    out.ok = all_ok;
    out.output = s.json ? j.dump() : plain.str();
    return out;
  } catch (const Error& err) {
    json j;
    j["schema"] = 1;
    j["command"] = "selftest";
    j["seed"] = s.seed;
    j["error"] = {{"kind", error_kind_name(err.kind())},
                  {"message", err.what()}};
    j["ok"] = false;
    CommandResult out;
    out.ok = false;
    out.output = s.json ? j.dump()
                        : std::string("error: ") +
                              error_kind_name(err.kind()) + ": " + err.what();
    return out;
  }
}

}  // namespace cg
