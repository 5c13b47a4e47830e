#include "cg/group.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "cg/error.hpp"

namespace cg {

namespace {

// ---------------------------------------------------------------------------
// trivial group

class TrivialGroup final : public GroupOracle {
 public:
  GroupElem identity() const override { return GroupElem{std::uint32_t{0}}; }
  GroupElem multiply(const GroupElem&, const GroupElem&) const override {
    return identity();
  }
  GroupElem invert(const GroupElem&) const override { return identity(); }
  bool equals(const GroupElem&, const GroupElem&) const override {
    return true;
  }
  std::vector<GroupElem> generators() const override { return {}; }
  GroupElem parse(const std::string& text) const override {
    if (text != "e" && text != "0")
      fail(ErrorKind::Parse, "trivial group has only the element e");
    return identity();
  }
  std::string print(const GroupElem&) const override { return "e"; }
  std::optional<bool> is_central(const GroupElem&) const override {
    return true;
  }
  std::optional<std::vector<GroupElem>> all_elements() const override {
    return std::vector<GroupElem>{identity()};
  }
  GroupElem sample(Rng&) const override { return identity(); }
  std::string name() const override { return "trivial"; }
};

// ---------------------------------------------------------------------------
// finite group from a Cayley table

class CayleyGroup final : public GroupOracle {
 public:
  CayleyGroup(std::vector<std::vector<std::uint32_t>> table, std::string name)
      : table_(std::move(table)), name_(std::move(name)) {
    validate();
  }

  GroupElem identity() const override { return GroupElem{std::uint32_t{0}}; }

  GroupElem multiply(const GroupElem& a, const GroupElem& b) const override {
    return GroupElem{table_[idx(a)][idx(b)]};
  }

  GroupElem invert(const GroupElem& a) const override {
    return GroupElem{inverse_[idx(a)]};
  }

  bool equals(const GroupElem& a, const GroupElem& b) const override {
    return idx(a) == idx(b);
  }

  std::vector<GroupElem> generators() const override {
    std::vector<GroupElem> out;
    for (std::uint32_t i = 1; i < order(); ++i) out.push_back(GroupElem{i});
    return out;
  }

  GroupElem parse(const std::string& text) const override {
    if (text == "e") return identity();
    try {
      unsigned long k = std::stoul(text);
      if (k >= order()) fail(ErrorKind::Parse, "element index out of range");
      return GroupElem{static_cast<std::uint32_t>(k)};
    } catch (const Error&) {
      throw;
    } catch (...) {
      fail(ErrorKind::Parse, "finite-group element must be an index: " + text);
    }
  }

  std::string print(const GroupElem& a) const override {
    return idx(a) == 0 ? "e" : std::to_string(idx(a));
  }

  std::optional<bool> is_central(const GroupElem& a) const override {
    std::uint32_t x = idx(a);
    for (std::uint32_t g = 0; g < order(); ++g)
      if (table_[x][g] != table_[g][x]) return false;
    return true;
  }

  std::optional<std::vector<GroupElem>> all_elements() const override {
    std::vector<GroupElem> out;
    for (std::uint32_t i = 0; i < order(); ++i) out.push_back(GroupElem{i});
    return out;
  }

  GroupElem sample(Rng& rng) const override {
    std::uniform_int_distribution<std::uint32_t> d(0, order() - 1);
    return GroupElem{d(rng)};
  }

  std::string name() const override { return name_; }

  std::uint32_t order() const {
    return static_cast<std::uint32_t>(table_.size());
  }

 private:
  static std::uint32_t idx(const GroupElem& a) {
    return std::get<std::uint32_t>(a.v);
  }

  void validate() {
    const std::uint32_t n = order();
    if (n == 0) fail(ErrorKind::NotAGroup, "empty Cayley table");
    for (const auto& row : table_)
      if (row.size() != n)
        fail(ErrorKind::NotAGroup, "Cayley table is not square");
    for (const auto& row : table_)
      for (auto x : row)
        if (x >= n) fail(ErrorKind::NotAGroup, "Cayley entry out of range");
    // Latin square.
    for (std::uint32_t i = 0; i < n; ++i) {
      std::vector<bool> row_seen(n, false), col_seen(n, false);
      for (std::uint32_t j = 0; j < n; ++j) {
        if (row_seen[table_[i][j]])
          fail(ErrorKind::NotAGroup,
               "row " + std::to_string(i) + " is not a permutation");
        if (col_seen[table_[j][i]])
          fail(ErrorKind::NotAGroup,
               "column " + std::to_string(i) + " is not a permutation");
        row_seen[table_[i][j]] = true;
        col_seen[table_[j][i]] = true;
      }
    }
    // Element 0 must be a two-sided identity.
    for (std::uint32_t i = 0; i < n; ++i)
      if (table_[0][i] != i || table_[i][0] != i)
        fail(ErrorKind::NotAGroup, "element 0 is not the identity");
    // Inverses.
    inverse_.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      bool found = false;
      for (std::uint32_t j = 0; j < n; ++j) {
        if (table_[i][j] == 0) {
          if (table_[j][i] != 0)
            fail(ErrorKind::NotAGroup,
                 "one-sided inverse for element " + std::to_string(i));
          inverse_[i] = j;
          found = true;
          break;
        }
      }
      if (!found)
        fail(ErrorKind::NotAGroup,
             "no inverse for element " + std::to_string(i));
    }
    // Associativity: exhaustive up to order 64, sampled above.
    auto check_triple = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
      if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
        fail(ErrorKind::NotAGroup,
             "associativity fails at (" + std::to_string(a) + "," +
                 std::to_string(b) + "," + std::to_string(c) + ")");
    };
    if (n <= 64) {
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
          for (std::uint32_t c = 0; c < n; ++c) check_triple(a, b, c);
    } else {
      Rng rng(0xCA71E);
      std::uniform_int_distribution<std::uint32_t> d(0, n - 1);
      for (int k = 0; k < 100000; ++k) check_triple(d(rng), d(rng), d(rng));
    }
  }

  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  std::string name_;
};

// ---------------------------------------------------------------------------
// free groups

FreeWord reduce_concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  for (int letter : b) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

class FreeGroup final : public GroupOracle {
 public:
  explicit FreeGroup(unsigned rank) : rank_(rank) {
    if (rank == 0 || rank > 26)
      fail(ErrorKind::Parse, "free group rank must be between 1 and 26");
  }

  GroupElem identity() const override { return GroupElem{FreeWord{}}; }

  GroupElem multiply(const GroupElem& a, const GroupElem& b) const override {
    return GroupElem{reduce_concat(word(a), word(b))};
  }

  GroupElem invert(const GroupElem& a) const override {
    FreeWord out;
    const FreeWord& w = word(a);
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return GroupElem{out};
  }

  bool equals(const GroupElem& a, const GroupElem& b) const override {
    return word(a) == word(b);
  }

  std::vector<GroupElem> generators() const override {
    std::vector<GroupElem> out;
    for (unsigned i = 1; i <= rank_; ++i)
      out.push_back(GroupElem{FreeWord{static_cast<int>(i)}});
    return out;
  }

  GroupElem parse(const std::string& text) const override {
    FreeWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      if (tok == "e") continue;
      char c = tok[0];
      if (c < 'a' || c >= static_cast<char>('a' + rank_))
        fail(ErrorKind::Parse, "unknown generator in \"" + tok + "\"");
      int letter = c - 'a' + 1;
      long long exp = 1;
      if (tok.size() > 1) {
        if (tok[1] != '^')
          fail(ErrorKind::Parse, "malformed token \"" + tok + "\"");
        try {
          exp = std::stoll(tok.substr(2));
        } catch (...) {
          fail(ErrorKind::Parse, "malformed exponent in \"" + tok + "\"");
        }
      }
      int step = exp >= 0 ? letter : -letter;
      for (long long k = 0; k < std::llabs(exp); ++k)
        w = reduce_concat(w, FreeWord{step});
    }
    return GroupElem{w};
  }

  std::string print(const GroupElem& a) const override {
    const FreeWord& w = word(a);
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      if (!out.empty()) out += ' ';
      out += static_cast<char>('a' + std::abs(w[i]) - 1);
      long long exp = static_cast<long long>(j - i) * (w[i] > 0 ? 1 : -1);
      if (exp != 1) out += "^" + std::to_string(exp);
      i = j;
    }
    return out;
  }

  std::optional<bool> is_central(const GroupElem& a) const override {
    if (rank_ == 1) return true;
    return word(a).empty();
  }

  GroupElem sample(Rng& rng) const override {
    std::uniform_int_distribution<int> len(0, 4);
    std::uniform_int_distribution<int> gen(1, static_cast<int>(rank_));
    std::uniform_int_distribution<int> sign(0, 1);
    FreeWord w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      int letter = gen(rng) * (sign(rng) ? 1 : -1);
      w = reduce_concat(w, FreeWord{letter});
    }
    return GroupElem{w};
  }

  std::string name() const override {
    return "F" + std::to_string(rank_);
  }

 private:
  static const FreeWord& word(const GroupElem& a) {
    return std::get<FreeWord>(a.v);
  }
  unsigned rank_;
};

// ---------------------------------------------------------------------------
// Z^n

class ZnGroup final : public GroupOracle {
 public:
  explicit ZnGroup(unsigned n) : n_(n) {
    if (n == 0) fail(ErrorKind::Parse, "Z^n requires n >= 1");
  }

  GroupElem identity() const override {
    return GroupElem{std::vector<long long>(n_, 0)};
  }

  GroupElem multiply(const GroupElem& a, const GroupElem& b) const override {
    std::vector<long long> out = vec(a);
    const auto& bv = vec(b);
    for (unsigned i = 0; i < n_; ++i) out[i] += bv[i];
    return GroupElem{out};
  }

  GroupElem invert(const GroupElem& a) const override {
    std::vector<long long> out = vec(a);
    for (auto& x : out) x = -x;
    return GroupElem{out};
  }

  bool equals(const GroupElem& a, const GroupElem& b) const override {
    return vec(a) == vec(b);
  }

  std::vector<GroupElem> generators() const override {
    std::vector<GroupElem> out;
    for (unsigned i = 0; i < n_; ++i) {
      std::vector<long long> v(n_, 0);
      v[i] = 1;
      out.push_back(GroupElem{v});
    }
    return out;
  }

  GroupElem parse(const std::string& text) const override {
    if (text == "e") return identity();
    std::string body = text;
    if (!body.empty() && body.front() == '(' && body.back() == ')')
      body = body.substr(1, body.size() - 2);
    std::vector<long long> v;
    std::istringstream in(body);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        v.push_back(std::stoll(tok));
      } catch (...) {
        fail(ErrorKind::Parse, "malformed integer vector: " + text);
      }
    }
    if (v.size() != n_)
      fail(ErrorKind::Parse, "expected " + std::to_string(n_) +
                                 " coordinates in " + text);
    return GroupElem{v};
  }

  std::string print(const GroupElem& a) const override {
    std::string out = "(";
    const auto& v = vec(a);
    for (unsigned i = 0; i < n_; ++i) {
      if (i) out += ',';
      out += std::to_string(v[i]);
    }
    return out + ")";
  }

  std::optional<bool> is_central(const GroupElem&) const override {
    return true;
  }

  GroupElem sample(Rng& rng) const override {
    std::uniform_int_distribution<long long> d(-3, 3);
    std::vector<long long> v(n_);
    for (auto& x : v) x = d(rng);
    return GroupElem{v};
  }

  std::string name() const override { return "Z^" + std::to_string(n_); }

 private:
  static const std::vector<long long>& vec(const GroupElem& a) {
    return std::get<std::vector<long long>>(a.v);
  }
  unsigned n_;
};

// ---------------------------------------------------------------------------
// actions

class TranslationZ final : public SAction {
 public:
  TranslationZ() : oracle_(zn_group(1)) {}

  const OraclePtr& oracle() const override { return oracle_; }

  SElem apply(const GroupElem& g, const SElem& s) const override {
    return SElem{std::get<long long>(s.v) +
                 std::get<std::vector<long long>>(g.v)[0]};
  }

  SElem parse_s(const std::string& text) const override {
    std::string body = text;
    if (body.size() > 1 && body[0] == 's') body = body.substr(1);
    try {
      return SElem{std::stoll(body)};
    } catch (...) {
      fail(ErrorKind::Parse, "coordinate must be an integer: " + text);
    }
  }

  std::string print_s(const SElem& s) const override {
    return std::to_string(std::get<long long>(s.v));
  }

  SElem base() const override { return SElem{0LL}; }

  std::vector<SElem> sample_coords() const override {
    std::vector<SElem> out;
    for (long long k = -2; k <= 2; ++k) out.push_back(SElem{k});
    return out;
  }

  std::string name() const override { return "z-translation"; }

 private:
  OraclePtr oracle_;
};

class RegularAction final : public SAction {
 public:
  explicit RegularAction(OraclePtr oracle) : oracle_(std::move(oracle)) {}

  const OraclePtr& oracle() const override { return oracle_; }

  SElem apply(const GroupElem& g, const SElem& s) const override {
    return SElem{oracle_->multiply(g, std::get<GroupElem>(s.v))};
  }

  SElem parse_s(const std::string& text) const override {
    return SElem{oracle_->parse(text)};
  }

  std::string print_s(const SElem& s) const override {
    return oracle_->print(std::get<GroupElem>(s.v));
  }

  SElem base() const override { return SElem{oracle_->identity()}; }

  std::vector<SElem> sample_coords() const override {
    std::vector<GroupElem> pool{oracle_->identity()};
    for (const auto& g : oracle_->generators()) {
      pool.push_back(g);
      pool.push_back(oracle_->invert(g));
    }
    std::vector<SElem> out;
    for (const auto& g : pool) {
      SElem s{g};
      if (std::find(out.begin(), out.end(), s) == out.end())
        out.push_back(s);
      if (out.size() >= 6) break;
    }
    return out;
  }

  std::string name() const override { return "regular:" + oracle_->name(); }

 private:
  OraclePtr oracle_;
};

class TrivialFinite final : public SAction {
 public:
  explicit TrivialFinite(unsigned n) : n_(n), oracle_(trivial_group()) {
    if (n == 0) fail(ErrorKind::Parse, "finite coordinate set must be non-empty");
  }

  const OraclePtr& oracle() const override { return oracle_; }

  SElem apply(const GroupElem&, const SElem& s) const override { return s; }

  SElem parse_s(const std::string& text) const override {
    std::string body = text;
    if (body.size() > 1 && body[0] == 's') body = body.substr(1);
    long long k = 0;
    try {
      k = std::stoll(body);
    } catch (...) {
      fail(ErrorKind::Parse, "coordinate must be an index: " + text);
    }
    if (k < 1 || k > static_cast<long long>(n_))
      fail(ErrorKind::Parse, "coordinate out of range: " + text);
    return SElem{k};
  }

  std::string print_s(const SElem& s) const override {
    return std::to_string(std::get<long long>(s.v));
  }

  SElem base() const override { return SElem{1LL}; }

  std::vector<SElem> sample_coords() const override {
    std::vector<SElem> out;
    for (long long k = 1; k <= static_cast<long long>(n_); ++k)
      out.push_back(SElem{k});
    return out;
  }

  std::string name() const override {
    return "trivial:" + std::to_string(n_);
  }

 private:
  unsigned n_;
  OraclePtr oracle_;
};

}  // namespace

OraclePtr trivial_group() {
  static OraclePtr instance = std::make_shared<TrivialGroup>();
  return instance;
}

OraclePtr free_group(unsigned rank) {
  return std::make_shared<FreeGroup>(rank);
}

OraclePtr zn_group(unsigned n) { return std::make_shared<ZnGroup>(n); }

OraclePtr load_cayley_table(const std::string& table_text) {
  std::istringstream in(table_text);
  std::size_t n = 0;
  if (!(in >> n) || n == 0)
    fail(ErrorKind::NotAGroup, "Cayley file must start with the order n");
  std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long long x;
      if (!(in >> x))
        fail(ErrorKind::NotAGroup, "truncated Cayley table");
      if (x < 0) fail(ErrorKind::NotAGroup, "negative Cayley entry");
      table[i][j] = static_cast<std::uint32_t>(x);
    }
  return std::make_shared<CayleyGroup>(std::move(table),
                                       "cayley:" + std::to_string(n));
}

OraclePtr load_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open Cayley file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_cayley_table(buf.str());
}

OraclePtr cyclic_group(unsigned n) {
  if (n == 0) fail(ErrorKind::Parse, "cyclic group order must be positive");
  std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  return std::make_shared<CayleyGroup>(std::move(table),
                                       "Z/" + std::to_string(n));
}

OraclePtr symmetric_group_3() {
  // Permutations of {0,1,2}, identity first, composition (p*q)(x) = p(q(x)).
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const int p[3]) {
    for (int k = 0; k < 6; ++k)
      if (perms[k][0] == p[0] && perms[k][1] == p[1] && perms[k][2] == p[2])
        return k;
    return -1;
  };
  std::vector<std::vector<std::uint32_t>> table(6, std::vector<std::uint32_t>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      int comp[3];
      for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
      table[i][j] = static_cast<std::uint32_t>(index_of(comp));
    }
  return std::make_shared<CayleyGroup>(std::move(table), "S3");
}

ActionPtr action_translation_z() { return std::make_shared<TranslationZ>(); }

ActionPtr action_regular(OraclePtr oracle) {
  return std::make_shared<RegularAction>(std::move(oracle));
}

ActionPtr action_trivial_finite(unsigned n) {
  return std::make_shared<TrivialFinite>(n);
}

std::optional<bool> is_central(const GroupOracle& oracle, const GroupElem& g) {
  return oracle.is_central(g);
}

}  // namespace cg
