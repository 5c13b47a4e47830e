#include "cg/bisection.hpp"

#include <algorithm>

#include "cg/error.hpp"

namespace cg {

namespace {

void check_word_flavor(const Bisection& b, const char* what) {
  if (b.flavor() == Flavor::SV2xG)
    fail(ErrorKind::ActionMismatch,
         std::string(what) + " expects a word-flavor bisection");
}

void check_compatible(const Bisection& a, const Bisection& b) {
  if ((a.flavor() == Flavor::SV2xG) != (b.flavor() == Flavor::SV2xG))
    fail(ErrorKind::ActionMismatch, "bisections of different flavors");
  if (a.flavor() == Flavor::SV2xG) {
    if (a.action()->name() != b.action()->name())
      fail(ErrorKind::ActionMismatch,
           "bisections over different actions: " + a.action()->name() +
               " vs " + b.action()->name());
  } else if (a.oracle()->name() != b.oracle()->name()) {
    fail(ErrorKind::OracleMismatch,
         "bisections over different label groups: " + a.oracle()->name() +
             " vs " + b.oracle()->name());
  }
}

// Sibling merge for word lists: {u0, u1} -> {u}; adjacency after sorting
// makes a linear scan complete.
std::vector<Word> merge_words(std::vector<Word> words) {
  std::sort(words.begin(), words.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
      const Word& p = words[i];
      const Word& q = words[i + 1];
      if (p.empty() || q.empty()) continue;
      if (p.back() != '0' || q.back() != '1') continue;
      if (p.substr(0, p.size() - 1) != q.substr(0, q.size() - 1)) continue;
      words[i] = p.substr(0, p.size() - 1);
      words.erase(words.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      changed = true;
      break;
    }
  }
  return words;
}

void check_prefix_free(const std::vector<Word>& sorted, const char* what) {
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i] == sorted[i + 1] || is_prefix(sorted[i], sorted[i + 1]))
      fail(ErrorKind::Overlap, std::string(what) + " blocks overlap");
  }
}

// Brick-level sibling merge for clopen brick families.
std::optional<BrickFn> merge_brick_pair(const BrickFn& a, const BrickFn& b) {
  if (a.support().size() != b.support().size()) return std::nullopt;
  std::optional<std::pair<SElem, Word>> diff;
  auto ia = a.support().begin();
  auto ib = b.support().begin();
  for (; ia != a.support().end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return std::nullopt;
    if (ia->second == ib->second) continue;
    if (diff.has_value()) return std::nullopt;
    const Word& x = ia->second;
    const Word& y = ib->second;
    if (x.size() != y.size() || x.back() == y.back()) return std::nullopt;
    if (x.substr(0, x.size() - 1) != y.substr(0, y.size() - 1))
      return std::nullopt;
    diff = {ia->first, x.substr(0, x.size() - 1)};
  }
  if (!diff) return std::nullopt;
  auto m = a.support();
  if (diff->second.empty())
    m.erase(diff->first);
  else
    m[diff->first] = diff->second;
  return BrickFn::make(std::move(m));
}

std::vector<BrickFn> merge_bricks(std::vector<BrickFn> bricks) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < bricks.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < bricks.size() && !changed; ++j) {
        auto m = merge_brick_pair(bricks[i], bricks[j]);
        if (m) {
          bricks[i] = *m;
          bricks.erase(bricks.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
  }
  std::sort(bricks.begin(), bricks.end());
  return bricks;
}

// The part <-> piece dictionary: part (cw: s -> (w'_s, w_s), g) matches the
// piece (D, g, M) with M(s) = w'_s and D(t) = w_{g.t}.
TwistPiece part_to_piece(const SAction& action, const TwistPart& p) {
  std::map<SElem, Word> dom, img;
  GroupElem ginv = action.oracle()->invert(p.label);
  for (const auto& [s, ww] : p.cw) {
    if (!ww.first.empty()) img.emplace(s, ww.first);
    if (!ww.second.empty()) dom.emplace(action.apply(ginv, s), ww.second);
  }
  return TwistPiece{BrickFn::make(std::move(dom)), p.label,
                    BrickFn::make(std::move(img))};
}

TwistPart piece_to_part(const SAction& action, const TwistPiece& pc) {
  TwistPart out;
  out.label = pc.twist;
  for (const auto& [t, w] : pc.dom.support())
    out.cw[action.apply(pc.twist, t)].second = w;
  for (const auto& [s, w] : pc.img.support()) out.cw[s].first = w;
  return out;
}

std::vector<TwistPiece> parts_to_pieces(const SAction& action,
                                        const std::vector<TwistPart>& parts) {
  std::vector<TwistPiece> out;
  for (const auto& p : parts) out.push_back(part_to_piece(action, p));
  return out;
}

std::vector<TwistPart> pieces_to_parts(const SAction& action,
                                       const std::vector<TwistPiece>& pieces) {
  std::vector<TwistPart> out;
  for (const auto& pc : pieces) out.push_back(piece_to_part(action, pc));
  return out;
}

}  // namespace

ClopenSet ClopenSet::from_words(std::vector<Word> words) {
  for (const auto& w : words) check_word(w);
  std::vector<Word> merged = merge_words(std::move(words));
  check_prefix_free(merged, "clopen");
  ClopenSet out;
  out.twisted_ = false;
  out.words_ = std::move(merged);
  return out;
}

ClopenSet ClopenSet::from_bricks(std::vector<BrickFn> bricks) {
  std::vector<BrickFn> merged = merge_bricks(std::move(bricks));
  for (std::size_t i = 0; i < merged.size(); ++i)
    for (std::size_t j = i + 1; j < merged.size(); ++j)
      if (brick_intersect(merged[i], merged[j]).has_value())
        fail(ErrorKind::Overlap, "clopen bricks overlap");
  ClopenSet out;
  out.twisted_ = true;
  out.bricks_ = std::move(merged);
  return out;
}

bool ClopenSet::is_complete() const {
  if (twisted_) return is_brick_partition(bricks_);
  return !words_.empty() && dyadic_sum_is_one(words_);
}

bool ClopenSet::operator==(const ClopenSet& other) const {
  if (empty() && other.empty()) return true;
  if (twisted_ != other.twisted_) return false;
  if (twisted_) return brick_sets_equal(bricks_, other.bricks_);
  return words_ == other.words_;
}

Bisection Bisection::make_words(std::vector<WordPart> parts, OraclePtr oracle) {
  if (!oracle) fail(ErrorKind::OracleMismatch, "a bisection needs an oracle");
  for (const auto& p : parts) {
    check_word(p.dom);
    check_word(p.img);
  }
  // sibling merge, exactly as G-reduction
  std::sort(parts.begin(), parts.end(),
            [](const WordPart& x, const WordPart& y) { return x.dom < y.dom; });
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      const WordPart& p = parts[i];
      const WordPart& q = parts[i + 1];
      if (p.dom.empty() || q.dom.empty() || p.img.empty() || q.img.empty())
        continue;
      if (p.dom.back() != '0' || q.dom.back() != '1') continue;
      if (p.img.back() != '0' || q.img.back() != '1') continue;
      if (p.dom.substr(0, p.dom.size() - 1) != q.dom.substr(0, q.dom.size() - 1))
        continue;
      if (p.img.substr(0, p.img.size() - 1) != q.img.substr(0, q.img.size() - 1))
        continue;
      if (!oracle->equals(p.label, q.label)) continue;
      WordPart merged{p.img.substr(0, p.img.size() - 1),
                      p.dom.substr(0, p.dom.size() - 1), p.label};
      parts[i] = std::move(merged);
      parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      changed = true;
      break;
    }
  }
  std::vector<Word> doms, imgs;
  for (const auto& p : parts) {
    doms.push_back(p.dom);
    imgs.push_back(p.img);
  }
  std::sort(imgs.begin(), imgs.end());
  check_prefix_free(doms, "source");
  check_prefix_free(imgs, "range");

  Bisection out;
  out.flavor_ = oracle->name() == "trivial" ? Flavor::V2 : Flavor::V2xG;
  out.oracle_ = std::move(oracle);
  out.wparts_ = std::move(parts);
  return out;
}

Bisection Bisection::make_twisted(std::vector<TwistPart> parts,
                                  ActionPtr action) {
  if (!action) fail(ErrorKind::ActionMismatch, "a bisection needs an action");
  std::vector<TwistPiece> pieces =
      canonicalize_pieces(parts_to_pieces(*action, parts), *action);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (brick_intersect(pieces[i].dom, pieces[j].dom).has_value())
        fail(ErrorKind::Overlap, "sources overlap");
      if (brick_intersect(pieces[i].img, pieces[j].img).has_value())
        fail(ErrorKind::Overlap, "ranges overlap");
    }
  Bisection out;
  out.flavor_ = Flavor::SV2xG;
  out.oracle_ = action->oracle();
  out.tparts_ = pieces_to_parts(*action, pieces);
  out.action_ = std::move(action);
  return out;
}

ClopenSet source(const Bisection& b) {
  if (b.flavor() == Flavor::SV2xG) {
    std::vector<BrickFn> bricks;
    for (const auto& p : b.twist_parts())
      bricks.push_back(part_to_piece(*b.action(), p).dom);
    return ClopenSet::from_bricks(std::move(bricks));
  }
  std::vector<Word> words;
  for (const auto& p : b.word_parts()) words.push_back(p.dom);
  return ClopenSet::from_words(std::move(words));
}

ClopenSet range(const Bisection& b) {
  if (b.flavor() == Flavor::SV2xG) {
    std::vector<BrickFn> bricks;
    for (const auto& p : b.twist_parts())
      bricks.push_back(part_to_piece(*b.action(), p).img);
    return ClopenSet::from_bricks(std::move(bricks));
  }
  std::vector<Word> words;
  for (const auto& p : b.word_parts()) words.push_back(p.img);
  return ClopenSet::from_words(std::move(words));
}

Bisection compose(const Bisection& a, const Bisection& b) {
  check_compatible(a, b);
  if (a.flavor() == Flavor::SV2xG) {
    const SAction& action = *a.action();
    const auto& oracle = *action.oracle();
    std::vector<TwistPiece> ap = parts_to_pieces(action, a.twist_parts());
    std::vector<TwistPiece> bp = parts_to_pieces(action, b.twist_parts());
    std::vector<TwistPiece> out;
    for (const auto& q : bp)
      for (const auto& p : ap) {
        auto mid = brick_intersect(q.img, p.dom);
        if (!mid) continue;
        out.push_back(TwistPiece{piece_pullback(action, q, *mid),
                                 oracle.multiply(p.twist, q.twist),
                                 piece_pushforward(action, p, *mid)});
      }
    return Bisection::make_twisted(pieces_to_parts(action, out), a.action());
  }
  const auto& oracle = *a.oracle();
  std::vector<WordPart> out;
  for (const auto& q : b.word_parts())
    for (const auto& p : a.word_parts()) {
      Word m;
      if (is_prefix(p.dom, q.img))
        m = q.img;
      else if (is_prefix(q.img, p.dom))
        m = p.dom;
      else
        continue;
      out.push_back(WordPart{p.img + m.substr(p.dom.size()),
                             q.dom + m.substr(q.img.size()),
                             oracle.multiply(p.label, q.label)});
    }
  return Bisection::make_words(std::move(out), a.oracle());
}

Bisection invert(const Bisection& a) {
  if (a.flavor() == Flavor::SV2xG) {
    const SAction& action = *a.action();
    const auto& oracle = *action.oracle();
    std::vector<TwistPart> out;
    for (const auto& p : a.twist_parts()) {
      TwistPiece pc = part_to_piece(action, p);
      out.push_back(piece_to_part(
          action, TwistPiece{pc.img, oracle.invert(pc.twist), pc.dom}));
    }
    return Bisection::make_twisted(std::move(out), a.action());
  }
  std::vector<WordPart> out;
  for (const auto& p : a.word_parts())
    out.push_back(WordPart{p.dom, p.img, a.oracle()->invert(p.label)});
  return Bisection::make_words(std::move(out), a.oracle());
}

bool bisection_eq(const Bisection& a, const Bisection& b) {
  check_compatible(a, b);
  if (a.flavor() == Flavor::SV2xG) {
    return pieces_semantically_equal(
        parts_to_pieces(*a.action(), a.twist_parts()),
        parts_to_pieces(*b.action(), b.twist_parts()), *a.action());
  }
  if (a.word_parts().size() != b.word_parts().size()) return false;
  for (std::size_t i = 0; i < a.word_parts().size(); ++i) {
    const WordPart& p = a.word_parts()[i];
    const WordPart& q = b.word_parts()[i];
    if (p.dom != q.dom || p.img != q.img) return false;
    if (!a.oracle()->equals(p.label, q.label)) return false;
  }
  return true;
}

bool is_full(const Bisection& b) {
  return source(b).is_complete() && range(b).is_complete();
}

Bisection unit_bisection(const ClopenSet& u, OraclePtr oracle) {
  if (u.twisted())
    fail(ErrorKind::ActionMismatch, "word-flavor unit over a brick set");
  GroupElem e = oracle->identity();
  std::vector<WordPart> parts;
  for (const auto& w : u.words()) parts.push_back(WordPart{w, w, e});
  return Bisection::make_words(std::move(parts), std::move(oracle));
}

Bisection unit_bisection_twisted(const ClopenSet& u, ActionPtr action) {
  if (!u.twisted() && !u.empty())
    fail(ErrorKind::ActionMismatch, "twisted unit over a word set");
  GroupElem e = action->oracle()->identity();
  std::vector<TwistPart> parts;
  for (const auto& brick : u.bricks()) {
    TwistPart p;
    p.label = e;
    for (const auto& [s, w] : brick.support()) p.cw[s] = {w, w};
    parts.push_back(std::move(p));
  }
  return Bisection::make_twisted(std::move(parts), std::move(action));
}

Bisection J_map(const GTable& t) {
  std::vector<WordPart> parts;
  for (const auto& s : t.slots())
    parts.push_back(WordPart{s.img, s.dom, s.label});
  return Bisection::make_words(std::move(parts), t.oracle());
}

GTable I_map(const Bisection& b) {
  check_word_flavor(b, "I");
  if (!is_full(b)) fail(ErrorKind::NotFull, "bisection is not full");
  RawTable slots;
  for (const auto& p : b.word_parts())
    slots.push_back(TableSlot{p.dom, p.img, p.label});
  return GTable::make(std::move(slots), b.oracle());
}

Bisection J_map_twisted(const TwistTable& t) {
  return Bisection::make_twisted(pieces_to_parts(*t.action(), t.pieces()),
                                 t.action());
}

TwistTable I_map_twisted(const Bisection& b) {
  if (b.flavor() != Flavor::SV2xG)
    fail(ErrorKind::ActionMismatch, "I expects a twisted bisection");
  if (!is_full(b)) fail(ErrorKind::NotFull, "bisection is not full");
  return TwistTable::make(parts_to_pieces(*b.action(), b.twist_parts()),
                          b.action());
}

Bisection min_witness(const ClopenSet& u, const ClopenSet& v,
                      OraclePtr oracle) {
  if (u.twisted() || v.twisted())
    fail(ErrorKind::ActionMismatch, "word-flavor witness over brick sets");
  if (v.empty()) fail(ErrorKind::EmptyTarget, "target clopen set is empty");
  std::vector<Word> blocks = v.words();
  while (blocks.size() < u.size()) {
    Word w = blocks.front();
    blocks.erase(blocks.begin());
    blocks.push_back(w + '0');
    blocks.push_back(w + '1');
  }
  GroupElem e = oracle->identity();
  std::vector<WordPart> parts;
  for (std::size_t i = 0; i < u.size(); ++i)
    parts.push_back(WordPart{blocks[i], u.words()[i], e});
  return Bisection::make_words(std::move(parts), std::move(oracle));
}

Bisection min_witness_twisted(const ClopenSet& u, const ClopenSet& v,
                              ActionPtr action) {
  if ((!u.twisted() && !u.empty()) || !v.twisted())
    fail(ErrorKind::ActionMismatch, "twisted witness over word sets");
  if (v.empty()) fail(ErrorKind::EmptyTarget, "target clopen set is empty");
  std::vector<BrickFn> blocks = v.bricks();
  while (blocks.size() < u.size()) {
    BrickFn b = blocks.front();
    blocks.erase(blocks.begin());
    SElem s = b.support().empty() ? action->base() : b.support().begin()->first;
    Word w = b.at(s);
    auto m0 = b.support();
    auto m1 = b.support();
    m0[s] = w + '0';
    m1[s] = w + '1';
    blocks.push_back(BrickFn::make(std::move(m0)));
    blocks.push_back(BrickFn::make(std::move(m1)));
  }
  GroupElem e = action->oracle()->identity();
  std::vector<TwistPart> parts;
  for (std::size_t i = 0; i < u.size(); ++i) {
    TwistPiece pc{u.bricks()[i], e, blocks[i]};
    parts.push_back(piece_to_part(*action, pc));
  }
  return Bisection::make_twisted(std::move(parts), std::move(action));
}

bool clopen_subset(const ClopenSet& a, const ClopenSet& b) {
  if (a.twisted() != b.twisted() && !a.empty() && !b.empty())
    fail(ErrorKind::ActionMismatch, "clopen sets of different flavors");
  if (a.twisted()) return brick_set_subset(a.bricks(), b.bricks());
  for (const auto& x : a.words()) {
    bool covered = false;
    for (const auto& y : b.words())
      if (is_prefix(y, x)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

std::vector<CantorPoint> isotropy_points(const WordPart& part,
                                         std::size_t bound) {
  if (part.dom == part.img)
    fail(ErrorKind::ShiftZeroIdentity,
         "unit part: every point of the block is fixed");
  Word shorter, longer;
  if (is_prefix(part.dom, part.img)) {
    shorter = part.dom;
    longer = part.img;
  } else if (is_prefix(part.img, part.dom)) {
    shorter = part.img;
    longer = part.dom;
  } else {
    return {};
  }
  Word u = longer.substr(shorter.size());
  CantorPoint x(shorter, u);
  if (x.preperiod().size() > bound) return {};
  return {x};
}

}  // namespace cg
