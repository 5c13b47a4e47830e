#include "cg/gtable.hpp"

#include <algorithm>

#include "cg/error.hpp"

namespace cg {

namespace {

void check_same_group(const GTable& a, const GTable& b) {
  if (a.oracle()->name() != b.oracle()->name())
    fail(ErrorKind::OracleMismatch,
         "tables over different label groups: " + a.oracle()->name() +
             " vs " + b.oracle()->name());
}

// Applies G-reductions until none applies.  Siblings u0/u1 are adjacent in
// the domain-sorted slot list, so a linear scan finds every candidate.
RawTable reduce_slots(RawTable slots, const GroupOracle& oracle) {
  std::sort(slots.begin(), slots.end(),
            [](const TableSlot& x, const TableSlot& y) { return x.dom < y.dom; });
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
      const TableSlot& p = slots[i];
      const TableSlot& q = slots[i + 1];
      if (p.dom.empty() || q.dom.empty()) continue;
      if (p.dom.back() != '0' || q.dom.back() != '1') continue;
      if (p.dom.substr(0, p.dom.size() - 1) != q.dom.substr(0, q.dom.size() - 1))
        continue;
      if (p.img.empty() || q.img.empty()) continue;
      if (p.img.back() != '0' || q.img.back() != '1') continue;
      if (p.img.substr(0, p.img.size() - 1) != q.img.substr(0, q.img.size() - 1))
        continue;
      if (!oracle.equals(p.label, q.label)) continue;
      TableSlot merged{p.dom.substr(0, p.dom.size() - 1),
                       p.img.substr(0, p.img.size() - 1), p.label};
      slots[i] = std::move(merged);
      slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      changed = true;
      break;
    }
  }
  return slots;
}

}  // namespace

GTable GTable::make(RawTable slots, OraclePtr oracle) {
  if (slots.empty())
    fail(ErrorKind::SizeMismatch, "a table needs at least one slot");
  std::vector<Word> doms, imgs;
  for (const auto& s : slots) {
    doms.push_back(s.dom);
    imgs.push_back(s.img);
  }
  PartitionSet::validate(doms);
  PartitionSet::validate(imgs);
  RawTable reduced = reduce_slots(std::move(slots), *oracle);
  return GTable(std::move(reduced), std::move(oracle));
}

GTable GTable::identity(OraclePtr oracle) {
  GroupElem e = oracle->identity();
  return GTable::make({TableSlot{Word{}, Word{}, e}}, std::move(oracle));
}

PartitionSet GTable::domain() const {
  std::vector<Word> words;
  for (const auto& s : slots_) words.push_back(s.dom);
  return PartitionSet::validate(std::move(words));
}

PartitionSet GTable::image() const {
  std::vector<Word> words;
  for (const auto& s : slots_) words.push_back(s.img);
  return PartitionSet::validate(std::move(words));
}

std::vector<std::size_t> GTable::perm() const {
  std::vector<Word> imgs;
  for (const auto& s : slots_) imgs.push_back(s.img);
  std::vector<Word> sorted = imgs;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> out(slots_.size());
  for (std::size_t i = 0; i < slots_.size(); ++i)
    out[i] = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), imgs[i]) -
        sorted.begin());
  return out;
}

RawTable GTable::expand_at(std::size_t i) const {
  if (i >= slots_.size()) fail(ErrorKind::Index, "expansion index out of range");
  RawTable out;
  for (std::size_t j = 0; j < slots_.size(); ++j) {
    if (j == i) {
      out.push_back({slots_[j].dom + '0', slots_[j].img + '0', slots_[j].label});
      out.push_back({slots_[j].dom + '1', slots_[j].img + '1', slots_[j].label});
    } else {
      out.push_back(slots_[j]);
    }
  }
  return out;
}

bool GTable::is_identity() const {
  return slots_.size() == 1 && slots_[0].dom.empty() &&
         slots_[0].img.empty() && oracle_->is_identity(slots_[0].label);
}

GTable mul(const GTable& a, const GTable& b) {
  check_same_group(a, b);
  const auto& oracle = *a.oracle();
  PartitionSet mid = common_refinement(b.image(), a.domain());
  RawTable out;
  for (const auto& r : mid.words()) {
    const TableSlot* bs = nullptr;
    const TableSlot* as = nullptr;
    for (const auto& s : b.slots())
      if (is_prefix(s.img, r)) bs = &s;
    for (const auto& s : a.slots())
      if (is_prefix(s.dom, r)) as = &s;
    Word tail_b = r.substr(bs->img.size());
    Word tail_a = r.substr(as->dom.size());
    out.push_back({bs->dom + tail_b, as->img + tail_a,
                   oracle.multiply(as->label, bs->label)});
  }
  return GTable::make(std::move(out), a.oracle());
}

GTable inv(const GTable& a) {
  RawTable out;
  for (const auto& s : a.slots())
    out.push_back({s.img, s.dom, a.oracle()->invert(s.label)});
  return GTable::make(std::move(out), a.oracle());
}

GTable conjugate(const GTable& a, const GTable& t) {
  return mul(mul(a, t), inv(a));
}

bool eq(const GTable& a, const GTable& b) {
  check_same_group(a, b);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.slots()[i].dom != b.slots()[i].dom) return false;
    if (a.slots()[i].img != b.slots()[i].img) return false;
    if (!a.oracle()->equals(a.slots()[i].label, b.slots()[i].label))
      return false;
  }
  return true;
}

std::pair<CantorPoint, GroupElem> act(const GTable& a, const CantorPoint& x) {
  for (const auto& s : a.slots()) {
    if (x.has_prefix(s.dom))
      return {prepend(s.img, *strip_prefix(s.dom, x)), s.label};
  }
  fail(ErrorKind::Internal, "domain partition did not cover the point");
}

GTable iota0(const GroupElem& g, OraclePtr oracle) {
  GroupElem e = oracle->identity();
  return GTable::make({{Word{"0"}, Word{"0"}, g}, {Word{"1"}, Word{"1"}, e}},
                      std::move(oracle));
}

GTable iota_empty(const GroupElem& g, OraclePtr oracle) {
  return GTable::make({{Word{}, Word{}, g}}, std::move(oracle));
}

GTable pi_forget(const GTable& a) {
  OraclePtr triv = trivial_group();
  GroupElem e = triv->identity();
  RawTable out;
  for (const auto& s : a.slots()) out.push_back({s.dom, s.img, e});
  return GTable::make(std::move(out), std::move(triv));
}

bool in_pi_kernel(const GTable& a) {
  for (const auto& s : a.slots())
    if (s.dom != s.img) return false;
  return true;
}

GTable map_labels(const GTable& a,
                  const std::function<GroupElem(const GroupElem&)>& hom,
                  OraclePtr target_oracle) {
  RawTable out;
  for (const auto& s : a.slots()) out.push_back({s.dom, s.img, hom(s.label)});
  return GTable::make(std::move(out), std::move(target_oracle));
}

std::vector<GTable> center_probes(const OraclePtr& oracle) {
  std::vector<GTable> probes;
  const Word bricks[4] = {"00", "01", "10", "11"};
  GroupElem e = oracle->identity();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      RawTable slots;
      for (int k = 0; k < 4; ++k) {
        Word img = bricks[k];
        if (k == i) img = bricks[j];
        if (k == j) img = bricks[i];
        slots.push_back({bricks[k], img, e});
      }
      probes.push_back(GTable::make(std::move(slots), oracle));
    }
  }
  for (const auto& g : oracle->generators())
    probes.push_back(iota0(g, oracle));
  return probes;
}

CenterResult center_test(const GTable& a) {
  const auto& oracle = a.oracle();
  if (a.size() == 1 && a.slots()[0].dom.empty() && a.slots()[0].img.empty()) {
    const GroupElem& z = a.slots()[0].label;
    std::optional<bool> central = oracle->is_central(z);
    if (central.has_value() && *central)
      return {CenterResult::Kind::Central, z, std::nullopt};
    if (!central.has_value())
      return {CenterResult::Kind::Unknown, std::nullopt, std::nullopt};
  }
  for (const auto& p : center_probes(oracle)) {
    if (!eq(mul(a, p), mul(p, a)))
      return {CenterResult::Kind::NotCentral, std::nullopt, p};
  }
  // Fallback probes at the element's own granularity: transpositions of
  // the refined domain/image bricks.
  PartitionSet fine = common_refinement(a.domain(), a.image());
  GroupElem e = oracle->identity();
  for (std::size_t i = 0; i < fine.size(); ++i) {
    for (std::size_t j = i + 1; j < fine.size(); ++j) {
      RawTable slots;
      for (std::size_t k = 0; k < fine.size(); ++k) {
        Word img = fine.at(k);
        if (k == i) img = fine.at(j);
        if (k == j) img = fine.at(i);
        slots.push_back({fine.at(k), img, e});
      }
      GTable p = GTable::make(std::move(slots), oracle);
      if (!eq(mul(a, p), mul(p, a)))
        return {CenterResult::Kind::NotCentral, std::nullopt, p};
    }
  }
  return {CenterResult::Kind::Unknown, std::nullopt, std::nullopt};
}

GTable torsion_generator(unsigned n, OraclePtr oracle) {
  if (n < 2) fail(ErrorKind::Index, "torsion generator needs n >= 2");
  // Blocks 0, 10, 110, ..., 1^(n-2)0, 1^(n-1); block i maps to block i+1 mod n.
  std::vector<Word> blocks;
  for (unsigned i = 0; i + 1 < n; ++i)
    blocks.push_back(Word(i, '1') + '0');
  blocks.push_back(Word(n - 1, '1'));
  GroupElem e = oracle->identity();
  RawTable slots;
  for (unsigned i = 0; i < n; ++i)
    slots.push_back({blocks[i], blocks[(i + 1) % n], e});
  return GTable::make(std::move(slots), std::move(oracle));
}

std::optional<unsigned> order(const GTable& a, unsigned max) {
  GTable power = a;
  for (unsigned k = 1; k <= max; ++k) {
    if (power.is_identity()) return k;
    power = mul(power, a);
  }
  return std::nullopt;
}

}  // namespace cg
