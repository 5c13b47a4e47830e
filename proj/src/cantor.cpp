#include "cg/cantor.hpp"

#include <algorithm>
#include <numeric>

#include "cg/error.hpp"

namespace cg {

namespace {

// Smallest d such that w is (w[0..d))^{|w|/d}; requires d | |w|.
std::size_t primitive_root_length(const Word& w) {
  for (std::size_t d = 1; d <= w.size(); ++d) {
    if (w.size() % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < w.size() && ok; ++i)
      ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return w.size();
}

}  // namespace

CantorPoint::CantorPoint(Word preperiod, Word period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  check_word(preperiod_);
  check_word(period_);
  if (period_.empty())
    fail(ErrorKind::Parse, "CantorPoint period must be non-empty");
  period_.resize(primitive_root_length(period_));
  // Absorb preperiod bits that match the rotated period: p u (q)^inf with
  // last(p u) == last(rot) collapses one step at a time.
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    preperiod_.pop_back();
    period_ = Word(1, period_.back()) + period_.substr(0, period_.size() - 1);
  }
}

char CantorPoint::bit(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

CantorPoint CantorPoint::shift() const {
  if (!preperiod_.empty())
    return CantorPoint(preperiod_.substr(1), period_);
  return CantorPoint({}, period_.substr(1) + period_[0]);
}

bool CantorPoint::has_prefix(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != bit(i)) return false;
  return true;
}

std::strong_ordering CantorPoint::operator<=>(const CantorPoint& other) const {
  // Distinct eventually periodic words differ within this many bits.
  std::size_t bound = preperiod_.size() + other.preperiod_.size() +
                      std::lcm(period_.size(), other.period_.size());
  for (std::size_t i = 0; i < bound; ++i) {
    if (bit(i) != other.bit(i))
      return bit(i) <=> other.bit(i);
  }
  return std::strong_ordering::equal;
}

CantorPoint CantorPoint::parse(const std::string& text) {
  std::size_t a = text.find('(');
  std::size_t b = text.rfind(')');
  if (a == std::string::npos || b == std::string::npos || b < a ||
      b != text.size() - 1)
    fail(ErrorKind::Parse, "CantorPoint must be written <pre>(<period>)");
  Word pre = text.substr(0, a);
  Word per = text.substr(a + 1, b - a - 1);
  if (!pre.empty() && pre != "e") check_word(pre);
  if (pre == "e") pre.clear();
  check_word(per);
  if (per.empty()) fail(ErrorKind::Parse, "CantorPoint period must be non-empty");
  return CantorPoint(std::move(pre), std::move(per));
}

std::string CantorPoint::str() const {
  return preperiod_ + "(" + period_ + ")";
}

CantorPoint prepend(const Word& w, const CantorPoint& x) {
  check_word(w);
  return CantorPoint(w + x.preperiod(), x.period());
}

std::optional<CantorPoint> strip_prefix(const Word& w, const CantorPoint& x) {
  if (!x.has_prefix(w)) return std::nullopt;
  CantorPoint y = x;
  for (std::size_t i = 0; i < w.size(); ++i) y = y.shift();
  return y;
}

std::vector<CantorPoint> enumerate_points(std::size_t max_preperiod,
                                          std::size_t max_period) {
  if (max_period == 0)
    fail(ErrorKind::Index, "max_period must be at least 1");
  // All preperiod candidates of length <= max_preperiod.
  std::vector<Word> pres{Word{}};
  for (std::size_t i = 0; i < pres.size(); ++i) {
    if (pres[i].size() < max_preperiod) {
      pres.push_back(pres[i] + '0');
      pres.push_back(pres[i] + '1');
    }
  }
  std::vector<Word> pers;
  std::vector<Word> queue{Word{}};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    if (!queue[i].empty()) pers.push_back(queue[i]);
    if (queue[i].size() < max_period) {
      queue.push_back(queue[i] + '0');
      queue.push_back(queue[i] + '1');
    }
  }
  std::vector<CantorPoint> out;
  for (const auto& p : pres)
    for (const auto& q : pers) out.emplace_back(p, q);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cg
