#include "cg/word.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

#include "cg/error.hpp"

namespace cg {

using boost::multiprecision::cpp_int;

bool is_binary_word(const Word& w) {
  return std::all_of(w.begin(), w.end(),
                     [](char c) { return c == '0' || c == '1'; });
}

void check_word(const Word& w) {
  if (!is_binary_word(w))
    fail(ErrorKind::Alphabet, "word contains characters outside {0,1}: \"" + w + "\"");
  if (w.size() > kMaxWordLength)
    fail(ErrorKind::WordTooLong, "word exceeds maximum length");
}

std::strong_ordering lex_cmp(const Word& a, const Word& b) {
  return a <=> b;
}

bool is_prefix(const Word& prefix, const Word& w) {
  return prefix.size() <= w.size() &&
         std::equal(prefix.begin(), prefix.end(), w.begin());
}

Word parse_word(const std::string& text) {
  if (text == "e") return Word{};
  check_word(text);
  if (text.empty())
    fail(ErrorKind::Parse, "empty word must be written \"e\"");
  return text;
}

std::string print_word(const Word& w) {
  return w.empty() ? std::string("e") : w;
}

bool dyadic_sum_is_one(const std::vector<Word>& words) {
  std::size_t max_len = 0;
  for (const auto& w : words) max_len = std::max(max_len, w.size());
  cpp_int total = 0;
  for (const auto& w : words) total += cpp_int(1) << (max_len - w.size());
  return total == (cpp_int(1) << max_len);
}

PartitionSet PartitionSet::validate(std::vector<Word> words) {
  for (const auto& w : words) check_word(w);
  std::sort(words.begin(), words.end());
  // After sorting, any prefix pair is adjacent.
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    if (is_prefix(words[i], words[i + 1]))
      fail(ErrorKind::Overlap, "word \"" + print_word(words[i]) +
                                   "\" is a prefix of \"" +
                                   print_word(words[i + 1]) + "\"");
  }
  if (words.empty() || !dyadic_sum_is_one(words))
    fail(ErrorKind::Gap, "words do not cover the Cantor space (dyadic sum != 1)");
  return PartitionSet(std::move(words));
}

PartitionSet PartitionSet::expand(std::size_t i) const {
  if (i >= words_.size())
    fail(ErrorKind::Index, "expand index out of range");
  std::vector<Word> out;
  out.reserve(words_.size() + 1);
  for (std::size_t j = 0; j < words_.size(); ++j) {
    if (j == i) {
      check_word(words_[j] + '0');
      out.push_back(words_[j] + '0');
      out.push_back(words_[j] + '1');
    } else {
      out.push_back(words_[j]);
    }
  }
  return validate(std::move(out));
}

std::string PartitionSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i) out += ',';
    out += print_word(words_[i]);
  }
  out += '}';
  return out;
}

PartitionSet common_refinement(const PartitionSet& p, const PartitionSet& q) {
  // For each comparable pair keep the longer word; incomparable pairs denote
  // disjoint clopen sets and contribute nothing.
  std::vector<Word> out;
  for (const auto& u : p.words()) {
    for (const auto& v : q.words()) {
      if (is_prefix(u, v))
        out.push_back(v);
      else if (is_prefix(v, u))
        out.push_back(u);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return PartitionSet::validate(std::move(out));
}

PartitionSet parse_partition(const std::string& text) {
  std::size_t a = text.find('{');
  std::size_t b = text.rfind('}');
  if (a == std::string::npos || b == std::string::npos || b < a)
    fail(ErrorKind::Parse, "partition set must be written {w1,w2,...}");
  std::vector<Word> words;
  std::string body = text.substr(a + 1, b - a - 1);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos
                                           ? std::string::npos
                                           : comma - pos);
    // trim
    std::size_t s = tok.find_first_not_of(" \t");
    std::size_t e = tok.find_last_not_of(" \t");
    if (s == std::string::npos) {
      if (comma == std::string::npos) break;
      fail(ErrorKind::Parse, "empty entry in partition set");
    }
    words.push_back(parse_word(tok.substr(s, e - s + 1)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return PartitionSet::validate(std::move(words));
}

}  // namespace cg
