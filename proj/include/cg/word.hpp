#ifndef CG_WORD_HPP
#define CG_WORD_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace cg {

// A finite binary word over {0,1}, stored as a string of '0'/'1'.  The empty
// word is written "e" in the textual syntax.  std::string's operator< is
// exactly the lexicographic order induced by 0<1 with a proper prefix
// preceding its extensions.
using Word = std::string;

inline constexpr std::size_t kMaxWordLength = 1u << 16;

bool is_binary_word(const Word& w);

// Validates alphabet and the length cap.
void check_word(const Word& w);

std::strong_ordering lex_cmp(const Word& a, const Word& b);

bool is_prefix(const Word& prefix, const Word& w);

// Parses the textual word syntax: a run of 0/1 characters, or "e" for the
// empty word.
Word parse_word(const std::string& text);
std::string print_word(const Word& w);

// A lexicographically sorted complete prefix code over {0,1}.  Instances are
// only created through validate(), so a PartitionSet value is always a
// genuine partition of the Cantor space.
class PartitionSet {
 public:
  // Sorts, then checks prefix-freeness and exact dyadic completeness
  // (sum of 2^-|w| must equal 1, computed in exact arithmetic).
  static PartitionSet validate(std::vector<Word> words);

  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  const Word& at(std::size_t i) const { return words_[i]; }

  // Splits the i-th word u (0-based, sorted order) into u0, u1.
  PartitionSet expand(std::size_t i) const;

  bool operator==(const PartitionSet& other) const = default;

  std::string str() const;

 private:
  explicit PartitionSet(std::vector<Word> sorted) : words_(std::move(sorted)) {}
  std::vector<Word> words_;
};

// Coarsest partition refining both; computed by pairwise word comparison.
PartitionSet common_refinement(const PartitionSet& p, const PartitionSet& q);

// Exact completeness test for an arbitrary prefix-free family (used also by
// the brick layer): sum of 2^-|w| == 1.
bool dyadic_sum_is_one(const std::vector<Word>& words);

// Parses "{00,01,1}"; validates.
PartitionSet parse_partition(const std::string& text);

}  // namespace cg

#endif
