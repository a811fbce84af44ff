#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncbohr::words {

using Letter = std::uint8_t;  // 1-based generator index

/// A word of the unital free semigroup on n generators. The empty word is
/// the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<int> letters) {
    letters_.reserve(letters.size());
    for (int l : letters) letters_.push_back(static_cast<Letter>(l));
  }

  static Word identity() { return Word{}; }

  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter letter(std::size_t i) const { return letters_[i]; }

  bool valid_for(int n) const;

  Word concat(const Word& rhs) const;
  Word reversed() const;

  /// Letter-count vector of length n.
  std::vector<int> letter_counts(int n) const;

  std::string str() const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Quotient omega with alpha = beta * omega, i.e. beta a prefix of alpha.
std::optional<Word> divide(const Word& alpha, const Word& beta);

/// All n^k words of length k in lexicographic letter order. This ordering is
/// the basis-indexing contract used by the Fock representation.
std::vector<Word> enumerate_words(int n, int k);

/// Number of basis words of length <= level: sum_{k<=level} n^k. Throws when
/// the count would exceed `cap`.
std::size_t graded_dim(int n, int level, std::size_t cap);

/// Start index of the length-k block in the level-major ordering:
/// (n^k - 1)/(n - 1) for n >= 2, k for n = 1.
std::size_t level_offset(int n, int k);

/// Level-major index: level_offset(|w|) + base-n value of (letters - 1).
std::size_t rank(int n, const Word& w);
Word unrank(int n, std::size_t index);

/// Commutative multi-index p in Z_+^n.
struct MultiIndex {
  std::vector<int> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}
  MultiIndex(std::initializer_list<int> e) : exponents(e) {}

  int order() const;  // |p|
  int size() const { return static_cast<int>(exponents.size()); }

  /// |p|!/p! as an exact integer (valid for |p| <= 20).
  std::uint64_t multinomial() const;

  auto operator<=>(const MultiIndex&) const = default;
};

MultiIndex letter_counts(const Word& w, int n);

/// The fiber of words whose letter-count vector equals p; cardinality
/// |p|!/p!.
std::vector<Word> lambda_set(const MultiIndex& p);

/// All multi-indices with |p| = k over n variables, lexicographic.
std::vector<MultiIndex> enumerate_multi_indices(int n, int k);

}  // namespace ncbohr::words
