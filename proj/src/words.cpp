#include "ncbohr/words.hpp"

#include <algorithm>

namespace ncbohr::words {

bool Word::valid_for(int n) const {
  for (Letter l : letters_) {
    if (l < 1 || static_cast<int>(l) > n) return false;
  }
  return true;
}

Word Word::concat(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

Word Word::reversed() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  return Word(std::move(out));
}

std::vector<int> Word::letter_counts(int n) const {
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  for (Letter l : letters_) counts[static_cast<std::size_t>(l - 1)]++;
  return counts;
}

std::string Word::str() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (Letter l : letters_) {
    if (!s.empty()) s += '.';
    s += 'g';
    s += std::to_string(static_cast<int>(l));
  }
  return s;
}

std::optional<Word> divide(const Word& alpha, const Word& beta) {
  if (beta.length() > alpha.length()) return std::nullopt;
  for (std::size_t i = 0; i < beta.length(); ++i) {
    if (alpha.letter(i) != beta.letter(i)) return std::nullopt;
  }
  return Word(std::vector<Letter>(alpha.letters().begin() + static_cast<long>(beta.length()),
                                  alpha.letters().end()));
}

std::vector<Word> enumerate_words(int n, int k) {
  if (n < 1) throw std::invalid_argument("enumerate_words: n must be >= 1");
  if (k < 0) throw std::invalid_argument("enumerate_words: k must be >= 0");
  std::vector<Word> out;
  std::size_t count = 1;
  for (int i = 0; i < k; ++i) count *= static_cast<std::size_t>(n);
  out.reserve(count);
  std::vector<Letter> cur(static_cast<std::size_t>(k), Letter{1});
  if (k == 0) {
    out.push_back(Word::identity());
    return out;
  }
  while (true) {
    out.push_back(Word(cur));
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == static_cast<Letter>(n)) {
      cur[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    cur[static_cast<std::size_t>(pos)]++;
  }
  return out;
}

std::size_t graded_dim(int n, int level, std::size_t cap) {
  if (n < 1 || level < 0) throw std::invalid_argument("graded_dim: bad arguments");
  std::size_t dim = 0;
  std::size_t block = 1;
  for (int k = 0; k <= level; ++k) {
    dim += block;
    if (dim > cap) {
      throw std::invalid_argument("graded_dim: basis size " + std::to_string(dim) +
                                  "+ exceeds cap " + std::to_string(cap));
    }
    block *= static_cast<std::size_t>(n);
  }
  return dim;
}

std::size_t level_offset(int n, int k) {
  if (n == 1) return static_cast<std::size_t>(k);
  std::size_t off = 0;
  std::size_t block = 1;
  for (int i = 0; i < k; ++i) {
    off += block;
    block *= static_cast<std::size_t>(n);
  }
  return off;
}

std::size_t rank(int n, const Word& w) {
  std::size_t value = 0;
  for (Letter l : w.letters()) {
    value = value * static_cast<std::size_t>(n) + static_cast<std::size_t>(l - 1);
  }
  return level_offset(n, static_cast<int>(w.length())) + value;
}

Word unrank(int n, std::size_t index) {
  int k = 0;
  while (level_offset(n, k + 1) <= index) ++k;
  std::size_t value = index - level_offset(n, k);
  std::vector<Letter> letters(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    letters[static_cast<std::size_t>(i)] =
        static_cast<Letter>(value % static_cast<std::size_t>(n) + 1);
    value /= static_cast<std::size_t>(n);
  }
  return Word(std::move(letters));
}

int MultiIndex::order() const {
  int s = 0;
  for (int e : exponents) s += e;
  return s;
}

std::uint64_t MultiIndex::multinomial() const {
  // |p|!/p! built multiplicatively as a product of binomials; exact in u64
  // for |p| <= 20.
  std::uint64_t result = 1;
  int placed = 0;
  for (int e : exponents) {
    for (int j = 1; j <= e; ++j) {
      result = result * static_cast<std::uint64_t>(placed + j) / static_cast<std::uint64_t>(j);
    }
    placed += e;
  }
  return result;
}

MultiIndex letter_counts(const Word& w, int n) { return MultiIndex(w.letter_counts(n)); }

namespace {

void lambda_rec(const std::vector<int>& remaining, std::vector<Letter>& prefix,
                std::vector<Word>& out) {
  bool done = true;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (remaining[i] > 0) {
      done = false;
      std::vector<int> next = remaining;
      next[i]--;
      prefix.push_back(static_cast<Letter>(i + 1));
      lambda_rec(next, prefix, out);
      prefix.pop_back();
    }
  }
  if (done) out.push_back(Word(prefix));
}

}  // namespace

std::vector<Word> lambda_set(const MultiIndex& p) {
  for (int e : p.exponents) {
    if (e < 0) throw std::invalid_argument("lambda_set: negative exponent");
  }
  std::vector<Word> out;
  std::vector<Letter> prefix;
  lambda_rec(p.exponents, prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> enumerate_multi_indices(int n, int k) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  // lexicographic enumeration of weak compositions of k into n parts
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(MultiIndex(cur));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (n >= 1) rec(rec, 0, k);
  return out;
}

}  // namespace ncbohr::words
