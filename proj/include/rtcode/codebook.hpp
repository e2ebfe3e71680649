#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace rtcode {

inline constexpr int kMinAlphabet = 2;
inline constexpr int kMaxAlphabet = 8;  // exhaustive enumeration bound

/// Per-symbol codeword lengths of a complete prefix code (Kraft equality).
/// lengths[i] is the codeword length of symbol i+1.
struct CompleteCode {
  std::vector<int> lengths;

  int n() const { return static_cast<int>(lengths.size()); }
  int operator[](int symbol_index) const { return lengths[symbol_index]; }

  auto operator<=>(const CompleteCode&) const = default;
};

/// Canonical bit-string realization of a CompleteCode. words[i] is the
/// '0'/'1' string for symbol i+1 and has length code.lengths[i].
struct Codebook {
  CompleteCode code;
  std::vector<std::string> words;
};

/// True iff sum(2^-l) == 1 exactly. Integer arithmetic only; throws
/// ValidationError on empty input, a non-positive length, or a length > 62.
bool is_complete(std::span<const int> lengths);

/// All complete codes for alphabet size n (max length <= n-1), in
/// lexicographic order. Computed once per process and cached; the reference
/// stays valid for the program lifetime. Throws UnsupportedAlphabetError
/// outside [2, 8].
const std::vector<CompleteCode>& enumerate_complete_codes(int n);

/// Huffman codeword lengths for the given distribution. Deterministic:
/// merges pick the two nodes with smallest (weight, min contained symbol
/// index); zero-probability symbols stay in the tree with weight 0.
/// Throws ValidationError on a negative entry, sum off 1 by more than 1e-9,
/// or fewer than 2 symbols.
CompleteCode huffman_lengths(std::span<const double> p);

/// Canonical codeword assignment: symbols ordered by (length, index) take
/// consecutive counter values left-aligned to their length.
Codebook assign_codewords(const CompleteCode& code);

}  // namespace rtcode
