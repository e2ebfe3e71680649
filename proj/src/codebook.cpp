#include "rtcode/codebook.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>

#include "rtcode/errors.hpp"

namespace rtcode {

bool is_complete(std::span<const int> lengths) {
  if (lengths.empty()) throw ValidationError("empty length vector");
  int max_len = 0;
  for (int l : lengths) {
    if (l < 1) throw ValidationError("codeword length must be positive");
    if (l > 62) throw ValidationError("codeword length out of supported range [1, 62]");
    max_len = std::max(max_len, l);
  }
  // sum 2^(L-l) == 2^L  <=>  sum 2^-l == 1
  std::uint64_t sum = 0;
  const std::uint64_t target = std::uint64_t{1} << max_len;
  for (int l : lengths) {
    sum += std::uint64_t{1} << (max_len - l);
    if (sum > target) return false;
  }
  return sum == target;
}

namespace {

// Nondecreasing length multisets with exact Kraft equality, lengths in
// [1, max_len]. Capacity is counted in units of 2^-max_len.
void collect_multisets(int symbols_left, int min_len, int max_len,
                       std::uint64_t cap_left, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
  if (symbols_left == 0) {
    if (cap_left == 0) out.push_back(cur);
    return;
  }
  if (cap_left < static_cast<std::uint64_t>(symbols_left)) return;
  for (int l = min_len; l <= max_len; ++l) {
    const std::uint64_t w = std::uint64_t{1} << (max_len - l);
    // the remaining symbols can consume at most symbols_left * w in total
    if (w > cap_left) continue;
    if (static_cast<std::uint64_t>(symbols_left) * w < cap_left) continue;
    cur.push_back(l);
    collect_multisets(symbols_left - 1, l, max_len, cap_left - w, cur, out);
    cur.pop_back();
  }
}

std::vector<CompleteCode> build_enumeration(int n) {
  const int max_len = n - 1;
  std::vector<std::vector<int>> multisets;
  std::vector<int> cur;
  collect_multisets(n, 1, max_len, std::uint64_t{1} << max_len, cur, multisets);

  std::vector<CompleteCode> codes;
  for (auto& m : multisets) {
    // m is sorted; next_permutation yields each distinct ordering once
    do {
      codes.push_back(CompleteCode{m});
    } while (std::next_permutation(m.begin(), m.end()));
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

}  // namespace

const std::vector<CompleteCode>& enumerate_complete_codes(int n) {
  if (n < kMinAlphabet || n > kMaxAlphabet)
    throw UnsupportedAlphabetError("alphabet size must be in [2, 8], got " +
                                   std::to_string(n));
  static std::array<std::vector<CompleteCode>, kMaxAlphabet + 1> cache;
  static std::array<std::once_flag, kMaxAlphabet + 1> flags;
  std::call_once(flags[n], [n] { cache[n] = build_enumeration(n); });
  return cache[n];
}

CompleteCode huffman_lengths(std::span<const double> p) {
  const int n = static_cast<int>(p.size());
  if (n < 2) throw ValidationError("distribution needs at least 2 symbols");
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw ValidationError("negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("probabilities must sum to 1");

  struct Node {
    double weight;
    int min_sym;  // smallest symbol index contained, 0-based
    int left = -1, right = -1;
    int sym = -1;  // leaf symbol, 0-based
  };
  std::vector<Node> nodes;
  nodes.reserve(2 * n - 1);
  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    nodes.push_back({p[i], i, -1, -1, i});
    active.push_back(i);
  }

  auto better = [&](int a, int b) {
    if (nodes[a].weight != nodes[b].weight) return nodes[a].weight < nodes[b].weight;
    return nodes[a].min_sym < nodes[b].min_sym;
  };
  while (active.size() > 1) {
    std::size_t i1 = 0;
    for (std::size_t i = 1; i < active.size(); ++i)
      if (better(active[i], active[i1])) i1 = i;
    const int first = active[i1];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(i1));
    std::size_t i2 = 0;
    for (std::size_t i = 1; i < active.size(); ++i)
      if (better(active[i], active[i2])) i2 = i;
    const int second = active[i2];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(i2));

    // lower-index subtree becomes the left child
    int left = first, right = second;
    if (nodes[right].min_sym < nodes[left].min_sym) std::swap(left, right);
    nodes.push_back({nodes[first].weight + nodes[second].weight,
                     std::min(nodes[first].min_sym, nodes[second].min_sym),
                     left, right, -1});
    active.push_back(static_cast<int>(nodes.size()) - 1);
  }

  std::vector<int> lengths(n, 0);
  // iterative depth assignment from the root
  std::vector<std::pair<int, int>> stack{{active[0], 0}};
  while (!stack.empty()) {
    auto [idx, depth] = stack.back();
    stack.pop_back();
    const Node& nd = nodes[idx];
    if (nd.sym >= 0) {
      lengths[nd.sym] = depth;
    } else {
      stack.emplace_back(nd.left, depth + 1);
      stack.emplace_back(nd.right, depth + 1);
    }
  }
  return CompleteCode{std::move(lengths)};
}

Codebook assign_codewords(const CompleteCode& code) {
  if (!is_complete(code.lengths)) throw ValidationError("code is not complete");
  const int n = code.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (code.lengths[a] != code.lengths[b]) return code.lengths[a] < code.lengths[b];
    return a < b;
  });

  Codebook book{code, std::vector<std::string>(n)};
  std::uint64_t counter = 0;
  int prev_len = code.lengths[order[0]];
  for (int sym : order) {
    const int len = code.lengths[sym];
    counter <<= (len - prev_len);
    prev_len = len;
    std::string word(static_cast<std::size_t>(len), '0');
    for (int b = 0; b < len; ++b)
      if (counter & (std::uint64_t{1} << (len - 1 - b))) word[b] = '1';
    book.words[sym] = std::move(word);
    ++counter;
  }
  return book;
}

}  // namespace rtcode
