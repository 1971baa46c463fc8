#include "tpk/partition.hpp"

#include <algorithm>

namespace tpk {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0)
      throw DomainError("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw DomainError("partition parts must be weakly decreasing");
  }
}

int Partition::size() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

int Partition::length() const { return static_cast<int>(parts.size()); }

std::vector<int> Partition::conjugateParts() const {
  if (parts.empty()) return {};
  std::vector<int> conj(static_cast<size_t>(parts[0]), 0);
  for (int p : parts)
    for (int j = 0; j < p; ++j) ++conj[static_cast<size_t>(j)];
  return conj;
}

std::string Partition::toString() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(parts[i]);
  }
  s += ")";
  return s;
}

FrobeniusCoords frobenius(const Partition& p) {
  FrobeniusCoords f;
  const auto conj = p.conjugateParts();
  for (int i = 0; i < p.length(); ++i) {
    const int arm = p.parts[static_cast<size_t>(i)] - i - 1;
    if (arm < 0) break;
    const int leg = conj[static_cast<size_t>(i)] - i - 1;
    f.arms.push_back(arm);
    f.legs.push_back(leg);
  }
  return f;
}

Partition fromFrobenius(const FrobeniusCoords& f) {
  if (f.arms.size() != f.legs.size())
    throw DimensionError("Frobenius arm/leg lists must have equal length");
  const int d = f.rank();
  for (int i = 0; i < d; ++i) {
    if (f.arms[static_cast<size_t>(i)] < 0 || f.legs[static_cast<size_t>(i)] < 0)
      throw DomainError("Frobenius coordinates must be nonnegative");
    if (i > 0 && (f.arms[static_cast<size_t>(i)] >=
                      f.arms[static_cast<size_t>(i - 1)] ||
                  f.legs[static_cast<size_t>(i)] >=
                      f.legs[static_cast<size_t>(i - 1)]))
      throw DomainError("Frobenius coordinates must be strictly decreasing");
  }
  // Rows 1..d directly from the arms; the remaining rows are read off the
  // conjugate data: row i > d has lambda_i = #{j : q_j >= i - d + ... },
  // easiest recovered by building the column heights first.
  std::vector<int> parts;
  for (int i = 0; i < d; ++i)
    parts.push_back(f.arms[static_cast<size_t>(i)] + i + 1);
  // Column lengths below the diagonal: column j (0-based, j < d) has
  // q_j + j + 1 cells, so rows beyond d exist wherever legs allow.
  for (int row = d;; ++row) {
    int width = 0;
    for (int j = 0; j < d; ++j)
      if (f.legs[static_cast<size_t>(j)] + j + 1 > row) ++width;
    if (width == 0) break;
    parts.push_back(width);
  }
  return Partition(parts);
}

bool lContains(const Partition& p, int x) {
  if (x >= 0) {
    // Positive side: x must be one of the arms.
    for (int i = 0; i < p.length(); ++i) {
      const int v = p.parts[static_cast<size_t>(i)] - i - 1;
      if (v == x) return true;
      if (v < x) break;  // arms decrease strictly along rows
    }
    return false;
  }
  // Negative side: x = lambda_i - i (0-based i = -x-1 when the part is 0 or
  // whatever row lands there).  Direct scan: row i gives lambda_{i+1}-(i+1);
  // rows beyond length give -(i+1).  x < 0 is occupied unless it is one of
  // the holes -q_j - 1.
  for (int i = 0; i < p.length(); ++i)
    if (p.parts[static_cast<size_t>(i)] - i - 1 == x) return true;
  // Trailing zero parts occupy x = -(i+1) for every i >= length.
  return -x - 1 >= p.length();
}

namespace {

void generate(int remaining, int maxPart, std::vector<int>& prefix,
              const std::function<void(const Partition&)>& visit) {
  if (remaining == 0) {
    Partition p;
    p.parts = prefix;  // already validated by construction
    visit(p);
    return;
  }
  for (int k = std::min(maxPart, remaining); k >= 1; --k) {
    prefix.push_back(k);
    generate(remaining - k, k, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

void enumeratePartitions(int maxSize,
                         const std::function<void(const Partition&)>& visit) {
  if (maxSize < 0) throw DomainError("enumeration size must be >= 0");
  if (maxSize > kMaxEnumerationSize)
    throw ResourceError("enumeration cap is " +
                        std::to_string(kMaxEnumerationSize) + ", got " +
                        std::to_string(maxSize));
  std::vector<int> prefix;
  for (int n = 0; n <= maxSize; ++n) generate(n, n, prefix, visit);
}

std::vector<std::int64_t> partitionCounts(int maxN) {
  if (maxN < 0) throw DomainError("partition count range must be >= 0");
  std::vector<std::int64_t> p(static_cast<size_t>(maxN) + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= maxN; ++n) {
    std::int64_t acc = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      const std::int64_t sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= n) acc += sign * p[static_cast<size_t>(n - g1)];
      if (g2 <= n) acc += sign * p[static_cast<size_t>(n - g2)];
    }
    p[static_cast<size_t>(n)] = acc;
  }
  return p;
}

}  // namespace tpk
