#pragma once

// Integer partitions and their Frobenius coordinates.
//
// A partition is stored as its weakly decreasing positive parts.  The
// Frobenius form records, for each diagonal cell i of the Young diagram, the
// arm p_i = lambda_i - i and leg q_i = lambda'_i - i (0-based).  The shifted
// point set L(lambda) = {lambda_i - i : i >= 1} on the integers consists of
// {p_1..p_d} on the nonnegative side and all of {-1,-2,...} except
// {-q_1-1..-q_d-1} on the negative side; lContains evaluates membership
// without materializing the infinite set.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tpk/errors.hpp"

namespace tpk {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, all > 0

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int size() const;                      // sum of parts
  int length() const;                    // number of parts
  std::vector<int> conjugateParts() const;
  std::string toString() const;          // "(3,1,1)" or "()"

  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator<(const Partition& o) const { return parts < o.parts; }
};

struct FrobeniusCoords {
  std::vector<int> arms;  // p_i, strictly decreasing, >= 0
  std::vector<int> legs;  // q_i, strictly decreasing, >= 0
  int rank() const { return static_cast<int>(arms.size()); }
};

FrobeniusCoords frobenius(const Partition& p);
Partition fromFrobenius(const FrobeniusCoords& f);

// Membership of x in L(lambda) = {lambda_i - i, i = 1, 2, ...} (0-indexed as
// {parts[i] - i - 1} padded with zero parts).
bool lContains(const Partition& p, int x);

// Enumeration cap: brute-force measure sums are desk-scale by design.
inline constexpr int kMaxEnumerationSize = 60;

// Calls visit for every partition of every n <= maxSize, exactly once, in
// order of increasing n and descending lexicographic parts within each n;
// the empty partition comes first.  maxSize > kMaxEnumerationSize throws
// ResourceError.
void enumeratePartitions(int maxSize,
                         const std::function<void(const Partition&)>& visit);

// p(0..maxN) by the pentagonal-number recurrence; used to validate the
// enumeration counts.
std::vector<std::int64_t> partitionCounts(int maxN);

}  // namespace tpk
