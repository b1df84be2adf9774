#pragma once

// Integer classifiers for Eschenburg quartets and Witten-Kreck-Stolz pairs, and the
// 28-row reference table of Eschenburg spaces in one homeomorphism class.

#include <array>
#include <string>
#include <vector>

namespace mk::topo7 {

struct EschenburgQuartet {
  long long k = 0, l = 0, p = 0, q = 0;
  bool operator==(const EschenburgQuartet&) const = default;
};

struct WKSPair {
  long long k = 0, l = 0;
  bool operator==(const WKSPair&) const = default;
};

/// Freeness of the U action: gcd(a_1 - b_s(1), a_2 - b_s(2)) over the six permutations s,
/// with a = (k, l, -k-l), b = (p, q, -p-q). In order:
///   gcd(k-p, l-q), gcd(k-p, l+p+q), gcd(k+p+q, l-p), gcd(k-q, l-p), gcd(k-q, l+p+q),
///   gcd(k+p+q, l-q).
/// gcd of absolute values, gcd(0, m) = |m|, gcd(0, 0) = 0.
std::array<long long, 6> gcd_conditions(const EschenburgQuartet& e);
/// Same list with k+p+q in place of l+p+q in the second and fifth entries. Rejects
/// about half of the reference table; kept for comparison only.
std::array<long long, 6> gcd_conditions_k_variant(const EschenburgQuartet& e);
bool admissible(const EschenburgQuartet& e);

/// Inclusive integer box.
struct Box {
  std::array<long long, 4> lo{};
  std::array<long long, 4> hi{};
  static Box cube(long long lo, long long hi) { return Box{{lo, lo, lo, lo}, {hi, hi, hi, hi}}; }
};

/// Admissible quartets in the box, lexicographic in (k, l, p, q).
std::vector<EschenburgQuartet> enumerate_admissible(const Box& box);

struct TableRow {
  EschenburgQuartet quartet;
  std::string s1;  // as printed, six decimals at most
};

/// The 28 rows, in printed order (s1 decreasing from 1 to 1/28).
const std::vector<TableRow>& reference_table();
/// Reads a CSV with header k,l,p,q,s1. Throws InvalidArgument on malformed input.
std::vector<TableRow> load_table_csv(const std::string& path);

struct TableReport {
  int rows = 0;
  int admissible_rows = 0;
  std::vector<int> inadmissible;      // row indices
  bool s1_matches_fractions = false;  // row r carries (28 - r)/28 to six places
  bool s1_distinct_mod_one = false;
  bool pass() const {
    return rows == 28 && admissible_rows == rows && s1_matches_fractions && s1_distinct_mod_one;
  }
};

TableReport verify_reference_table(const std::vector<TableRow>& table = reference_table());

/// l = 0 mod 4, l mod 7 in {0, 3, 4}, l != 0, gcd(k, l) = 1.
bool wks_hypothesis(const WKSPair& p);

/// l' = +-4 and k' = 1 mod 32. Throws NotCoprime unless gcd(k', l') = 1.
bool wks14_homeomorphic(long long kp, long long lp);
/// l' = +-4 and k' = 1 mod 28 * 32.
bool wks14_diffeomorphic(long long kp, long long lp);

/// (32 t + 1, 4) for t = 0..27. Throws ConsistencyFailure if the members are not
/// mutually homeomorphic or not pairwise distinct modulo 896.
std::vector<WKSPair> enumerate_smooth_structures_14();

}  // namespace mk::topo7
