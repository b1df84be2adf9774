#include "maslovkit/topo7.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "maslovkit/error.hpp"

namespace mk::topo7 {
namespace {

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

std::vector<long long> split_integers(const std::string& line, std::string& last) {
  std::vector<long long> out;
  std::stringstream ss(line);
  std::string cell;
  std::vector<std::string> cells;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (cells.size() != 5) throw Error(ErrorCode::InvalidArgument, "expected 5 columns: " + line);
  for (int i = 0; i < 4; ++i) {
    const std::string& c = cells[static_cast<std::size_t>(i)];
    long long v = 0;
    const auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
    if (ec != std::errc() || end != c.data() + c.size())
      throw Error(ErrorCode::InvalidArgument, "non-integer cell: " + c);
    out.push_back(v);
  }
  last = cells[4];
  while (!last.empty() && (last.back() == '\r' || last.back() == ' ')) last.pop_back();
  double s1 = 0.0;
  const auto [end, ec] = std::from_chars(last.data(), last.data() + last.size(), s1);
  if (ec != std::errc() || end != last.data() + last.size())
    throw Error(ErrorCode::InvalidArgument, "non-numeric s1: " + last);
  return out;
}

}  // namespace

std::array<long long, 6> gcd_conditions(const EschenburgQuartet& e) {
  const long long s = e.k + e.p + e.q;
  const long long t = e.l + e.p + e.q;
  return {std::gcd(e.k - e.p, e.l - e.q), std::gcd(e.k - e.p, t), std::gcd(s, e.l - e.p),
          std::gcd(e.k - e.q, e.l - e.p), std::gcd(e.k - e.q, t), std::gcd(s, e.l - e.q)};
}

std::array<long long, 6> gcd_conditions_k_variant(const EschenburgQuartet& e) {
  const long long s = e.k + e.p + e.q;
  return {std::gcd(e.k - e.p, e.l - e.q), std::gcd(e.k - e.p, s), std::gcd(s, e.l - e.p),
          std::gcd(e.k - e.q, e.l - e.p), std::gcd(e.k - e.q, s), std::gcd(s, e.l - e.q)};
}

bool admissible(const EschenburgQuartet& e) {
  for (long long g : gcd_conditions(e))
    if (g != 1) return false;
  return true;
}

std::vector<EschenburgQuartet> enumerate_admissible(const Box& b) {
  std::vector<EschenburgQuartet> out;
  for (long long k = b.lo[0]; k <= b.hi[0]; ++k)
    for (long long l = b.lo[1]; l <= b.hi[1]; ++l)
      for (long long p = b.lo[2]; p <= b.hi[2]; ++p)
        for (long long q = b.lo[3]; q <= b.hi[3]; ++q) {
          const EschenburgQuartet e{k, l, p, q};
          if (admissible(e)) out.push_back(e);
        }
  return out;
}

const std::vector<TableRow>& reference_table() {
  static const std::vector<TableRow> table = {
      {{-29, 10, -28, 6}, "1"},          {{-38, -29, -66, 22}, "0.964286"},
      {{-54, 9, -52, 4}, "0.928571"},    {{-17, -17, -18, -16}, "0.892857"},
      {{-6, -3, -8, 0}, "0.857143"},     {{-17, -14, -22, -8}, "0.821429"},
      {{-14, -5, -18, 2}, "0.785714"},   {{-1, -1, -2, 0}, "0.75"},
      {{-33, -6, -42, 20}, "0.714286"},  {{-46, -13, -32, -30}, "0.678571"},
      {{-22, 5, -20, 0}, "0.642857"},    {{-13, 2, -14, 6}, "0.607143"},
      {{-38, -11, -40, -8}, "0.571429"}, {{-22, -1, -26, 12}, "0.535714"},
      {{-21, -6, -18, -10}, "0.5"},      {{-5, -5, -6, -4}, "0.464286"},
      {{-13, 2, -8, -6}, "0.428571"},    {{-14, -5, -16, -2}, "0.392857"},
      {{-9, -6, -12, -2}, "0.357143"},   {{-38, -11, -48, 8}, "0.321429"},
      {{-22, -19, -40, 12}, "0.285714"}, {{-22, -1, -14, -12}, "0.25"},
      {{-25, -1, -22, -6}, "0.214286"},  {{-54, -9, -68, 30}, "0.178571"},
      {{-39, -6, -32, -16}, "0.142857"}, {{-29, -14, -32, -10}, "0.107143"},
      {{-11, 1, -12, 4}, "0.071429"},    {{-9, -9, -10, -8}, "0.035714"},
  };
  return table;
}

std::vector<TableRow> load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidArgument, "empty table file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "k,l,p,q,s1") throw Error(ErrorCode::InvalidArgument, "unexpected header: " + line);
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::string s1;
    const auto v = split_integers(line, s1);
    rows.push_back({{v[0], v[1], v[2], v[3]}, s1});
  }
  return rows;
}

TableReport verify_reference_table(const std::vector<TableRow>& table) {
  TableReport r;
  r.rows = static_cast<int>(table.size());
  for (int i = 0; i < r.rows; ++i) {
    if (admissible(table[static_cast<std::size_t>(i)].quartet))
      ++r.admissible_rows;
    else
      r.inadmissible.push_back(i);
  }
  r.s1_matches_fractions = r.rows == 28;
  std::set<long long> residues;  // s1 mod 1, in millionths
  for (int i = 0; i < r.rows; ++i) {
    const double printed = std::stod(table[static_cast<std::size_t>(i)].s1);
    const long long micro = std::llround(printed * 1e6);
    const long long want = std::llround((28.0 - i) / 28.0 * 1e6);
    if (micro != want) r.s1_matches_fractions = false;
    residues.insert(mod(micro, 1000000));
  }
  r.s1_distinct_mod_one = static_cast<int>(residues.size()) == r.rows;
  return r;
}

bool wks_hypothesis(const WKSPair& p) {
  const long long l7 = mod(p.l, 7);
  return mod(p.l, 4) == 0 && (l7 == 0 || l7 == 3 || l7 == 4) && p.l != 0 && std::gcd(p.k, p.l) == 1;
}

bool wks14_homeomorphic(long long kp, long long lp) {
  if (std::gcd(kp, lp) != 1) throw Error(ErrorCode::NotCoprime, "gcd(k', l') != 1");
  return (lp == 4 || lp == -4) && mod(kp, 32) == 1;
}

bool wks14_diffeomorphic(long long kp, long long lp) {
  if (std::gcd(kp, lp) != 1) throw Error(ErrorCode::NotCoprime, "gcd(k', l') != 1");
  return (lp == 4 || lp == -4) && mod(kp, 28 * 32) == 1;
}

std::vector<WKSPair> enumerate_smooth_structures_14() {
  std::vector<WKSPair> out;
  std::set<long long> classes;
  for (long long t = 0; t < 28; ++t) {
    const WKSPair p{32 * t + 1, 4};
    if (!wks14_homeomorphic(p.k, p.l))
      throw Error(ErrorCode::ConsistencyFailure, "member not homeomorphic to M_{1,4}");
    classes.insert(mod(p.k, 28 * 32));
    out.push_back(p);
  }
  if (classes.size() != out.size())
    throw Error(ErrorCode::ConsistencyFailure, "two members share a diffeomorphism class");
  return out;
}

}  // namespace mk::topo7
