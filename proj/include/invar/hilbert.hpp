#pragma once

// Bigraded Hilbert series of the complete-intersection invariant rings, kept
// as factor lists and expanded lazily under truncation.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "invar/groups.hpp"

namespace invar {

/// prod (1 - s^a t^b) over `numerator` divided by the same over `denominator`.
struct HilbertRational {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> numerator;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> denominator;
};

/// Closed forms for U_n and B_n; U_1 is the free ring on (1,0), (0,1).
/// Throws std::invalid_argument for other groups or n = 0.
HilbertRational series_for(GroupKind kind, std::size_t n, std::uint64_t q);

class SeriesTrunc {
 public:
  using Int = boost::multiprecision::cpp_int;

  SeriesTrunc(std::size_t max_d, std::size_t max_e)
      : max_d_(max_d), max_e_(max_e), c_((max_d + 1) * (max_e + 1)) {}

  std::size_t max_d() const { return max_d_; }
  std::size_t max_e() const { return max_e_; }
  const Int& at(std::size_t d, std::size_t e) const { return c_[d * (max_e_ + 1) + e]; }
  Int& at(std::size_t d, std::size_t e) { return c_[d * (max_e_ + 1) + e]; }

 private:
  std::size_t max_d_, max_e_;
  std::vector<Int> c_;
};

SeriesTrunc expand(const HilbertRational& h, std::size_t max_d, std::size_t max_e);

/// Coefficients of the s = t specialization up to total degree max_deg.
std::vector<SeriesTrunc::Int> total_degree_series(const HilbertRational& h, std::size_t max_deg);

/// max(2 q^{n-1} + 2, 12).
std::size_t default_hilbert_cutoff(std::size_t n, std::uint64_t q);

nlohmann::json to_json(const HilbertRational& h);
/// Rows `d,e,dim` for every d + e <= cutoff, ordered by total degree then d.
std::string to_csv(const SeriesTrunc& s, std::size_t cutoff);
nlohmann::json to_json(const SeriesTrunc& s, std::size_t cutoff);

}  // namespace invar
