#include "invar/hilbert.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "invar/mpoly.hpp"

namespace invar {

HilbertRational series_for(GroupKind kind, std::size_t n, std::uint64_t q) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  auto Q = [q](std::size_t i) { return checked_pow(q, i); };
  HilbertRational h;
  if (kind == GroupKind::Un) {
    if (n == 1) {
      h.denominator = {{1, 0}, {0, 1}};
      return h;
    }
    for (std::size_t k = 2; k <= n - 1; ++k) h.numerator.push_back({Q(k - 1), Q(n - k)});
    for (std::size_t k = 1; k <= n - 1; ++k) h.numerator.push_back({Q(k), Q(n - k)});
    for (std::size_t i = 0; i <= n - 1; ++i) {
      h.denominator.push_back({Q(i), 0});
      h.denominator.push_back({0, Q(i)});
    }
    for (std::size_t i = 0; i + 2 <= n; ++i) h.denominator.push_back({Q(i), 1});
    for (std::size_t i = 1; i + 2 <= n; ++i) h.denominator.push_back({1, Q(i)});
    return h;
  }
  if (kind == GroupKind::Bn) {
    for (std::size_t k = 1; k <= n; ++k)
      h.numerator.push_back({checked_mul(q - 1, Q(k - 1)), checked_mul(q - 1, Q(n - k))});
    for (std::size_t k = 1; k <= n - 1; ++k) h.numerator.push_back({Q(k), Q(n - k)});
    for (std::size_t i = 0; i <= n - 1; ++i) {
      h.denominator.push_back({checked_mul(q - 1, Q(i)), 0});
      h.denominator.push_back({0, checked_mul(q - 1, Q(i))});
    }
    for (std::size_t i = 0; i <= n - 1; ++i) h.denominator.push_back({Q(i), 1});
    for (std::size_t i = 1; i <= n - 1; ++i) h.denominator.push_back({1, Q(i)});
    return h;
  }
  throw std::invalid_argument("no closed-form Hilbert series for " + to_string(kind));
}

SeriesTrunc expand(const HilbertRational& h, std::size_t max_d, std::size_t max_e) {
  SeriesTrunc s(max_d, max_e);
  s.at(0, 0) = 1;
  auto fits = [&](std::uint64_t a, std::uint64_t b) { return a <= max_d && b <= max_e; };
  for (const auto& [a, b] : h.numerator) {
    if (a == 0 && b == 0) throw std::invalid_argument("factor (0,0) is not allowed");
    if (!fits(a, b)) continue;
    // multiply by (1 - s^a t^b): walk downwards so sources are still old values
    for (std::size_t d = max_d + 1; d-- > a;)
      for (std::size_t e = max_e + 1; e-- > b;) s.at(d, e) -= s.at(d - a, e - b);
  }
  for (const auto& [a, b] : h.denominator) {
    if (a == 0 && b == 0) throw std::invalid_argument("factor (0,0) is not allowed");
    if (!fits(a, b)) continue;
    // divide by (1 - s^a t^b): walk upwards to accumulate the geometric series
    for (std::size_t d = a; d <= max_d; ++d)
      for (std::size_t e = b; e <= max_e; ++e) s.at(d, e) += s.at(d - a, e - b);
  }
  return s;
}

std::vector<SeriesTrunc::Int> total_degree_series(const HilbertRational& h, std::size_t max_deg) {
  const auto s = expand(h, max_deg, max_deg);
  std::vector<SeriesTrunc::Int> out(max_deg + 1);
  for (std::size_t k = 0; k <= max_deg; ++k)
    for (std::size_t d = 0; d <= k; ++d) out[k] += s.at(d, k - d);
  return out;
}

std::size_t default_hilbert_cutoff(std::size_t n, std::uint64_t q) {
  const std::uint64_t v = checked_add(checked_mul(2, checked_pow(q, n == 0 ? 0 : n - 1)), 2);
  return static_cast<std::size_t>(std::max<std::uint64_t>(v, 12));
}

nlohmann::json to_json(const HilbertRational& h) {
  auto list = [](const auto& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [x, y] : v) a.push_back({x, y});
    return a;
  };
  return {{"numerator", list(h.numerator)}, {"denominator", list(h.denominator)}};
}

namespace {

template <class F>
void for_cells(const SeriesTrunc& s, std::size_t cutoff, F f) {
  for (std::size_t t = 0; t <= cutoff; ++t)
    for (std::size_t d = 0; d <= t; ++d) {
      const std::size_t e = t - d;
      if (d <= s.max_d() && e <= s.max_e()) f(d, e);
    }
}

}  // namespace

std::string to_csv(const SeriesTrunc& s, std::size_t cutoff) {
  std::ostringstream os;
  os << "d,e,dim\n";
  for_cells(s, cutoff, [&](std::size_t d, std::size_t e) { os << d << "," << e << "," << s.at(d, e) << "\n"; });
  return os.str();
}

nlohmann::json to_json(const SeriesTrunc& s, std::size_t cutoff) {
  nlohmann::json cells = nlohmann::json::array();
  for_cells(s, cutoff, [&](std::size_t d, std::size_t e) {
    // dims are emitted as strings when they exceed 64 bits
    const auto& v = s.at(d, e);
    nlohmann::json dim;
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max())
      dim = static_cast<std::uint64_t>(v);
    else
      dim = v.str();
    cells.push_back({{"d", d}, {"e", e}, {"dim", dim}});
  });
  return {{"cutoff", cutoff}, {"cells", cells}};
}

}  // namespace invar
