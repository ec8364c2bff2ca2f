#pragma once

// Brute-force ground truth by exact linear algebra over F_q: dimensions of
// invariant spaces, dimensions of subalgebra spans, and generation checks.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "invar/groups.hpp"
#include "invar/mpoly.hpp"

namespace invar {

struct OracleLimits {
  /// Largest monomial basis a single bidegree may have.
  std::size_t max_columns = 20000;
  /// Largest number of exponent tuples enumerated for one bidegree.
  std::size_t max_tuples = 5000000;

  /// Defaults with INVAR_MAX_COLUMNS applied when set; throws
  /// std::invalid_argument if the variable is not a positive integer.
  static OracleLimits from_env();
};

/// d + e <= 12 for n <= 3, 8 otherwise.
std::size_t default_oracle_cutoff(std::size_t n);

/// Incremental row echelon form over F_q with dense rows.
class RowEchelon {
 public:
  RowEchelon(Field field, std::size_t width);

  /// Reduces `row` (dense, length width) against the stored pivots; keeps it
  /// if independent. Returns true when the rank grew. `row` is clobbered.
  bool insert(std::vector<Field::Elem>& row);
  std::size_t rank() const { return rank_; }
  std::size_t width() const { return width_; }

 private:
  Field field_;
  std::size_t width_;
  std::size_t rank_ = 0;
  // pivot column -> normalized sparse row (entries at columns >= pivot)
  std::vector<std::vector<std::pair<std::size_t, Field::Elem>>> pivots_;
};

/// dim of the (d, e) component of F_q[V + V*]^G: kernel of the stacked
/// (s - id) over the group's generators. Throws ResourceLimit when the
/// monomial basis is larger than limits.max_columns.
std::uint64_t invariant_dim(const GroupSpec& g, Bidegree b, const OracleLimits& limits = {});

/// dim of the span of all products prod g_i^{m_i} of bidegree b. Generators
/// must be bihomogeneous and nonconstant. `stop_at`, when given, ends the
/// enumeration as soon as the rank reaches it.
std::uint64_t subalgebra_dim(const std::vector<BiPoly>& gens, Bidegree b, const OracleLimits& limits = {},
                             std::optional<std::uint64_t> stop_at = std::nullopt);

struct DimTable {
  std::string group;
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t cutoff = 0;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> dims;

  /// `d,e,dim`, ordered by total degree then d.
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

using Progress = std::function<void(const std::string&)>;

/// Every cell with d + e <= cutoff. Cells are spread over `jobs` threads;
/// the table does not depend on `jobs`.
DimTable invariant_dims(const GroupSpec& g, std::size_t cutoff, const OracleLimits& limits = {},
                        const Progress& progress = {}, unsigned jobs = 1);

/// Cells in the order they are checked: total degree, then d.
std::vector<Bidegree> cells_up_to(std::size_t cutoff);

struct GenerationCell {
  Bidegree b;
  std::uint64_t invariant = 0;
  std::uint64_t subalgebra = 0;
  bool pass() const { return invariant == subalgebra; }
};

struct GenerationReport {
  std::string group;
  std::size_t cutoff = 0;
  std::vector<GenerationCell> cells;
  bool pass() const;
  std::optional<Bidegree> first_deficit() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Compares subalgebra_dim(gens) with invariant_dim(g) at every cell with
/// d + e <= cutoff. With `y_degree_zero` only cells (d, 0) are checked.
GenerationReport check_generation(const GroupSpec& g, const std::vector<BiPoly>& gens, std::size_t cutoff,
                                  const OracleLimits& limits = {}, const Progress& progress = {},
                                  bool y_degree_zero = false, unsigned jobs = 1);

/// Generators of the presentation for U_n / B_n, in generator order.
std::vector<BiPoly> theorem_generators(const GroupSpec& g);
/// c_{n,0..n-1}, their stars, u_{1-n}..u_{n-1}.
std::vector<BiPoly> conjecture_generators(const Field& field, std::size_t n);

struct Sl2Report {
  bool f1_invariant = false;
  bool f2_invariant = false;
  /// F_3[V]^G generated by f1, f2 in every degree (d, 0), d <= cutoff.
  bool vector_invariants_generated = false;
  std::size_t orbit_size = 0;
  bool contains_negative = false;
  /// The negated orbit product is fixed by the generators.
  bool negated_product_invariant = false;
  Bidegree product_bidegree;
  GenerationReport generation;
  std::optional<Bidegree> first_deficit;
  std::uint64_t deficit_at_first = 0;

  bool as_expected() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// SL_2(F_3): f1 = x1^3 x2 - x1 x2^3, f2 = x1^6 + x1^4 x2^2 + x1^2 x2^4 + x2^6,
/// h = x1 y2 - x2 y1, candidate set {f1, f2, f1*, f2*, u_-1, u_0, u_1}.
Sl2Report sl2_counterexample_report(std::size_t cutoff = 6, const OracleLimits& limits = {},
                                    const Progress& progress = {});

}  // namespace invar
