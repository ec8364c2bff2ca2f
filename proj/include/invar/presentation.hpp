#pragma once

// Abstract presentations of F_q[V + V*]^G for G = U_n, B_n: generator
// symbols with bidegrees, relations as polynomials in those symbols, and
// the mechanical checks run against them.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "invar/groups.hpp"
#include "invar/invgen.hpp"
#include "invar/mpoly.hpp"

namespace invar {

/// F_i = f_i, Fs_i = f_i*, Ft_i = f_i^{q-1}, Fts_i = (f_i*)^{q-1}, U_j = u_j.
enum class SymKind { F, Fs, Ft, Fts, U };

struct GenSymbol {
  SymKind kind;
  int index;
  Bidegree bidegree;

  /// F3, Fs3, Ft3, Fts3, U2, U0, Um2 (for U_{-2}).
  std::string name() const;
  bool is_f_type() const { return kind == SymKind::F || kind == SymKind::Ft; }
  bool is_fstar_type() const { return kind == SymKind::Fs || kind == SymKind::Fts; }
  bool operator==(const GenSymbol& o) const { return kind == o.kind && index == o.index; }
};

/// Inverse of GenSymbol::name; bidegree filled from q.
GenSymbol parse_symbol(const std::string& name, std::uint64_t q);
Bidegree symbol_bidegree(SymKind kind, int index, std::uint64_t q);

/// Ordered symbol set; a symbol's position is its variable index in
/// abstract polynomials.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<GenSymbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<GenSymbol>& symbols() const { return symbols_; }
  const GenSymbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> find(SymKind kind, int index) const;
  /// Throws std::out_of_range naming the missing symbol.
  std::size_t require(SymKind kind, int index) const;
  std::vector<std::string> names() const;

 private:
  std::vector<GenSymbol> symbols_;
  std::map<std::pair<int, int>, std::size_t> index_;
};

/// Theorem alphabets: F_1..F_n, Fs_1..Fs_n, U_{2-n}..U_{n-2} for U_n
/// (n = 1: F_1, Fs_1), and Ft_1..Ft_n, Fts_1..Fts_n, U_{1-n}..U_{n-1} for B_n.
Alphabet theorem_alphabet(GroupKind kind, std::size_t n, std::uint64_t q);
/// Same families with the U window widened to [-n, n], enough for every
/// relation of every family and every k.
Alphabet widened_alphabet(GroupKind kind, std::size_t n, std::uint64_t q);

enum class RelFamily { R, RPlus, RMinus, RTilde, RTildePlus, R2Special, Custom };

struct RelPoly {
  std::string label;
  RelFamily family = RelFamily::Custom;
  int k = 0;
  Poly poly;
};

/// Label text: R2, R1+, R3-, Rt1, Rt1+, R2special.
std::string relation_label(RelFamily family, int k);

/// Builds one relation over `alphabet`. Throws std::out_of_range if k is out
/// of range or a needed symbol is missing from the alphabet.
RelPoly build_relation(RelFamily family, int k, std::size_t n, const Field& field, const Alphabet& alphabet);

/// Bidegree of an abstract polynomial under the alphabet's symbol weights.
BidegreeResult abstract_bidegree(const Poly& p, const Alphabet& alphabet);
/// Bidegree the relation table assigns to (family, k).
Bidegree expected_relation_bidegree(RelFamily family, int k, std::size_t n, std::uint64_t q);

struct Presentation {
  GroupSpec group;
  Alphabet generators;
  std::vector<RelPoly> relations;
  /// U_1: free on x_1 = F1, y_1 = Fs1, no relations; outside the uniform description.
  bool free_case = false;
  std::string note;
};

/// Generators and relations in theorem order. Throws std::invalid_argument
/// for SL_n / GL_n and for U_n with n = 0.
Presentation build_presentation(const GroupSpec& g);

// --- verification ----------------------------------------------------------

/// Concrete invariant assigned to a symbol.
BiPoly symbol_value(const GenSymbol& s, const InvariantSet& inv);

struct KernelEntry {
  std::string label;
  bool pass = false;
  BiPoly residue;
};

struct KernelReport {
  std::vector<KernelEntry> entries;
  bool all_pass() const;
};

/// Substitutes concrete invariants for the symbols in every relation.
/// `jobs` > 1 evaluates relations on worker threads; order is preserved.
KernelReport verify_kernel(const Presentation& p, const InvariantSet& inv, unsigned jobs = 1);

/// Evaluate an abstract polynomial at concrete invariants.
BiPoly evaluate(const Poly& abstract, const Alphabet& alphabet, const InvariantSet& inv);

// --- elimination structure -------------------------------------------------

/// Mechanical properties of one relation.
struct RelationAnalysis {
  std::vector<std::string> involves;
  /// Index j when the relation equates a power of U_j to terms that each
  /// contain an f-type or f*-type symbol.
  std::optional<int> relation_for;
  std::vector<std::string> f_eliminates;
  std::vector<std::string> fstar_eliminates;
};

RelationAnalysis analyze_relation(const Poly& rel, const Alphabet& alphabet);

/// True if `rel` is linear in symbol `sym` with leading coefficient a
/// scalar times a product of f-type (fstar = false) or f*-type symbols.
bool eliminates(const Poly& rel, const Alphabet& alphabet, std::size_t sym, bool fstar);

struct StructureRow {
  std::string label;
  RelationAnalysis expected;
  RelationAnalysis actual;
  bool involves_ok = false;
  bool relation_for_ok = false;
  bool f_elim_ok = false;
  bool fstar_elim_ok = false;
  bool ok() const { return involves_ok && relation_for_ok && f_elim_ok && fstar_elim_ok; }
};

struct ChainStep {
  std::string relation;
  std::string target;
  bool ok = false;
};

struct StructureReport {
  std::vector<StructureRow> rows;
  /// Relation-for indices cover the U window exactly once.
  bool one_relation_per_u = false;
  /// The two localization chains: each step eliminates its target using only
  /// symbols already available.
  /// After inverting the f* product: f*-eliminations recover the f side.
  std::vector<ChainStep> chain_invert_fstar;
  /// After inverting the f product: f-eliminations recover the f* side.
  std::vector<ChainStep> chain_invert_f;
  bool all_ok() const;
};

StructureReport check_elimination_structure(const Presentation& p);

struct MinimalityFlag {
  std::string generator;
  std::string relation;
  Bidegree generator_bidegree;
  Bidegree relation_bidegree;
};

struct MinimalityReport {
  std::vector<MinimalityFlag> flags;
};

/// Flags every (generator, relation) pair whose relation bidegree is
/// componentwise <= the generator's.
MinimalityReport check_minimality_obstruction(const Presentation& p);

// --- serialization ---------------------------------------------------------

nlohmann::json to_json(const Presentation& p);
/// Rebuilds a presentation; relation terms are taken verbatim from the file.
Presentation presentation_from_json(const nlohmann::json& j);
std::string to_text(const Presentation& p);
/// `ring R = q, (F1,...), dp; ideal I = ...;`
std::string to_cas_script(const Presentation& p);

/// Symbol renaming F_i <-> Fs_i, Ft_i <-> Fts_i, U_j <-> U_{-j} applied to an
/// abstract polynomial over a star-closed alphabet.
Poly star_relation(const Poly& rel, const Alphabet& alphabet);

}  // namespace invar
