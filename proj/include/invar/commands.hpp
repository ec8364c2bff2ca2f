#pragma once

// The `invar` command line: argument parsing, dispatch, report rendering.

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "invar/presentation.hpp"

namespace invar {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitResource = 3 };

/// Kernel, elimination structure and minimality for one presentation.
struct VerifyReport {
  std::string group;
  std::string source;  // "generated" or "input"
  KernelReport kernel;
  StructureReport structure;
  MinimalityReport minimality;
  bool minimality_as_expected = false;

  bool pass() const { return kernel.all_pass() && structure.all_ok() && minimality_as_expected; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Flags are expected only for B_n over F_2, and then exactly on Rt1 and Rtn.
bool minimality_as_expected(const Presentation& p, const MinimalityReport& m);

/// Throws ResourceLimit when some relation's bidegree has more than
/// `max_monomials` monomials, i.e. when full expansion is out of reach.
void require_verifiable(const Presentation& p, double max_monomials = 1e9);

VerifyReport verify_presentation(const Presentation& p, const std::string& source, unsigned jobs = 1);

/// Runs `invar` with the given arguments; stdout goes to `out` unless
/// --output is given, progress and diagnostics to `err`. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace invar
