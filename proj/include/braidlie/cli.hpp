#pragma once

#include "braidlie/cache.hpp"
#include "braidlie/repmaps.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace cli {

/// Everything a subcommand needs, assembled from flags, an optional config
/// file, and the environment.  Flags beat config-file values.
struct RunConfig {
  std::string command;
  std::string cache_command;  // build | inspect | clear
  int n = 0;
  int max_degree = 0;
  int degree_cap = braidlie::kDefaultDegreeCap;
  std::string format = "text";  // text | structured
  std::string rep;              // burau | gassner | path to a spec file
  std::string expr;             // bracket operand
  std::string element;          // optional centralizer element
  std::string cache_dir;        // empty = use BRAIDLIE_CACHE_DIR if set
  std::string out_dir = ".";
  int trunc = 0;  // 0 = default (max_degree)
};

/// Exit codes: 0 success, 1 usage or configuration error, 2 verification
/// failure, 3 criterion check failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_dims(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_basis(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bracket(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_centralizer(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_adjoint_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_criterion(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cache(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Polynomial literal over u1..uk: terms like "1", "-u1", "2*u1^2*u2",
/// joined by +/-.  Used by representation spec files.
repmaps::TruncPoly parse_trunc_poly(const std::string& text, int vars, int trunc);

/// "burau" and "gassner" name the built-in families (n taken from the
/// caller); anything else is read as a spec file.
repmaps::RepresentationSpec load_representation(const std::string& rep_value, int n, int trunc);

}  // namespace cli
