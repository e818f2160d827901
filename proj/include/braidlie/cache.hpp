#pragma once

#include "braidlie/central.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cli {

/// Disk-backed AdMatrixSource.  One file per (n, q) pair holding the graded
/// basis and the adjoint matrix of every generator; files carry a format
/// version and a checksum, and anything unreadable is recomputed in place
/// after a warning.
class FileCache : public central::AdMatrixSource {
public:
  explicit FileCache(std::filesystem::path dir,
                     int degree_cap = braidlie::kDefaultDegreeCap);

  braidlie::GradedBasis graded_basis(int n, int q) override;
  exactla::IntMatrix ad_matrix(int n, int q, braidlie::Generator g) override;

  /// Precompute and store every grade file for q = 1..max_degree.
  void build(int n, int max_degree);

  struct EntryInfo {
    std::string file;
    bool valid = false;
    int n = 0;
    int q = 0;
    int dim = 0;
    std::uintmax_t bytes = 0;
    std::string detail;  // reason when invalid
  };
  std::vector<EntryInfo> inspect() const;

  /// Remove every cache file in the directory (only files matching the cache
  /// naming scheme are touched).
  int clear();

  const std::filesystem::path& dir() const { return dir_; }

  static std::string file_name(int n, int q);

private:
  struct GradeData {
    std::vector<braidlie::BasisEntry> entries;
    std::map<std::pair<int, int>, exactla::IntMatrix> matrices;  // generator -> ad matrix
  };

  GradeData& grade(int n, int q);
  GradeData compute(int n, int q) const;
  std::optional<GradeData> load(int n, int q, std::string* why_not) const;
  void store(int n, int q, const GradeData& data) const;

  std::filesystem::path dir_;
  int degree_cap_;
  std::map<std::pair<int, int>, GradeData> memory_;
};

/// Cache directory resolution: explicit flag wins, then the environment
/// variable BRAIDLIE_CACHE_DIR, otherwise none.
std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag_value);

}  // namespace cli
