#include "braidlie/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cli {

using braidlie::BasisEntry;
using braidlie::Generator;
using braidlie::GradedBasis;
using exactla::IntMatrix;

namespace {

constexpr const char* kMagic = "braidlie-cache 1";

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((v >> shift) & 0xf);
  return os.str();
}

}  // namespace

FileCache::FileCache(std::filesystem::path dir, int degree_cap)
    : dir_(std::move(dir)), degree_cap_(degree_cap) {
  std::filesystem::create_directories(dir_);
}

std::string FileCache::file_name(int n, int q) {
  return "grade_n" + std::to_string(n) + "_q" + std::to_string(q) + ".cache";
}

FileCache::GradeData FileCache::compute(int n, int q) const {
  central::DirectSource direct(degree_cap_);
  GradeData data;
  GradedBasis b = direct.graded_basis(n, q);
  data.entries = b.entries();
  for (const Generator& g : braidlie::generators(n))
    data.matrices.emplace(std::make_pair(g.i(), g.j()), direct.ad_matrix(n, q, g));
  return data;
}

void FileCache::store(int n, int q, const GradeData& data) const {
  std::ostringstream payload;
  payload << "n " << n << "\n";
  payload << "q " << q << "\n";
  payload << "dim " << data.entries.size() << "\n";
  for (const BasisEntry& e : data.entries) {
    payload << "entry " << e.component;
    for (int l : e.word.letters()) payload << ' ' << l + 1;
    payload << "\n";
  }
  for (const auto& [key, m] : data.matrices) {
    payload << "gen " << key.first << ' ' << key.second << ' ' << m.rows() << ' ' << m.cols()
            << "\n";
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        if (c) payload << ' ';
        payload << m.at(r, c);
      }
      payload << "\n";
    }
  }
  std::string body = payload.str();
  std::ofstream out(dir_ / file_name(n, q), std::ios::trunc);
  out << kMagic << "\n";
  out << "checksum " << hex64(fnv1a64(body)) << "\n";
  out << body;
  if (!out) std::cerr << "warning: could not write cache file " << file_name(n, q) << "\n";
}

std::optional<FileCache::GradeData> FileCache::load(int n, int q, std::string* why_not) const {
  auto fail = [&](const std::string& why) -> std::optional<GradeData> {
    if (why_not) *why_not = why;
    return std::nullopt;
  };
  std::ifstream in(dir_ / file_name(n, q));
  if (!in) return fail("missing");
  std::string magic, checksum_line;
  if (!std::getline(in, magic)) return fail("truncated header");
  if (magic != kMagic) return fail("unknown format version");
  if (!std::getline(in, checksum_line)) return fail("truncated header");
  std::istringstream cs(checksum_line);
  std::string tag, digest;
  cs >> tag >> digest;
  if (tag != "checksum") return fail("malformed header");
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string body = rest.str();
  if (hex64(fnv1a64(body)) != digest) return fail("checksum mismatch");

  try {
    std::istringstream is(body);
    std::string key;
    int file_n = 0, file_q = 0;
    size_t dim = 0;
    is >> key >> file_n;
    if (key != "n" || file_n != n) return fail("wrong n");
    is >> key >> file_q;
    if (key != "q" || file_q != q) return fail("wrong q");
    is >> key >> dim;
    if (key != "dim") return fail("malformed body");

    GradeData data;
    is >> std::ws;
    std::string line;
    for (size_t k = 0; k < dim; ++k) {
      if (!std::getline(is, line)) return fail("truncated basis");
      std::istringstream ls(line);
      std::string word_tag;
      int component;
      ls >> word_tag >> component;
      if (word_tag != "entry") return fail("malformed basis entry");
      std::vector<int> letters;
      int s;
      while (ls >> s) letters.push_back(s - 1);
      data.entries.push_back({component, freelie::LyndonWord(letters)});
    }
    while (is >> key) {
      if (key != "gen") return fail("malformed matrix block");
      int gi, gj, rows, cols;
      is >> gi >> gj >> rows >> cols;
      IntMatrix m(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          std::string num;
          if (!(is >> num)) return fail("truncated matrix");
          m.at(r, c) = mpz_class(num);
        }
      data.matrices.emplace(std::make_pair(gi, gj), std::move(m));
    }
    for (const Generator& g : braidlie::generators(n))
      if (!data.matrices.count({g.i(), g.j()})) return fail("missing generator matrix");
    return data;
  } catch (const std::exception& e) {
    return fail(std::string("unreadable: ") + e.what());
  }
}

FileCache::GradeData& FileCache::grade(int n, int q) {
  auto key = std::make_pair(n, q);
  auto it = memory_.find(key);
  if (it != memory_.end()) return it->second;

  std::string why;
  if (auto loaded = load(n, q, &why)) {
    return memory_.emplace(key, std::move(*loaded)).first->second;
  }
  if (why != "missing")
    std::cerr << "warning: cache file " << file_name(n, q) << " is unusable (" << why
              << "); recomputing\n";
  GradeData data = compute(n, q);
  store(n, q, data);
  return memory_.emplace(key, std::move(data)).first->second;
}

braidlie::GradedBasis FileCache::graded_basis(int n, int q) {
  return GradedBasis(n, q, grade(n, q).entries);
}

exactla::IntMatrix FileCache::ad_matrix(int n, int q, braidlie::Generator g) {
  GradeData& data = grade(n, q);
  auto it = data.matrices.find({g.i(), g.j()});
  if (it == data.matrices.end()) throw std::invalid_argument("generator outside range");
  return it->second;
}

void FileCache::build(int n, int max_degree) {
  for (int q = 1; q <= max_degree; ++q) grade(n, q);
}

std::vector<FileCache::EntryInfo> FileCache::inspect() const {
  std::vector<EntryInfo> out;
  if (!std::filesystem::exists(dir_)) return out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    if (!e.is_regular_file()) continue;
    const std::string name = e.path().filename().string();
    if (name.rfind("grade_n", 0) == 0 && name.size() > 6 &&
        name.substr(name.size() - 6) == ".cache")
      files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    EntryInfo info;
    info.file = path.filename().string();
    info.bytes = std::filesystem::file_size(path);
    int n = 0, q = 0;
    if (std::sscanf(info.file.c_str(), "grade_n%d_q%d.cache", &n, &q) == 2) {
      info.n = n;
      info.q = q;
      std::string why;
      if (auto data = load(n, q, &why)) {
        info.valid = true;
        info.dim = static_cast<int>(data->entries.size());
      } else {
        info.detail = why;
      }
    } else {
      info.detail = "unrecognized name";
    }
    out.push_back(std::move(info));
  }
  return out;
}

int FileCache::clear() {
  int removed = 0;
  if (!std::filesystem::exists(dir_)) return 0;
  std::vector<std::filesystem::path> doomed;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    if (!e.is_regular_file()) continue;
    const std::string name = e.path().filename().string();
    if (name.rfind("grade_n", 0) == 0 && name.size() > 6 &&
        name.substr(name.size() - 6) == ".cache")
      doomed.push_back(e.path());
  }
  for (const auto& p : doomed)
    if (std::filesystem::remove(p)) ++removed;
  memory_.clear();
  return removed;
}

std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return std::filesystem::path(flag_value);
  const char* env = std::getenv("BRAIDLIE_CACHE_DIR");
  if (env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

}  // namespace cli
