#include "braidlie/cli.hpp"

#include "braidlie/central.hpp"
#include "braidlie/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace cli {

using braidlie::PnLieElement;
using nlohmann::ordered_json;
using repmaps::RepresentationSpec;
using repmaps::TruncPoly;

namespace {

std::string iso_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool structured(const RunConfig& cfg) { return cfg.format != "text"; }

ordered_json report_head(const std::string& command) {
  ordered_json j;
  j["schema_version"] = 1;
  j["generated_at"] = iso_timestamp();
  j["command"] = command;
  return j;
}

int usage_error(std::ostream& err, const std::string& msg) {
  err << "error: " << msg << "\n";
  return 1;
}

std::unique_ptr<FileCache> make_cache(const RunConfig& cfg) {
  auto dir = resolve_cache_dir(cfg.cache_dir);
  if (!dir) return nullptr;
  return std::make_unique<FileCache>(*dir, cfg.degree_cap);
}

std::vector<std::string> element_texts(const std::vector<PnLieElement>& elems) {
  std::vector<std::string> out;
  for (const auto& e : elems) out.push_back(braidlie::to_string(e));
  return out;
}

void emit(const RunConfig& cfg, const ordered_json& j, const std::string& text,
          std::ostream& out) {
  if (structured(cfg)) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// dims / basis / bracket

int cmd_dims(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 2) return usage_error(err, "dims requires --n >= 2");
  if (cfg.max_degree < 1) return usage_error(err, "dims requires --max-degree >= 1");
  if (cfg.max_degree > cfg.degree_cap)
    return usage_error(err, "--max-degree exceeds --degree-cap");

  ordered_json j = report_head("dims");
  j["inputs"] = {{"n", cfg.n}, {"max_degree", cfg.max_degree}, {"degree_cap", cfg.degree_cap}};
  std::ostringstream text;
  text << "rank table for n = " << cfg.n << "\n";
  ordered_json rows = ordered_json::array();
  for (int q = 1; q <= cfg.max_degree; ++q) {
    long long total = 0;
    ordered_json comps = ordered_json::array();
    std::ostringstream comp_text;
    for (int m = 2; m <= cfg.n; ++m) {
      long long w = freelie::witt_dimension(m - 1, q);
      total += w;
      comps.push_back({{"component", m}, {"rank", w}});
      if (m > 2) comp_text << ", ";
      comp_text << "m=" << m << ": " << w;
    }
    rows.push_back({{"q", q}, {"rank", total}, {"components", comps}});
    text << "q " << q << ": rank " << total << "   [" << comp_text.str() << "]\n";
  }
  j["rows"] = rows;
  emit(cfg, j, text.str(), out);
  return 0;
}

int cmd_basis(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 2) return usage_error(err, "basis requires --n >= 2");
  if (cfg.max_degree < 1) return usage_error(err, "basis requires --max-degree >= 1");
  if (cfg.max_degree > cfg.degree_cap)
    return usage_error(err, "--max-degree exceeds --degree-cap");

  ordered_json j = report_head("basis");
  j["inputs"] = {{"n", cfg.n}, {"max_degree", cfg.max_degree}, {"degree_cap", cfg.degree_cap}};
  std::ostringstream text;
  text << "basis for n = " << cfg.n << "\n";
  ordered_json degrees = ordered_json::array();
  for (int q = 1; q <= cfg.max_degree; ++q) {
    braidlie::GradedBasis b = braidlie::basis(cfg.n, q, cfg.degree_cap);
    ordered_json entries = ordered_json::array();
    text << "degree " << q << " (rank " << b.size() << "):\n";
    for (int k = 0; k < b.size(); ++k) {
      std::string w = braidlie::word_text(b.entry(k).component, b.entry(k).word);
      entries.push_back(w);
      text << "  " << w << "\n";
    }
    degrees.push_back({{"q", q}, {"rank", b.size()}, {"entries", entries}});
  }
  j["degrees"] = degrees;
  emit(cfg, j, text.str(), out);
  return 0;
}

int cmd_bracket(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 2) return usage_error(err, "bracket requires --n >= 2");
  if (cfg.expr.empty()) return usage_error(err, "bracket requires an expression");
  PnLieElement result(cfg.n);
  try {
    result = parse_element(cfg.expr, cfg.n, cfg.degree_cap);
  } catch (const ParseError& e) {
    return usage_error(err, e.what());
  } catch (const std::exception& e) {
    return usage_error(err, e.what());
  }
  ordered_json j = report_head("bracket");
  j["inputs"] = {{"n", cfg.n}, {"expr", cfg.expr}};
  j["result"] = braidlie::to_string(result);
  emit(cfg, j, braidlie::to_string(result) + "\n", out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify / centralizer / adjoint-kernel

namespace {

ordered_json degrees_json(const std::vector<central::DegreeResult>& degrees,
                          bool with_prediction) {
  ordered_json out = ordered_json::array();
  for (const auto& d : degrees) {
    ordered_json rec;
    rec["q"] = d.q;
    rec["rank"] = d.rank;
    rec["basis"] = element_texts(d.basis);
    if (with_prediction) rec["matches_prediction"] = d.matches_prediction;
    out.push_back(rec);
  }
  return out;
}

void degrees_text(std::ostream& os, const std::vector<central::DegreeResult>& degrees,
                  bool with_prediction) {
  for (const auto& d : degrees) {
    os << "  q " << d.q << ": rank " << d.rank;
    if (!d.basis.empty()) {
      os << ", basis:";
      for (const auto& e : d.basis) os << ' ' << braidlie::to_string(e);
    }
    if (with_prediction)
      os << (d.matches_prediction ? "  [matches prediction]" : "  [MISMATCH]");
    os << "\n";
  }
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 3) return usage_error(err, "verify requires --n >= 3");
  if (cfg.max_degree < 1) return usage_error(err, "verify requires --max-degree >= 1");
  if (cfg.max_degree + 1 > cfg.degree_cap)
    return usage_error(err, "--max-degree + 1 exceeds --degree-cap");

  std::unique_ptr<FileCache> cache = make_cache(cfg);
  braidlie::RelationReport relations =
      braidlie::verify_relations(cfg.n, std::max(2, cfg.max_degree), cfg.degree_cap);
  central::CentralizerReport theorem =
      central::verify_theorem(cfg.n, cfg.max_degree, cache.get(), cfg.degree_cap);
  bool pass = relations.passed && theorem.passed;

  ordered_json j = report_head("verify");
  j["inputs"] = {{"n", cfg.n}, {"max_degree", cfg.max_degree}, {"degree_cap", cfg.degree_cap}};
  j["relations"] = {{"passed", relations.passed},
                    {"relation_instances", relations.relation_instances},
                    {"antisymmetry_pairs", relations.antisymmetry_pairs},
                    {"jacobi_triples", relations.jacobi_triples},
                    {"witness", relations.witness}};
  j["centralizer"] = {{"passed", theorem.passed},
                      {"witness", theorem.witness},
                      {"degrees", degrees_json(theorem.degrees, true)}};
  j["verdict"] = pass ? "pass" : "fail";

  std::ostringstream text;
  text << "relation check: " << (relations.passed ? "pass" : "FAIL") << " (instances "
       << relations.relation_instances << ", antisymmetry pairs " << relations.antisymmetry_pairs
       << ", jacobi triples " << relations.jacobi_triples << ")\n";
  if (!relations.passed) text << "  witness: " << relations.witness << "\n";
  text << "centralizer of the top component for n = " << cfg.n << ":\n";
  degrees_text(text, theorem.degrees, true);
  if (!theorem.passed) text << "  witness: " << theorem.witness << "\n";
  text << "verdict: " << (pass ? "pass" : "fail") << "\n";

  emit(cfg, j, text.str(), out);
  return pass ? 0 : 2;
}

int cmd_centralizer(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 3) return usage_error(err, "centralizer requires --n >= 3");
  if (cfg.max_degree < 1) return usage_error(err, "centralizer requires --max-degree >= 1");
  if (cfg.max_degree + 1 > cfg.degree_cap)
    return usage_error(err, "--max-degree + 1 exceeds --degree-cap");

  std::unique_ptr<FileCache> cache = make_cache(cfg);
  ordered_json j = report_head("centralizer");
  std::ostringstream text;

  if (cfg.element.empty()) {
    central::CentralizerReport theorem =
        central::verify_theorem(cfg.n, cfg.max_degree, cache.get(), cfg.degree_cap);
    j["inputs"] = {{"n", cfg.n},
                   {"max_degree", cfg.max_degree},
                   {"degree_cap", cfg.degree_cap},
                   {"element", "top-component generators"}};
    j["degrees"] = degrees_json(theorem.degrees, true);
    j["verdict"] = theorem.passed ? "pass" : "fail";
    text << "centralizer of the top component for n = " << cfg.n << ":\n";
    degrees_text(text, theorem.degrees, true);
    text << "verdict: " << (theorem.passed ? "pass" : "fail") << "\n";
  } else {
    PnLieElement z(cfg.n);
    try {
      z = parse_element(cfg.element, cfg.n, cfg.degree_cap);
    } catch (const std::exception& e) {
      return usage_error(err, e.what());
    }
    if (z.is_zero() || !z.is_homogeneous() || z.degree() != 1)
      return usage_error(err, "--element must be homogeneous of degree 1 and nonzero");
    std::vector<central::DegreeResult> degrees;
    for (int q = 1; q <= cfg.max_degree; ++q) {
      central::DegreeResult d;
      d.q = q;
      d.basis = central::centralizer_of_element(cfg.n, z, q, cache.get(), cfg.degree_cap);
      d.rank = static_cast<int>(d.basis.size());
      degrees.push_back(std::move(d));
    }
    j["inputs"] = {{"n", cfg.n},
                   {"max_degree", cfg.max_degree},
                   {"degree_cap", cfg.degree_cap},
                   {"element", braidlie::to_string(z)}};
    j["degrees"] = degrees_json(degrees, false);
    text << "centralizer of " << braidlie::to_string(z) << " for n = " << cfg.n << ":\n";
    degrees_text(text, degrees, false);
  }
  emit(cfg, j, text.str(), out);
  return 0;
}

int cmd_adjoint_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 3) return usage_error(err, "adjoint-kernel requires --n >= 3");
  if (cfg.max_degree < 1) return usage_error(err, "adjoint-kernel requires --max-degree >= 1");
  if (cfg.max_degree + 1 > cfg.degree_cap)
    return usage_error(err, "--max-degree + 1 exceeds --degree-cap");

  std::unique_ptr<FileCache> cache = make_cache(cfg);
  std::vector<central::DegreeResult> degrees;
  for (int q = 1; q <= cfg.max_degree; ++q) {
    central::DegreeResult d;
    d.q = q;
    d.basis = central::adjoint_kernel(cfg.n, q, cache.get(), cfg.degree_cap);
    d.rank = static_cast<int>(d.basis.size());
    degrees.push_back(std::move(d));
  }
  ordered_json j = report_head("adjoint-kernel");
  j["inputs"] = {{"n", cfg.n}, {"max_degree", cfg.max_degree}, {"degree_cap", cfg.degree_cap}};
  j["degrees"] = degrees_json(degrees, false);
  std::ostringstream text;
  text << "adjoint kernel for n = " << cfg.n << ":\n";
  degrees_text(text, degrees, false);
  emit(cfg, j, text.str(), out);
  return 0;
}

// ---------------------------------------------------------------------------
// criterion

namespace {

ordered_json criterion_json(const RunConfig& cfg, const repmaps::CriterionReport& rep) {
  ordered_json j = report_head("criterion");
  j["inputs"] = {{"n", rep.n},
                 {"max_degree", rep.max_degree},
                 {"rep", cfg.rep},
                 {"trunc", rep.trunc},
                 {"degree_cap", cfg.degree_cap}};
  j["representation"] = {{"family", rep.family}, {"size", rep.size}, {"vars", rep.vars}};
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"q", c.q},
                      {"name", c.name},
                      {"injective", c.injective},
                      {"domain_rank", c.domain_rank},
                      {"witness", c.witness}});
  j["checks"] = checks;
  j["conclusion"] = repmaps::conclusion_name(rep.conclusion);
  j["note"] = rep.note;
  return j;
}

std::string criterion_text(const repmaps::CriterionReport& rep) {
  std::ostringstream os;
  os << "criterion run: family " << rep.family << ", n = " << rep.n << ", degrees 1.."
     << rep.max_degree << ", matrix size " << rep.size << ", variables " << rep.vars << "\n";
  for (const auto& c : rep.checks) {
    os << "  q " << c.q << " " << c.name << ": "
       << (c.injective ? "injective" : "NOT injective") << " (domain rank " << c.domain_rank
       << ")";
    if (!c.injective) os << ", witness: " << c.witness;
    os << "\n";
  }
  os << "conclusion: " << repmaps::conclusion_name(rep.conclusion) << "\n";
  os << "note: " << rep.note << "\n";
  return os.str();
}

}  // namespace

int cmd_criterion(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 3) return usage_error(err, "criterion requires --n >= 3");
  if (cfg.max_degree < 1) return usage_error(err, "criterion requires --max-degree >= 1");
  if (cfg.max_degree > cfg.degree_cap)
    return usage_error(err, "--max-degree exceeds --degree-cap");
  if (cfg.rep.empty()) return usage_error(err, "criterion requires --rep");
  int trunc = cfg.trunc > 0 ? cfg.trunc : cfg.max_degree;
  if (trunc < cfg.max_degree)
    return usage_error(err, "--trunc must be at least --max-degree");

  std::unique_ptr<FileCache> cache = make_cache(cfg);
  repmaps::CriterionReport report;
  try {
    RepresentationSpec spec = load_representation(cfg.rep, cfg.n, std::max(trunc, 2));
    repmaps::CriterionOptions options;
    options.source = cache.get();
    options.degree_cap = cfg.degree_cap;
    report = repmaps::criterion_test(spec, cfg.n, cfg.max_degree, options);
  } catch (const std::exception& e) {
    return usage_error(err, e.what());
  }

  ordered_json j = criterion_json(cfg, report);
  std::string text = criterion_text(report);

  std::filesystem::path dir(cfg.out_dir.empty() ? "." : cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::string stem = "criterion_" + report.family + "_n" + std::to_string(report.n);
  {
    std::ofstream tf(dir / (stem + ".txt"), std::ios::trunc);
    tf << text;
    std::ofstream jf(dir / (stem + ".json"), std::ios::trunc);
    jf << j.dump(2) << "\n";
    if (!tf || !jf) err << "warning: could not write report files under " << dir.string() << "\n";
  }

  emit(cfg, j, text, out);
  return report.conclusion == repmaps::CriterionConclusion::met_up_to_degree ? 0 : 3;
}

// ---------------------------------------------------------------------------
// cache

int cmd_cache(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto dir = resolve_cache_dir(cfg.cache_dir);
  if (!dir)
    return usage_error(err, "cache commands need --cache-dir or BRAIDLIE_CACHE_DIR");
  FileCache cache(*dir, cfg.degree_cap);

  ordered_json j = report_head("cache");
  std::ostringstream text;
  if (cfg.cache_command == "build") {
    if (cfg.n < 2) return usage_error(err, "cache build requires --n >= 2");
    if (cfg.max_degree < 1) return usage_error(err, "cache build requires --max-degree >= 1");
    if (cfg.max_degree + 1 > cfg.degree_cap)
      return usage_error(err, "--max-degree + 1 exceeds --degree-cap");
    cache.build(cfg.n, cfg.max_degree);
    j["inputs"] = {{"action", "build"},
                   {"dir", dir->string()},
                   {"n", cfg.n},
                   {"max_degree", cfg.max_degree}};
    j["built"] = cfg.max_degree;
    text << "built cache for n = " << cfg.n << ", degrees 1.." << cfg.max_degree << " in "
         << dir->string() << "\n";
  } else if (cfg.cache_command == "inspect") {
    j["inputs"] = {{"action", "inspect"}, {"dir", dir->string()}};
    ordered_json entries = ordered_json::array();
    text << "cache directory " << dir->string() << ":\n";
    for (const auto& e : cache.inspect()) {
      entries.push_back({{"file", e.file},
                         {"valid", e.valid},
                         {"n", e.n},
                         {"q", e.q},
                         {"dim", e.dim},
                         {"bytes", e.bytes},
                         {"detail", e.detail}});
      text << "  " << e.file << ": " << (e.valid ? "ok" : ("INVALID (" + e.detail + ")"))
           << ", n " << e.n << ", q " << e.q << ", dim " << e.dim << ", " << e.bytes
           << " bytes\n";
    }
    if (entries.empty()) text << "  (empty)\n";
    j["entries"] = entries;
  } else if (cfg.cache_command == "clear") {
    int removed = cache.clear();
    j["inputs"] = {{"action", "clear"}, {"dir", dir->string()}};
    j["removed"] = removed;
    text << "removed " << removed << " cache file(s) from " << dir->string() << "\n";
  } else {
    return usage_error(err, "cache action must be build, inspect, or clear");
  }
  emit(cfg, j, text.str(), out);
  return 0;
}

// ---------------------------------------------------------------------------
// representation spec files

TruncPoly parse_trunc_poly(const std::string& text, int vars, int trunc) {
  TruncPoly out(vars, trunc);
  size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("polynomial '" + text + "': " + msg);
  };
  auto read_int = [&]() -> mpz_class {
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) fail("expected an integer");
    return mpz_class(text.substr(start, pos - start));
  };

  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+') {
      ++pos;
    } else if (text[pos] == '-') {
      sign = -1;
      ++pos;
    } else if (!first) {
      fail("expected '+' or '-' between terms");
    }
    first = false;

    mpz_class coeff = 1;
    std::vector<int> expo(vars, 0);
    bool saw_factor = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = read_int();
      saw_factor = true;
      if (pos < text.size() && text[pos] == '*') ++pos;
    }
    while (pos < text.size() && text[pos] == 'u') {
      ++pos;
      mpz_class idx = read_int();
      if (idx < 1 || idx > vars) fail("variable index out of range");
      int e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        mpz_class ev = read_int();
        if (ev < 1 || !ev.fits_sint_p()) fail("bad exponent");
        e = static_cast<int>(ev.get_si());
      }
      expo[static_cast<size_t>(idx.get_si()) - 1] += e;
      saw_factor = true;
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        if (pos >= text.size() || text[pos] != 'u') fail("expected a variable after '*'");
      }
    }
    if (!saw_factor) fail("empty term");
    out.add_term(expo, sign * coeff);
  }
  if (first) fail("empty polynomial");
  return out;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

RepresentationSpec load_representation(const std::string& rep_value, int n, int trunc) {
  if (rep_value == "burau") return RepresentationSpec::burau(n);
  if (rep_value == "gassner") return RepresentationSpec::gassner(n);

  std::ifstream in(rep_value);
  if (!in) throw std::invalid_argument("cannot open representation file " + rep_value);

  std::string family;
  int file_n = 0, size = 0, vars = 0;
  std::map<std::pair<int, int>, repmaps::TruncSeriesMatrix> images;

  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument(rep_value + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("generator", 0) == 0) {
      if (size < 1 || vars < 1) fail("size and vars must come before generator blocks");
      std::istringstream hs(t);
      std::string word;
      int gi = 0, gj = 0;
      hs >> word >> gi >> gj;
      if (!hs || gi < 1 || gj < 1 || gi == gj) fail("malformed generator header");
      if (gi > gj) std::swap(gi, gj);
      repmaps::TruncSeriesMatrix m(size, vars, trunc);
      for (int r = 0; r < size; ++r) {
        std::string row_line;
        do {
          if (!std::getline(in, row_line)) fail("unexpected end of file in a matrix block");
          ++lineno;
          row_line = trim(row_line);
        } while (row_line.empty() || row_line[0] == '#');
        std::istringstream rs(row_line);
        std::string token;
        for (int c = 0; c < size; ++c) {
          if (!(rs >> token)) fail("matrix row has too few entries");
          m.at(r, c) = parse_trunc_poly(token, vars, trunc);
        }
        if (rs >> token) fail("matrix row has too many entries");
      }
      if (!images.emplace(std::make_pair(gi, gj), std::move(m)).second)
        fail("duplicate generator block");
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos) fail("expected 'key = value' or a generator block");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "family") {
      family = value;
    } else if (key == "n") {
      file_n = std::stoi(value);
    } else if (key == "size") {
      size = std::stoi(value);
    } else if (key == "vars") {
      vars = std::stoi(value);
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  if (family.empty()) throw std::invalid_argument(rep_value + ": missing 'family'");
  if (file_n != 0 && file_n != n)
    throw std::invalid_argument(rep_value + ": file n = " + std::to_string(file_n) +
                                " does not match --n = " + std::to_string(n));
  if (family == "burau") return RepresentationSpec::burau(n);
  if (family == "gassner") return RepresentationSpec::gassner(n);
  if (family != "custom")
    throw std::invalid_argument(rep_value + ": unknown family '" + family + "'");
  if (size < 1 || vars < 1)
    throw std::invalid_argument(rep_value + ": custom specs need positive size and vars");
  return RepresentationSpec::custom(n, size, vars, std::move(images));
}

// ---------------------------------------------------------------------------
// argument parsing

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"graded Lie ring of the pure braid tower: bases, brackets, centralizers, and "
               "representation criterion runs"};
  app.name("braidlie");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value configuration file");

  RunConfig cfg;
  app.add_option("--n", cfg.n, "strand count");
  app.add_option("--max-degree", cfg.max_degree, "largest homogeneous degree to process");
  app.add_option("--degree-cap", cfg.degree_cap, "hard ceiling on homogeneous degree")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "text | structured")
      ->check(CLI::IsMember({"text", "structured", "json-like-structured"}))
      ->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir,
                 "cache directory (default: $BRAIDLIE_CACHE_DIR when set)");
  app.add_option("--rep", cfg.rep, "burau | gassner | path to a representation spec file");
  app.add_option("--trunc", cfg.trunc, "series truncation for criterion runs");
  app.add_option("--out-dir", cfg.out_dir, "directory for criterion report files")
      ->capture_default_str();
  app.add_option("--element", cfg.element, "centralize this element instead of the top row");

  CLI::App* dims = app.add_subcommand("dims", "rank table of the graded slices");
  CLI::App* basis = app.add_subcommand("basis", "list the graded basis");
  CLI::App* bracket = app.add_subcommand("bracket", "evaluate a bracket expression");
  std::string expr;
  bracket->add_option("expr", expr, "expression, e.g. \"[B(1,2), B(1,4)]\"")->required();
  CLI::App* verify =
      app.add_subcommand("verify", "check the defining relations and the centralizer shape");
  CLI::App* centralizer = app.add_subcommand("centralizer", "centralizer degree by degree");
  CLI::App* adjoint =
      app.add_subcommand("adjoint-kernel", "common kernel of all adjoint actions");
  CLI::App* criterion =
      app.add_subcommand("criterion", "run the representation injectivity checks");
  CLI::App* cache = app.add_subcommand("cache", "manage the persistent cache");
  std::string cache_action;
  cache->add_option("action", cache_action, "build | inspect | clear")->required();
  for (CLI::App* sub : {dims, basis, bracket, verify, centralizer, adjoint, criterion, cache})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (cfg.format == "json-like-structured") cfg.format = "structured";
  cfg.expr = expr;
  cfg.cache_command = cache_action;

  try {
    if (dims->parsed()) {
      cfg.command = "dims";
      return cmd_dims(cfg, out, err);
    }
    if (basis->parsed()) {
      cfg.command = "basis";
      return cmd_basis(cfg, out, err);
    }
    if (bracket->parsed()) {
      cfg.command = "bracket";
      return cmd_bracket(cfg, out, err);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg, out, err);
    }
    if (centralizer->parsed()) {
      cfg.command = "centralizer";
      return cmd_centralizer(cfg, out, err);
    }
    if (adjoint->parsed()) {
      cfg.command = "adjoint-kernel";
      return cmd_adjoint_kernel(cfg, out, err);
    }
    if (criterion->parsed()) {
      cfg.command = "criterion";
      return cmd_criterion(cfg, out, err);
    }
    if (cache->parsed()) {
      cfg.command = "cache";
      return cmd_cache(cfg, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand given\n";
  return 1;
}

}  // namespace cli
