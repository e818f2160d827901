#include "braidlie/cli.hpp"

#include "braidlie/parse.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using braidlie::PnLieElement;
using exactla::Int;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::vector<const char*> argv;
  argv.push_back("braidlie");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("braidlie_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string diagonal_spec_text() {
  // Three commuting diagonal deformations on three strands.
  return "# commuting diagonal fixture\n"
         "family = custom\n"
         "n = 3\n"
         "size = 3\n"
         "vars = 1\n"
         "generator 1 2\n"
         "1+u1 0 0\n"
         "0 1 0\n"
         "0 0 1\n"
         "generator 1 3\n"
         "1 0 0\n"
         "0 1+u1 0\n"
         "0 0 1\n"
         "generator 2 3\n"
         "1 0 0\n"
         "0 1 0\n"
         "0 0 1+u1\n";
}

}  // namespace

TEST_CASE("element parser round-trips canonical output") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int q = 1; q <= 3; ++q) {
    auto b = braidlie::basis(4, q);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Int> coords(b.size());
      for (auto& c : coords) c = coeff(rng);
      PnLieElement x = b.combine(coords);
      CHECK(cli::parse_element(braidlie::to_string(x), 4) == x);
    }
  }
  CHECK(cli::parse_element("0", 4) == PnLieElement(4));
}

TEST_CASE("element parser grammar") {
  using braidlie::Generator;
  PnLieElement b12 = PnLieElement::generator(4, Generator(1, 2));
  PnLieElement b14 = PnLieElement::generator(4, Generator(1, 4));
  CHECK(cli::parse_element("B(1,2)", 4) == b12);
  CHECK(cli::parse_element("B(2,1)", 4) == b12);
  CHECK(cli::parse_element(" - B(1,2) + 3 * B(1,4) ", 4) == 3 * b14 - b12);
  CHECK(cli::parse_element("[B(1,2), B(1,4)]", 4) == braidlie::bracket(b12, b14));
  CHECK(cli::parse_element("(B(1,2))", 4) == b12);
  CHECK(cli::parse_element("2*[B(1,4), [B(1,4), B(2,4)]]", 4).degree() == 3);
  CHECK(cli::parse_element("B(1,4)B(2,4)", 4) ==
        braidlie::bracket(b14, PnLieElement::generator(4, Generator(2, 4))));
}

TEST_CASE("element parser reports positions") {
  auto expect_error = [](const std::string& text, size_t position) {
    try {
      cli::parse_element(text, 4);
      FAIL("expected a parse error for: " << text);
    } catch (const cli::ParseError& e) {
      CHECK(e.position == position);
    }
  };
  expect_error("B(1,5)", 0);       // generator outside the strand count
  expect_error("B(1,2)+", 7);      // dangling operator
  expect_error("[B(1,2)", 7);      // unbalanced bracket
  expect_error("2B(1,2)", 0);      // missing '*'
  expect_error("3", 0);            // bare integer
  expect_error("B(2,4)B(1,4)", 0); // not a Lyndon word
  expect_error("B(1,3)B(1,4)", 0); // mixed components
}

TEST_CASE("polynomial literals") {
  using repmaps::TruncPoly;
  CHECK(cli::parse_trunc_poly("1", 2, 3) == TruncPoly::constant(2, 3, 1));
  CHECK(cli::parse_trunc_poly("-u1", 2, 3) == -TruncPoly::variable(2, 3, 0));
  TruncPoly u1 = TruncPoly::variable(2, 3, 0);
  TruncPoly u2 = TruncPoly::variable(2, 3, 1);
  CHECK(cli::parse_trunc_poly("2*u1^2*u2", 2, 3) ==
        TruncPoly::constant(2, 3, 2) * u1 * u1 * u2);
  CHECK(cli::parse_trunc_poly("1+u1-u2", 2, 3) == TruncPoly::constant(2, 3, 1) + u1 - u2);
  CHECK_THROWS_AS(cli::parse_trunc_poly("u3", 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_trunc_poly("", 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_trunc_poly("u1^", 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_trunc_poly("u1 u2", 2, 3), std::invalid_argument);
}

TEST_CASE("representation loading") {
  auto burau = cli::load_representation("burau", 4, 2);
  CHECK(burau.family == repmaps::RepFamily::burau);
  CHECK(burau.size == 4);
  auto gassner = cli::load_representation("gassner", 3, 2);
  CHECK(gassner.vars == 3);
  CHECK_THROWS_AS(cli::load_representation("/no/such/file", 3, 2), std::invalid_argument);

  TempDir dir("repspec");
  fs::path file = dir.path / "diag.rep";
  std::ofstream(file) << diagonal_spec_text();
  auto spec = cli::load_representation(file.string(), 3, 2);
  CHECK(spec.family == repmaps::RepFamily::custom);
  CHECK(spec.size == 3);
  CHECK(spec.vars == 1);
  auto report = repmaps::criterion_test(spec, 3, 2);
  CHECK(report.conclusion == repmaps::CriterionConclusion::failed_with_witness);
  CHECK_THROWS_AS(cli::load_representation(file.string(), 4, 2), std::invalid_argument);
}

TEST_CASE("file cache round-trips and survives corruption") {
  TempDir dir("cache");
  central::DirectSource direct;
  braidlie::Generator g(1, 4);
  {
    cli::FileCache cache(dir.path);
    cache.build(4, 2);
    CHECK(fs::exists(dir.path / cli::FileCache::file_name(4, 1)));
    CHECK(fs::exists(dir.path / cli::FileCache::file_name(4, 2)));
  }
  {
    cli::FileCache cache(dir.path);  // fresh instance: reads from disk
    for (int q = 1; q <= 2; ++q) {
      CHECK(cache.graded_basis(4, q).entries() == direct.graded_basis(4, q).entries());
      CHECK(cache.ad_matrix(4, q, g) == direct.ad_matrix(4, q, g));
    }
    auto entries = cache.inspect();
    REQUIRE(entries.size() == 2);
    for (const auto& e : entries) {
      CHECK(e.valid);
      CHECK(e.n == 4);
    }
  }
  // Flip one byte in the body; the checksum must catch it.
  fs::path victim = dir.path / cli::FileCache::file_name(4, 2);
  {
    std::fstream f(victim, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(-2, std::ios::end);
    f.put('!');
  }
  {
    cli::FileCache cache(dir.path);
    auto entries = cache.inspect();
    bool found_invalid = false;
    for (const auto& e : entries)
      if (e.file == cli::FileCache::file_name(4, 2)) found_invalid = !e.valid;
    CHECK(found_invalid);
    // Using the grade recomputes and rewrites the file.
    CHECK(cache.ad_matrix(4, 2, g) == direct.ad_matrix(4, 2, g));
  }
  {
    cli::FileCache cache(dir.path);
    for (const auto& e : cache.inspect()) CHECK(e.valid);
    CHECK(cache.clear() == 2);
    CHECK(cache.inspect().empty());
  }
}

TEST_CASE("cache directory resolution") {
  CHECK(cli::resolve_cache_dir("/tmp/explicit") == fs::path("/tmp/explicit"));
  setenv("BRAIDLIE_CACHE_DIR", "/tmp/from_env", 1);
  CHECK(cli::resolve_cache_dir("") == fs::path("/tmp/from_env"));
  CHECK(cli::resolve_cache_dir("/tmp/explicit") == fs::path("/tmp/explicit"));
  unsetenv("BRAIDLIE_CACHE_DIR");
  CHECK(!cli::resolve_cache_dir("").has_value());
}

TEST_CASE("cli exit codes") {
  std::string out, err;
  CHECK(run_cli({}, &out, &err) == 1);
  CHECK(run_cli({"--help"}, &out, &err) == 0);
  CHECK(out.find("braidlie") != std::string::npos);
  CHECK(run_cli({"dims", "--n", "4", "--max-degree", "2"}) == 0);
  CHECK(run_cli({"dims", "--n", "1", "--max-degree", "2"}, &out, &err) == 1);
  CHECK(!err.empty());
  CHECK(run_cli({"verify", "--n", "2", "--max-degree", "2"}, &out, &err) == 1);
  CHECK(run_cli({"bracket", "B(1,5)", "--n", "4"}, &out, &err) == 1);
  CHECK(err.find("parse error") != std::string::npos);
  CHECK(run_cli({"cache", "inspect"}, &out, &err) == 1);
  CHECK(run_cli({"centralizer", "--n", "3", "--max-degree", "1", "--element", "0"}, &out,
                &err) == 1);
}

TEST_CASE("cli verify and bracket output") {
  std::string out;
  CHECK(run_cli({"verify", "--n", "3", "--max-degree", "2"}, &out) == 0);
  CHECK(out.find("verdict: pass") != std::string::npos);
  CHECK(run_cli({"bracket", "[B(1,2),B(1,4)]", "--n", "4"}, &out) == 0);
  CHECK(out == "B(1,4)B(2,4)\n");
}

TEST_CASE("structured output is deterministic up to the timestamp") {
  auto canonical = [](const std::string& text) {
    auto j = nlohmann::json::parse(text);
    CHECK(j["schema_version"] == 1);
    CHECK(j.contains("generated_at"));
    j.erase("generated_at");
    return j.dump();
  };
  std::string first, second;
  std::vector<std::string> args = {"verify", "--n", "3", "--max-degree", "3",
                                   "--format", "structured"};
  CHECK(run_cli(args, &first) == 0);
  CHECK(run_cli(args, &second) == 0);
  CHECK(canonical(first) == canonical(second));

  std::string dims_text;
  CHECK(run_cli({"dims", "--n", "4", "--max-degree", "2", "--format", "structured"},
                &dims_text) == 0);
  auto j = nlohmann::json::parse(dims_text);
  CHECK(j["command"] == "dims");
  CHECK(j["rows"][0]["rank"] == 6);
  CHECK(j["rows"][1]["rank"] == 4);
}

TEST_CASE("config file supplies defaults") {
  TempDir dir("config");
  fs::path cfg = dir.path / "braidlie.cfg";
  std::ofstream(cfg) << "n = 4\nmax-degree = 2\nformat = structured\n";
  std::string out;
  CHECK(run_cli({"dims", "--config", cfg.string()}, &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["inputs"]["n"] == 4);
  CHECK(j["rows"].size() == 2);
  // Command line beats the config file.
  CHECK(run_cli({"dims", "--config", cfg.string(), "--max-degree", "1"}, &out) == 0);
  CHECK(nlohmann::json::parse(out)["rows"].size() == 1);
}

TEST_CASE("criterion command writes report files and sets exit codes") {
  TempDir dir("criterion");
  std::string out, err;
  std::vector<std::string> ok_args = {"criterion", "--n", "3", "--max-degree", "2",
                                      "--rep", "burau", "--out-dir", dir.path.string()};
  CHECK(run_cli(ok_args, &out, &err) == 0);
  CHECK(out.find("criterion-met-up-to-degree") != std::string::npos);
  CHECK(fs::exists(dir.path / "criterion_burau_n3.txt"));
  CHECK(fs::exists(dir.path / "criterion_burau_n3.json"));
  std::ifstream jf(dir.path / "criterion_burau_n3.json");
  nlohmann::json j = nlohmann::json::parse(jf);
  CHECK(j["conclusion"] == "criterion-met-up-to-degree");
  CHECK(j["checks"].size() == 4);

  fs::path spec = dir.path / "diag.rep";
  std::ofstream(spec) << diagonal_spec_text();
  std::vector<std::string> fail_args = {"criterion", "--n", "3", "--max-degree", "2",
                                        "--rep", spec.string(),
                                        "--out-dir", dir.path.string()};
  CHECK(run_cli(fail_args, &out, &err) == 3);
  CHECK(fs::exists(dir.path / "criterion_custom_n3.json"));
  CHECK(run_cli({"criterion", "--n", "3", "--max-degree", "2", "--rep", "nonsense",
                 "--out-dir", dir.path.string()}, &out, &err) == 1);
}

TEST_CASE("cli cache subcommand") {
  TempDir dir("clicache");
  std::string out, err;
  std::vector<std::string> build = {"cache", "build", "--n", "3", "--max-degree", "2",
                                    "--cache-dir", dir.path.string()};
  CHECK(run_cli(build, &out, &err) == 0);
  CHECK(fs::exists(dir.path / cli::FileCache::file_name(3, 1)));
  std::vector<std::string> inspect = {"cache", "inspect", "--cache-dir", dir.path.string(),
                                      "--format", "structured"};
  CHECK(run_cli(inspect, &out, &err) == 0);
  auto j = nlohmann::json::parse(out);
  REQUIRE(j["entries"].size() == 2);
  CHECK(j["entries"][0]["valid"] == true);
  std::vector<std::string> clear = {"cache", "clear", "--cache-dir", dir.path.string()};
  CHECK(run_cli(clear, &out, &err) == 0);
  CHECK(run_cli(inspect, &out, &err) == 0);
  CHECK(nlohmann::json::parse(out)["entries"].empty());

  // Cached and uncached verification agree.
  std::string cached, uncached;
  CHECK(run_cli({"verify", "--n", "4", "--max-degree", "2", "--cache-dir", dir.path.string(),
                 "--format", "structured"}, &cached) == 0);
  CHECK(run_cli({"verify", "--n", "4", "--max-degree", "2", "--format", "structured"},
                &uncached) == 0);
  auto a = nlohmann::json::parse(cached), b = nlohmann::json::parse(uncached);
  a.erase("generated_at");
  b.erase("generated_at");
  CHECK(a == b);
}
