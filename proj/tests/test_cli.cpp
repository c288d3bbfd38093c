#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "test_support.hpp"
#include "vadecon/io/csv.hpp"

namespace fs = std::filesystem;

namespace {

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(VADECON_BIN) + " " + args + " >" +
                          q(log) + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

fs::path fixtures() { return fs::path(VADECON_FIXTURES_DIR); }

std::size_t line_count(const fs::path& p) {
  const std::string text = vadecon::io::read_text_file(p);
  std::size_t n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("version and help exit cleanly") {
  testsupport::TempDir tmp;
  CHECK(run_cli("--version", tmp.path() / "v.log") == 0);
  CHECK(run_cli("--help", tmp.path() / "h.log") == 0);
  CHECK(run_cli("score --help", tmp.path() / "sh.log") == 0);
}

TEST_CASE("usage errors exit with code 2") {
  testsupport::TempDir tmp;
  // no subcommand
  CHECK(run_cli("", tmp.path() / "none.log") == 2);
  CHECK(run_cli("frobnicate", tmp.path() / "unknown.log") == 2);
  CHECK(run_cli("score --no-such-flag", tmp.path() / "flag.log") == 2);
}

TEST_CASE("score writes one row per document") {
  testsupport::TempDir tmp;
  const fs::path out = tmp.path() / "out";
  const int code = run_cli(
      "score --manifest " + q(fixtures() / "manifest.csv") + " --lexicon " +
          q(fixtures() / "lexicon.csv") + " --corpus " + q(fixtures()) +
          " --out " + q(out),
      tmp.path() / "score.log");
  CHECK(code == 0);
  const fs::path scored = out / "scored.csv";
  REQUIRE(fs::exists(scored));
  CHECK(line_count(scored) == 45);  // header + 44 documents
  const std::string text = vadecon::io::read_text_file(scored);
  CHECK(text.rfind("id,source,date,valence,arousal,dominance,coverage\n", 0) ==
        0);
}

TEST_CASE("adf covers every source, dimension, and spec") {
  testsupport::TempDir tmp;
  const fs::path out = tmp.path() / "out";
  const int code =
      run_cli("adf --config " + q(fixtures() / "config.json") + " --out " +
                  q(out),
              tmp.path() / "adf.log");
  CHECK(code == 0);
  const fs::path results = out / "adf_results.json";
  REQUIRE(fs::exists(results));
  auto j = nlohmann::json::parse(vadecon::io::read_text_file(results));
  REQUIRE(j.is_array());
  CHECK(j.size() == 12);  // 2 sources x 3 dimensions x 2 deterministic specs
  for (const auto& entry : j) {
    CHECK(entry.contains("series"));
    CHECK(entry.contains("tau_statistic"));
    CHECK(entry.contains("lags_used"));
  }
}

TEST_CASE("report produces the full bundle") {
  testsupport::TempDir tmp;
  const fs::path out = tmp.path() / "out";
  const int code =
      run_cli("report --config " + q(fixtures() / "config.json") + " --out " +
                  q(out),
              tmp.path() / "report.log");
  CHECK(code == 0);
  CHECK(fs::exists(out / "run_manifest.json"));
  CHECK(fs::exists(out / "scored.csv"));
  CHECK(fs::exists(out / "comparison.json"));
}

TEST_CASE("invalid input exits with code 2") {
  testsupport::TempDir tmp;
  const fs::path lex = tmp.path() / "broken_lexicon.csv";
  vadecon::io::write_text_file(lex, "word,valence\nhappy,9\n");
  const int code = run_cli(
      "score --manifest " + q(fixtures() / "manifest.csv") + " --lexicon " +
          q(lex) + " --corpus " + q(fixtures()) + " --out " +
          q(tmp.path() / "out"),
      tmp.path() / "badlex.log");
  CHECK(code == 2);
}

TEST_CASE("missing corpus file exits with code 3") {
  testsupport::TempDir tmp;
  const fs::path manifest = tmp.path() / "manifest.csv";
  vadecon::io::write_text_file(
      manifest, "file,date,source\nno_such_doc.txt,2020-01-05,ECB\n");
  const int code = run_cli(
      "score --manifest " + q(manifest) + " --lexicon " +
          q(fixtures() / "lexicon.csv") + " --corpus " + q(tmp.path()) +
          " --out " + q(tmp.path() / "out"),
      tmp.path() / "missing.log");
  CHECK(code == 3);
}

TEST_CASE("degenerate statistics exit with code 4") {
  testsupport::TempDir tmp;
  // a constant corpus: one identical document per month for 18 months
  std::string manifest = "file,date,source\n";
  for (int i = 0; i < 18; ++i) {
    const int year = 2020 + i / 12;
    const int month = 1 + i % 12;
    char name[32];
    std::snprintf(name, sizeof(name), "doc_%02d.txt", i);
    char date[16];
    std::snprintf(date, sizeof(date), "%04d-%02d-10", year, month);
    vadecon::io::write_text_file(tmp.path() / name, "steady steady steady\n");
    manifest += std::string(name) + "," + date + ",ECB\n";
  }
  vadecon::io::write_text_file(tmp.path() / "manifest.csv", manifest);

  const int code = run_cli(
      "adf --manifest " + q(tmp.path() / "manifest.csv") + " --lexicon " +
          q(fixtures() / "lexicon.csv") + " --corpus " + q(tmp.path()) +
          " --out " + q(tmp.path() / "out"),
      tmp.path() / "const.log");
  CHECK(code == 4);
}
