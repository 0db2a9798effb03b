#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the installed binary with stdout/stderr captured to temp files.
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path base = fs::temp_directory_path();
  const fs::path outp = base / ("zcli_out_" + std::to_string(++counter));
  const fs::path errp = base / ("zcli_err_" + std::to_string(counter));
  const std::string cmd = std::string(ZCURVE_CLI_PATH) + " " + args + " > " +
                          outp.string() + " 2> " + errp.string();
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(outp);
  r.err = slurp(errp);
  fs::remove(outp);
  fs::remove(errp);
  return r;
}

std::string first_line(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("eval emits one CSV row with the requested columns") {
  CliResult r = run_cli("eval --t 150");
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "t,z,zprime,theta,theta1");
  CHECK(count_lines(r.out) == 2);

  CliResult z = run_cli("eval --t 150 --what z");
  CHECK(first_line(z.out) == "t,z,zprime");
  CHECK(z.out.find("\n150,") != std::string::npos);  // t renders as plain "150"

  CliResult th = run_cli("eval --t 150 --what theta");
  CHECK(first_line(th.out) == "t,theta,theta1");
}

TEST_CASE("eval json carries the full evaluation record") {
  CliResult r = run_cli("--format json eval --t 150");
  // global flags may also be given per subcommand; accept either spelling
  if (r.code != 0) r = run_cli("eval --t 150 --format json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "eval");
  CHECK(j["schema_version"] == "1");
  CHECK(j["t"] == 150.0);
  CHECK(j.contains("z"));
  CHECK(j.contains("zprime"));
  CHECK(j.contains("theta"));
  CHECK(j.contains("theta1"));
}

TEST_CASE("domain violations exit with code 1 and explain themselves") {
  CliResult r = run_cli("eval --t 50");
  CHECK(r.code == 1);
  CHECK(r.err.find("t >= 100") != std::string::npos);
  CHECK(r.out.empty());

  CliResult w = run_cli("zeros --T 100 --H -5");
  CHECK(w.code == 1);

  CliResult m = run_cli("zeros --H 10");  // missing required --T
  CHECK(m.code == 1);

  CliResult u = run_cli("frobnicate");
  CHECK(u.code == 1);
}

TEST_CASE("zeros and extrema emit one row per located point") {
  CliResult r = run_cli("zeros --T 100 --H 10");
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "t,index,residual");
  CHECK(count_lines(r.out) == 5);  // header + 4 zeros

  CliResult e = run_cli("extrema --T 100 --H 10");
  CHECK(e.code == 0);
  CHECK(first_line(e.out) == "t,z_value,left_zero,right_zero");
  CHECK(count_lines(e.out) == 4);  // header + 3 interior extrema
}

TEST_CASE("gram solves a single index or tabulates a window") {
  CliResult one = run_cli("gram --nu 0 --tau 1.5707963267948966");
  CHECK(one.code == 0);
  CHECK(first_line(one.out) == "nu,tau,t");
  CHECK(one.out.find("\n0,") != std::string::npos);
  CHECK(one.out.find("23.17") != std::string::npos);

  CliResult win = run_cli("gram --T 1000 --H 100");
  CHECK(win.code == 0);
  CHECK(count_lines(win.out) >= 80);  // ~81 gram-like points
}

TEST_CASE("arclen reports the quadrature result") {
  CliResult r = run_cli("arclen --T 100 --H 10 --tol 1e-9");
  CHECK(r.code == 0);
  CHECK(first_line(r.out) ==
        "value,abs_error_estimate,subdivisions,kink_points_used");
  CHECK(r.out.find("22.0330596") != std::string::npos);
}

TEST_CASE("verify theorem honors the window hypothesis flag") {
  CliResult strict = run_cli("verify theorem --T 10000 --H 100");
  CHECK(strict.code == 1);
  CHECK(strict.err.find("allow") != std::string::npos);

  CliResult wide = run_cli("verify theorem --T 10000 --H 100 --allow-wide");
  CHECK(wide.code == 0);
  auto j = nlohmann::json::parse(wide.out);
  CHECK(j["kind"] == "theorem_report");
  CHECK(j["counts"]["zeros"] == 118);
  double theta = j["theta"].get<double>();
  CHECK(theta > 0.0);
  CHECK(theta < 1.0);
}

TEST_CASE("a failed lemma bound exits with code 2") {
  // narrow low window: the |Z'| integral has not yet exhausted its bound
  CliResult r = run_cli("verify lemma3 --T 1000 --H 5.25 --eps 0.05");
  CHECK(r.code == 2);
  CHECK(r.err.find("lemma3-bound") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
  const std::string cmd = "verify theorem --T 10000 --H 100 --allow-wide";
  CliResult a = run_cli(cmd);
  CliResult b = run_cli(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  CliResult c = run_cli("sweep --T-list 1000,2000 --H-rule T^0.24");
  CliResult d = run_cli("sweep --T-list 1000,2000 --H-rule T^0.24");
  CHECK(c.code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("svg output embeds the config hash; timestamp is suppressible") {
  CliResult r = run_cli("eval --T 100 --H 10 --what z --format svg");
  CHECK(r.code == 0);
  CHECK(r.out.find("<svg") != std::string::npos);
  CHECK(r.out.find("<!-- config=") != std::string::npos);
  CHECK(r.out.find("generated=") != std::string::npos);

  CliResult q =
      run_cli("eval --T 100 --H 10 --what z --format svg --no-timestamp");
  CHECK(q.out.find("generated=") == std::string::npos);
  // without the volatile timestamp the plot is reproducible
  CliResult q2 =
      run_cli("eval --T 100 --H 10 --what z --format svg --no-timestamp");
  CHECK(q.out == q2.out);
}

TEST_CASE("outputs can be redirected to a file") {
  const fs::path dir = fs::temp_directory_path() / "zcli_out_dir";
  fs::create_directories(dir);
  const fs::path file = dir / "zeros.csv";
  CliResult r = run_cli("zeros --T 100 --H 10 --out " + file.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(first_line(slurp(file)) == "t,index,residual");
  fs::remove_all(dir);
}

TEST_CASE("cache fills, lists, serves, and clears") {
  const fs::path dir = fs::temp_directory_path() / "zcli_cache_dir";
  fs::remove_all(dir);
  const std::string common = " --T 100 --H 10 --use-cache --cache-dir " +
                             dir.string();

  CliResult first = run_cli("zeros" + common);
  CHECK(first.code == 0);
  bool have_record = false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("zcache_", 0) == 0) have_record = true;
  }
  CHECK(have_record);

  // second run is served from the record and prints the same bytes
  CliResult second = run_cli("zeros" + common);
  CHECK(second.out == first.out);

  CliResult listed = run_cli("cache list --cache-dir " + dir.string());
  CHECK(listed.code == 0);
  CHECK(listed.out.find("zcache_") != std::string::npos);

  CliResult info = run_cli("cache info --format json --cache-dir " +
                           dir.string());
  CHECK(info.code == 0);
  auto j = nlohmann::json::parse(info.out);
  CHECK(j["files"] == 1);

  CliResult cleared = run_cli("cache clear --cache-dir " + dir.string());
  CHECK(cleared.code == 0);
  CliResult empty = run_cli("cache list --cache-dir " + dir.string());
  CHECK(empty.out.find("zcache_") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sweep emits one CSV row per window") {
  CliResult r = run_cli("sweep --T-list 1000,2000 --H-rule T^0.24 --format csv");
  CHECK(r.code == 0);
  CHECK(first_line(r.out) ==
        "T,H,arc_len,twice_sum_local_max,abs_deriv_integral,theta,"
        "ratio_literal,ratio_aligned,findings");
  CHECK(count_lines(r.out) == 3);
  CHECK(r.out.find("\n1000,") != std::string::npos);
  CHECK(r.out.find("\n2000,") != std::string::npos);
}

TEST_CASE("verify trig tabulates the hypothesis ratio") {
  CliResult r = run_cli("verify trig --T 100000 --H 100");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "trig_report");
  CliResult csv = run_cli("verify trig --T 100000 --H 100 --format csv");
  CHECK(first_line(csv.out) == "a,t,ratio");
}
