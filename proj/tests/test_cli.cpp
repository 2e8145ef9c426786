#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Run the installed CLI with a shell-quoted argument string.
RunResult run_cli(const std::string& args) {
  const std::string err_path = "/tmp/voa_cli_test_err.txt";
  const std::string command = std::string(VOA_CLI_PATH) + " " + args + " 2>" + err_path;
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t bytes = 0;
  while ((bytes = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.out.append(buffer, bytes);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path, std::ios::binary);
  std::ostringstream err_buffer;
  err_buffer << err.rdbuf();
  result.err = err_buffer.str();
  std::remove(err_path.c_str());
  return result;
}

struct TempFile {
  std::string path;

  TempFile(const std::string& name, const std::string& contents)
      : path("/tmp/voa_cli_" + name) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

const char* kImpressions =
    R"({"user": "H", "post_id": "a", "publisher": "P", "published_at": "2018-09-27T09:00:00Z", "impressed_at": "2018-09-27T10:00:00Z", "position": 1})"
    "\n"
    R"({"user": "H", "post_id": "b", "publisher": "P", "published_at": "2018-09-27T09:30:00Z", "impressed_at": "2018-09-27T10:00:00Z", "position": 2})"
    "\n"
    R"({"user": "H", "post_id": "c", "publisher": "P", "published_at": "2018-09-27T10:30:00Z", "impressed_at": "2018-09-27T11:00:00Z", "position": 1})"
    "\n"
    R"({"user": "R", "post_id": "a", "publisher": "P", "published_at": "2018-09-27T09:00:00Z", "impressed_at": "2018-09-27T10:00:00Z", "position": 1})"
    "\n"
    R"({"user": "R", "post_id": "d", "publisher": "P", "published_at": "2018-09-27T09:10:00Z", "impressed_at": "2018-09-27T10:00:00Z", "position": 2})"
    "\n";

}  // namespace

TEST_CASE("cli: help exits zero") {
  const RunResult result = run_cli("--help");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("eval") != std::string::npos);
  CHECK(result.err.empty());
}

TEST_CASE("cli: eval emits the closed form as JSON") {
  const RunResult result = run_cli("eval --lambda 4.487 --mu 1 --k 10 --variant fixed");
  REQUIRE(result.exit_code == 0);
  CHECK(result.err.empty());
  const json object = json::parse(result.out);
  CHECK(object["voa"].get<double>() == doctest::Approx(3.8869780156392998).epsilon(1e-12));
  CHECK(object["fill_probability"].get<double>() ==
        doctest::Approx(0.1337245340674616).epsilon(1e-12));
  CHECK(object["variant"] == "fixed");
}

TEST_CASE("cli: eval variants") {
  const RunResult zero = run_cli("eval --lambda 0 --mu 1 --k 10");
  REQUIRE(zero.exit_code == 0);
  CHECK(json::parse(zero.out)["voa"].get<double>() == 0.0);

  const RunResult poisson = run_cli("eval --variant poisson --lambda 4.487 --mu 1 --alpha 10");
  REQUIRE(poisson.exit_code == 0);
  CHECK(json::parse(poisson.out)["voa"].get<double>() ==
        doctest::Approx(3.761798109828982).epsilon(1e-12));

  const RunResult det =
      run_cli("eval --variant deterministic --lambda 1 --interval-hours 1 --k 2");
  REQUIRE(det.exit_code == 0);
  CHECK(json::parse(det.out)["voa"].get<double>() ==
        doctest::Approx(0.89636167648567304).epsilon(1e-12));

  const RunResult average = run_cli("eval --variant average --lambda 4.487 --mu 1 --alpha 0.5");
  REQUIRE(average.exit_code == 0);
  CHECK(json::parse(average.out)["voa"].get<double>() ==
        doctest::Approx(0.42942436325193386).epsilon(1e-12));
}

TEST_CASE("cli: scalar results render as single-row CSV on request") {
  const RunResult result = run_cli("eval --lambda 4.487 --mu 1 --k 10 --format csv");
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(header == "variant,lambda,mu,k,voa,fill_probability");
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(row.begin(), row.end(), ','));
  CHECK(row.find("3.88697801564") != std::string::npos);
}

TEST_CASE("cli: optimize reproduces the published optimal rates") {
  const RunResult k2 = run_cli("optimize --lambda 4.487 --k 2 --cost 1");
  REQUIRE(k2.exit_code == 0);
  const json object = json::parse(k2.out);
  CHECK(object["mu_star"].get<double>() == doctest::Approx(1.1663).epsilon(5e-4));
  CHECK_FALSE(object["clamped"].get<bool>());

  const RunResult k20 = run_cli("optimize --lambda 4.487 --k 20 --cost 1");
  CHECK(json::parse(k20.out)["mu_star"].get<double>() == doctest::Approx(0.688).epsilon(5e-4));

  const RunResult clamped = run_cli("optimize --lambda 4.487 --k 1 --cost 1");
  CHECK(json::parse(clamped.out)["clamped"].get<bool>());
}

TEST_CASE("cli: missing required flag is a usage error on stderr") {
  const RunResult result = run_cli("optimize --k 2 --cost 1");
  CHECK(result.exit_code == 2);
  CHECK_FALSE(result.err.empty());
  CHECK(result.out.empty());
}

TEST_CASE("cli: domain errors map to a distinct exit code") {
  const RunResult result = run_cli("eval --lambda 4.487 --mu 0 --k 10");
  CHECK(result.exit_code == 3);
  CHECK(result.err.find("mu") != std::string::npos);
}

TEST_CASE("cli: unknown flag fails with a diagnostic") {
  const RunResult result = run_cli("eval --lambda 1 --mu 1 --k 1 --frobnicate 3");
  CHECK(result.exit_code == 2);
  CHECK_FALSE(result.err.empty());
}

TEST_CASE("cli: simulate is seed-reproducible byte for byte") {
  const std::string args =
      "simulate --lambda 4.487 --mu 1 --k 10 --accesses 2000 --rounds 5 --seed 11";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json object = json::parse(a.out);
  CHECK(object["rounds"].get<int>() == 5);
  CHECK(object["mean"].get<double>() > 3.0);
  CHECK(object["mean"].get<double>() < 5.0);

  const RunResult missing_seed =
      run_cli("simulate --lambda 4.487 --mu 1 --k 10 --accesses 2000 --rounds 5");
  CHECK(missing_seed.exit_code == 2);
}

TEST_CASE("cli: synthetic sweep emits the documented CSV") {
  const std::string args =
      "sweep --inverse-mu 1:24:1 --lambda 4.487 --k 10 --rounds 3 --seed 7 "
      "--period-hours 336";
  const RunResult a = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.err.empty());
  std::istringstream lines(a.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "inverse_mu,model_voa,sim_mean,sim_std,rounds");
  int rows = 0;
  int commas_expected = 4;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == commas_expected);
    ++rows;
  }
  CHECK(rows == 24);

  const RunResult b = run_cli(args);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: analytic sweeps for voa, utility and mu-star") {
  const RunResult voa_k = run_cli("sweep --k 1:5:1 --rho 10");
  REQUIRE(voa_k.exit_code == 0);
  std::istringstream lines(voa_k.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "k,model_voa");

  const RunResult utility = run_cli("sweep --metric utility --mu 0.5:2:0.5 --lambda 4.487 "
                                    "--k 10 --cost 1");
  REQUIRE(utility.exit_code == 0);
  CHECK(utility.out.find("mu,utility") == 0);

  const RunResult mu_star =
      run_cli("sweep --metric mu-star --k 1:20:1 --lambda 4.487 --cost 1 --format json");
  REQUIRE(mu_star.exit_code == 0);
  const json rows = json::parse(mu_star.out);
  REQUIRE(rows.size() == 20);
  CHECK(rows[1]["mu_star"].get<double>() == doctest::Approx(1.1663).epsilon(5e-4));

  const RunResult no_range = run_cli("sweep --lambda 4.487 --k 10");
  CHECK(no_range.exit_code == 2);
}

TEST_CASE("cli: snapshot-voa, overlap and ecdf on a small log") {
  const TempFile log("impressions.jsonl", kImpressions);

  const RunResult csv = run_cli("snapshot-voa --impressions " + log.path);
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.find("user,snapshot,taken_at,novel_impressions\n") == 0);
  CHECK(csv.out.find("H,0,2018-09-27T10:00:00Z,2") != std::string::npos);
  CHECK(csv.out.find("H,1,2018-09-27T11:00:00Z,1") != std::string::npos);
  CHECK(csv.out.find("R,0,2018-09-27T10:00:00Z,2") != std::string::npos);

  const RunResult truncated =
      run_cli("snapshot-voa --impressions " + log.path + " --user H --truncate-k 1 --format json");
  REQUIRE(truncated.exit_code == 0);
  const json users = json::parse(truncated.out);
  REQUIRE(users.size() == 1);
  CHECK(users[0]["user"] == "H");
  CHECK(users[0]["per_snapshot"][0]["novel"].get<int>() == 1);

  const RunResult pair =
      run_cli("overlap --impressions " + log.path + " --user-x H --user-y R");
  REQUIRE(pair.exit_code == 0);
  const json table = json::parse(pair.out);
  CHECK(table["both"].get<int>() == 1);
  CHECK(table["only_x"].get<int>() == 2);
  CHECK(table["only_y"].get<int>() == 1);
  CHECK(table["universe_size"].get<int>() == 4);
  CHECK(table["coverage_x_over_y"].get<double>() == doctest::Approx(0.5));

  const RunResult report = run_cli("overlap --impressions " + log.path);
  REQUIRE(report.exit_code == 0);
  CHECK(report.out.find("user_x,user_y,both,only_x,only_y,neither,universe_size,"
                        "coverage_x_over_y,pairwise_overlap\n") == 0);

  const RunResult ecdf = run_cli("ecdf --impressions " + log.path);
  REQUIRE(ecdf.exit_code == 0);
  CHECK(ecdf.out == "viewer_count,cumulative_fraction\n1,0.75\n2,1\n");

  const RunResult unknown =
      run_cli("overlap --impressions " + log.path + " --user-x H --user-y nobody");
  CHECK(unknown.exit_code == 7);
  CHECK(unknown.err.find("nobody") != std::string::npos);
}

TEST_CASE("cli: trace-info summary and daily CSV") {
  const TempFile trace("posts.jsonl",
                       R"({"id": "a", "publisher": "P1", "created_at": "2018-09-27T00:00:00Z"})"
                       "\n"
                       R"({"id": "b", "publisher": "P2", "created_at": "2018-09-28T12:00:00Z"})"
                       "\n");
  const RunResult info = run_cli("trace-info --posts " + trace.path);
  REQUIRE(info.exit_code == 0);
  const json summary = json::parse(info.out);
  CHECK(summary["post_count"].get<int>() == 2);
  CHECK(summary["publisher_count"].get<int>() == 2);
  CHECK(summary["time_span_hours"].get<double>() == doctest::Approx(36.0));

  const RunResult daily = run_cli("trace-info --posts " + trace.path + " --format csv");
  REQUIRE(daily.exit_code == 0);
  CHECK(daily.out == "day,posts\n2018-09-27,1\n2018-09-28,1\n");

  const RunResult missing = run_cli("trace-info --posts /nonexistent.jsonl");
  CHECK(missing.exit_code == 5);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("cli: --out writes the artifact to a file") {
  const std::string out_path = "/tmp/voa_cli_out.csv";
  const RunResult result =
      run_cli("sweep --k 1:3:1 --rho 10 --out " + out_path);
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.empty());
  std::ifstream file(out_path, std::ios::binary);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  CHECK(buffer.str().find("k,model_voa\n") == 0);
  std::remove(out_path.c_str());
}

TEST_CASE("cli: malformed input yields the parse exit code") {
  const TempFile bad("bad_posts.jsonl", "{\"id\": \"a\"}\n");
  const RunResult result = run_cli("trace-info --posts " + bad.path);
  CHECK(result.exit_code == 4);
  CHECK(result.err.find("line 1") != std::string::npos);
}
