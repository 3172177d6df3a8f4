#include "doctest.h"

#include "ordterm/cli.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ordterm;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("ordterm_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

const char* kAdd = "(rec (p 1 1) (comp s (p 2 3)))";
const char* kMult = "(rec z (comp (rec (p 1 1) (comp s (p 2 3))) (p 2 3) (p 3 3)))";

}  // namespace

TEST_CASE("ordinal expression evaluator") {
  CHECK(cli::eval_ordinal_expr("w # 1").to_string() == "w+1");
  CHECK(cli::eval_ordinal_expr("1 + w").to_string() == "w");
  CHECK(cli::eval_ordinal_expr("exp(2, w*2)").to_string() == "w^2");
  CHECK(cli::eval_ordinal_expr("0 # 0").to_string() == "0");
  CHECK(cli::eval_ordinal_expr("(w+1) #* 3").to_string() == "w*3+3");
  CHECK(cli::eval_ordinal_expr("w^(w) # w^2*3").to_string() == "w^(w)+w^2*3");
}

TEST_CASE("ord") {
  CHECK(run_cli({"ord", "w # 1"}).out == "w+1\n");
  CHECK(run_cli({"ord", "exp(2,", "w*2)"}).out == "w^2\n");
  CHECK(run_cli({"ord", "0 # 0"}).out == "0\n");
  CHECK(run_cli({"ord", "w +"}).code == cli::kUsage);
  const auto j = nlohmann::json::parse(run_cli({"--format", "structured", "ord", "w # 1"}).out);
  CHECK(j["ordinal"] == "w+1");
}

TEST_CASE("tree-height") {
  CHECK(run_cli({"tree-height", "--k", "2", "3"}).out == "7\n");
  CHECK(run_cli({"tree-height", "--k", "1", "w*5+3"}).out == "w*5+3\n");
  CHECK(run_cli({"--k", "2", "tree-height", "w+1"}).out == "w*2+1\n");
  CHECK(run_cli({"tree-height", "--k", "2", "3", "--tree", "(2 _ _)"}).out == "6\n");
  CHECK(run_cli({"tree-height", "--k", "2", "3", "--tree", "(3 _ _)"}).code == cli::kUsage);
  CHECK(run_cli({"tree-height", "w*0"}).code == cli::kUsage);
}

TEST_CASE("embed") {
  const auto r = run_cli({"--format", "structured", "embed", "[[1,1],[0,1]]"});
  CHECK(r.code == cli::kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["f_star"] == "w*8+5");
  CHECK(j["f_star_vec"] == nlohmann::json::array({8, 5}));
  CHECK(j["labelled_tree"] == "(w+2 (w+1 _ _) _)");
  CHECK(run_cli({"embed", "[[1,1],[1,1]]"}).code == cli::kUsage);
}

TEST_CASE("bound") {
  const std::string file = temp_file("bound.json", R"({"k": 2, "values": [[1,1],[1,0],[0,5],[0,4]]})");
  const auto r = run_cli({"--format", "structured", "bound", file});
  REQUIRE(r.code == cli::kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["witness"] == 3);
  CHECK(j["bound"].get<std::uint64_t>() >= 3);
  CHECK(run_cli({"bound", file, "--max-bound", "2"}).code == cli::kBudget);
  const std::string open = temp_file("bound_bad.json", R"({"k": 2})");
  CHECK(run_cli({"bound", open}).code == cli::kUsage);
  std::remove(file.c_str());
  std::remove(open.c_str());
}

TEST_CASE("compile and run") {
  const auto c = run_cli({"--format", "structured", "compile", kAdd});
  REQUIRE(c.code == cli::kPass);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["result_var"] == "w");
  CHECK(j["invariant"].size() == 7);

  const auto r = run_cli({"run", kAdd, "2", "3"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.rfind("result 5\n", 0) == 0);
  CHECK(run_cli({"run", kAdd, "2"}).code == cli::kUsage);
  CHECK(run_cli({"run", "(rec z", "2"}).code == cli::kUsage);
  CHECK(run_cli({"--max-steps", "5", "run", kAdd, "2", "3"}).code == cli::kBudget);
}

TEST_CASE("pipeline") {
  const std::string add_file = temp_file("add.pr", std::string("; addition\n") + kAdd + "\n");
  const auto a = run_cli({"--format", "structured", "pipeline", add_file, "2", "3"});
  CHECK(a.code == cli::kPass);
  const auto ja = nlohmann::json::parse(a.out);
  CHECK(ja["result"] == 5);
  CHECK(ja["oracle"] == 5);
  CHECK(ja["invariant"]["violation_count"] == 0);
  CHECK(ja["bound_holds"] == true);
  CHECK(ja["passed"] == true);

  const auto m = run_cli({"pipeline", kMult, "2", "2"});
  CHECK(m.code == cli::kPass);
  CHECK(m.out.find("result 4 oracle 4") != std::string::npos);

  // Replace the cross-iteration certificate with a constant.
  auto compiled = nlohmann::json::parse(run_cli({"--format", "structured", "compile", kAdd}).out)["invariant"];
  for (auto& rel : compiled)
    if (rel["name"] == "T2") rel["rank"] = "3";
  const std::string tampered = temp_file("tampered.json", compiled.dump());
  const auto t = run_cli({"--invariant", tampered, "pipeline", add_file, "2", "3"});
  CHECK(t.code == cli::kViolation);
  CHECK(t.out.find("RankNotDecreasing") != std::string::npos);
  CHECK(run_cli({"check", add_file, "2", "3", "--invariant", tampered}).code == cli::kViolation);
  CHECK(run_cli({"check", add_file, "2", "3"}).code == cli::kPass);

  std::remove(add_file.c_str());
  std::remove(tampered.c_str());
}

TEST_CASE("structured output is deterministic") {
  const std::vector<std::string> args{"--format", "structured", "pipeline", kMult, "2", "1"};
  CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
  CHECK(run_cli({"--format", "xml", "ord", "1"}).code == cli::kUsage);
  CHECK(run_cli({"--help"}).code == cli::kPass);
}
