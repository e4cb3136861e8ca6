#include <doctest.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <sstream>

#include "commands.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = voabranch::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("decompose document") {
    const Result r = run({"decompose", "--rank", "4", "--order", "8"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["rank"] == 4);
    CHECK(doc["parity"] == "plus");
    CHECK(doc["cutoff"] == "8");
    CHECK(doc["verified"] == true);
    const auto& first = doc["summands"][0];
    CHECK(first["h"] == json::array({"0", "0", "0", "0", "0"}));
    CHECK(first["c"] == json::array({"1/2", "7/10", "4/5", "1", "1"}));
    CHECK(first["mult"] == 1);
    CHECK(first["min_weight"] == "0");
  }

  TEST_CASE("decompose is deterministic and honours flags") {
    const Result a = run({"decompose", "--rank", "4", "--order", "8", "--format", "json"});
    const Result b = run({"decompose", "--rank", "4", "--order", "8", "--format", "json"});
    CHECK(a.out == b.out);
    const Result minus = run({"decompose", "--rank", "3", "--order", "5/2", "--parity", "minus"});
    CHECK(minus.code == 0);
    CHECK(json::parse(minus.out)["cutoff"] == "5/2");
    const Result skip = run({"decompose", "--rank", "3", "--no-verify"});
    CHECK(skip.code == 0);
    CHECK(json::parse(skip.out)["verified"].is_null());
    const Result tsv = run({"decompose", "--rank", "3", "--order", "1", "--format", "tsv"});
    CHECK(tsv.out.rfind("min_weight\tmult\th1\th2\th3\th4\n0\t1\t0\t0\t0\t0\n", 0) == 0);
  }

  TEST_CASE("environment default cutoff") {
    setenv("VOABRANCH_ORDER", "3/2", 1);
    const Result r = run({"decompose", "--rank", "3"});
    unsetenv("VOABRANCH_ORDER");
    CHECK(json::parse(r.out)["cutoff"] == "3/2");
    CHECK(json::parse(run({"decompose", "--rank", "3", "--no-verify"}).out)["cutoff"] == "8");
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run({"decompose", "--rank", "2"}).code == 2);
    CHECK(run({"decompose"}).code == 2);
    CHECK(run({"decompose", "--rank", "4", "--format", "xml"}).code == 2);
    CHECK(run({"decompose", "--rank", "4", "--parity", "both"}).code == 2);
    CHECK(run({"decompose", "--rank", "4", "--order", "0"}).code == 2);
    CHECK(run({"decompose", "--rank", "4", "--order", "x"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"branch", "--halfnorm", "3", "--coset", "6"}).code == 2);
    CHECK(run({"theta", "--rank", "5", "--coset", ";3"}).code == 2);
  }

  TEST_CASE("cosets census") {
    const Result r = run({"cosets", "--rank", "4"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["count"] == 12);
    CHECK(doc["index"] == 12);
    CHECK(doc["order_of_alpha2"] == 12);
    CHECK(doc["lambda1"] == json::array({";0", ";6"}));
    CHECK(doc["labels"][1]["partner"] == ";11");
    CHECK(doc["labels"][6]["a"] == json::array({12, 4}));
  }

  TEST_CASE("branch suite") {
    const Result r = run({"branch", "--halfnorm", "3", "--coset", "3", "--order", "20"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["verified"] == true);
    CHECK(doc["lists"].size() == 3);
    CHECK(doc["lists"][0]["case"] == "5.6");
    CHECK(doc["lists"][0]["entries"][0]["h"] == "3/4");
    CHECK(doc["lists"][2]["sign"] == "full");
    CHECK(doc["lists"][2]["entries"][0]["mult"] == 2);
  }

  TEST_CASE("conformal suite") {
    const Result r = run({"conformal", "--rank", "5"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["verified"] == true);
    REQUIRE(doc["rows"].size() == 6);
    const std::vector<std::string> charges{"1/2", "7/10", "4/5", "1", "1", "1"};
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(doc["rows"][i]["central_charge"] == charges[i]);
      CHECK(doc["tilde_rows"][i]["central_charge"] == charges[i]);
    }
  }

  TEST_CASE("theta dump") {
    const Result r = run({"theta", "--rank", "4", "--coset", ";6", "--order", "4"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["coset"] == "D+;6");
    CHECK(doc["theta"]["terms"] == json::array({json::array({"4", "4"})}));
    const Result whole = run({"theta", "--rank", "3", "--order", "1", "--format", "tsv"});
    CHECK(whole.out == "exponent\tcoefficient\n0\t1\n1\t6\n");
  }
}
