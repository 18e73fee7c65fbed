#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "obls.h"

TEST_CASE("version string is set") {
  const char* v = obls_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("sample-size rule through the C boundary") {
  CHECK(obls_required_sample_size(0.9, 0.01, 6) == 134);
  CHECK(obls_required_sample_size(0.9, 0.01, 41) == 1157);
  CHECK(obls_required_sample_size(0.9, 0.01, 0) == -1);
  CHECK(std::strlen(obls_last_error()) > 0);
  CHECK(obls_required_sample_size(1.5, 0.01, 6) == -1);
}

TEST_CASE("index-set cardinality through the C boundary") {
  CHECK(obls_index_set_size("total_degree", 1, 5) == 6);
  CHECK(obls_index_set_size("hyperbolic_cross", 2, 9) == 27);
  CHECK(obls_index_set_size("hyperbolic_cross", 4, 13) == 153);
  CHECK(obls_index_set_size("simplex", 2, 9) == -1);
  CHECK(obls_index_set_size(nullptr, 2, 9) == -1);
  CHECK(obls_index_set_size("total_degree", 0, 9) == -1);
}

TEST_CASE("design command returns CSV and parsable JSON") {
  obls_result* res = nullptr;
  const char* cfg = R"({"measure":"uniform","p":4,"method":"cbls","n":60})";
  REQUIRE(obls_run("design", cfg, 7, &res) == OBLS_OK);
  REQUIRE(res != nullptr);
  const char* csv = obls_result_csv(res);
  REQUIRE(csv != nullptr);
  CHECK(std::string(csv).rfind("x1,weight\n", 0) == 0);
  nlohmann::json j = nlohmann::json::parse(obls_result_json(res));
  CHECK(j.at("method").get<std::string>() == "cBLS");
  CHECK(j.at("points").size() == 60);
  CHECK(j.at("metadata").at("final_Z").get<double>() <= 0.9);
  obls_result_free(res);
}

TEST_CASE("same seed reproduces the design") {
  const char* cfg = R"({"measure":"gaussian","p":3,"method":"owls","n":25})";
  obls_result *a = nullptr, *b = nullptr;
  REQUIRE(obls_run("design", cfg, 42, &a) == OBLS_OK);
  REQUIRE(obls_run("design", cfg, 42, &b) == OBLS_OK);
  CHECK(std::string(obls_result_csv(a)) == obls_result_csv(b));
  obls_result_free(a);
  obls_result_free(b);
}

TEST_CASE("unknown command is an invalid argument") {
  obls_result* res = nullptr;
  CHECK(obls_run("frobnicate", "{}", 0, &res) == OBLS_INVALID_ARGUMENT);
  CHECK(res == nullptr);
  CHECK(std::string(obls_last_error()).find("frobnicate") != std::string::npos);
}

TEST_CASE("malformed JSON is an invalid argument") {
  obls_result* res = nullptr;
  CHECK(obls_run("design", "{not json", 0, &res) == OBLS_INVALID_ARGUMENT);
  CHECK(res == nullptr);
  CHECK(std::strlen(obls_last_error()) > 0);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  obls_result* res = nullptr;
  CHECK(obls_run(nullptr, "{}", 0, &res) == OBLS_INVALID_ARGUMENT);
  CHECK(obls_run("design", nullptr, 0, &res) == OBLS_INVALID_ARGUMENT);
  CHECK(obls_run("design", "{}", 0, nullptr) == OBLS_INVALID_ARGUMENT);
  CHECK(std::string(obls_result_csv(nullptr)).empty());
  CHECK(std::string(obls_result_json(nullptr)).empty());
  obls_result_free(nullptr);  // must be a no-op
}

TEST_CASE("experiment command round-trips a small configuration") {
  obls_result* res = nullptr;
  const char* cfg = R"({
    "example": "u2", "methods": ["owls"], "degrees": [3],
    "replicates": 2, "n_test": 100
  })";
  REQUIRE(obls_run("experiment", cfg, 3, &res) == OBLS_OK);
  nlohmann::json j = nlohmann::json::parse(obls_result_json(res));
  CHECK(j.at("records").size() == 2);
  CHECK(j.contains("summary"));
  obls_result_free(res);
}
