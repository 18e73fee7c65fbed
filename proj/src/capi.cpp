#include "obls.h"

#include <string>

#include "obls/experiments.hpp"

struct obls_result {
  std::string csv;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
obls_status guarded(F&& f) {
  try {
    f();
    return OBLS_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return OBLS_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return OBLS_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OBLS_RUNTIME_ERROR;
  }
}

}  // namespace

extern "C" {

obls_status obls_run(const char* command, const char* config_json, uint64_t seed,
                     obls_result** out) {
  if (out) *out = nullptr;
  if (!command || !config_json || !out) {
    g_last_error = "obls_run: null argument";
    return OBLS_INVALID_ARGUMENT;
  }
  return guarded([&] {
    nlohmann::json config = nlohmann::json::parse(config_json);
    obls::CommandResult r = obls::run_command(command, config, seed);
    auto* result = new obls_result;
    result->csv = std::move(r.csv);
    result->json = r.json.dump(2);
    *out = result;
  });
}

const char* obls_result_csv(const obls_result* result) {
  return result ? result->csv.c_str() : "";
}

const char* obls_result_json(const obls_result* result) {
  return result ? result->json.c_str() : "";
}

void obls_result_free(obls_result* result) { delete result; }

const char* obls_last_error(void) { return g_last_error.c_str(); }

long obls_required_sample_size(double delta, double eta, long m) {
  long value = -1;
  guarded([&] { value = obls::required_sample_size(delta, eta, m); });
  return value;
}

long obls_index_set_size(const char* rule, int dimension, int degree) {
  long value = -1;
  if (!rule) {
    g_last_error = "obls_index_set_size: null rule";
    return -1;
  }
  guarded([&] {
    value = static_cast<long>(
        obls::build_index_set(dimension, obls::index_rule_from_string(rule), degree).size());
  });
  return value;
}

const char* obls_version(void) { return "0.1.0"; }

}  // extern "C"
