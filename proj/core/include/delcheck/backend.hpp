#pragma once

#include <memory>
#include <string>
#include <vector>

#include "delcheck/prompt.hpp"

namespace delcheck {

// Live mode posts chat completions to `endpoint` with the key read from the
// environment variable `api_key_env` (the key itself is never logged or
// echoed). Replay mode answers from a line-delimited id/response fixture.
struct BackendConfig {
  std::string mode = "replay";  // "live" or "replay"
  std::string endpoint;
  std::string model;
  double temperature = 0.0;
  std::string api_key_env;
  int retry_limit = 2;
  int backoff_ms = 250;
  std::string fixture_path;
};

// Mode/field consistency; throws ConfigError.
void validate_backend_config(const BackendConfig& config);

class Backend {
 public:
  virtual ~Backend() = default;

  // Returns the model's reply for one prompt. The record id selects the
  // fixture entry in replay mode and is ignored in live mode.
  virtual std::string complete(const std::vector<Message>& messages,
                               const std::string& record_id) = 0;
};

std::unique_ptr<Backend> make_backend(const BackendConfig& config);

}  // namespace delcheck
