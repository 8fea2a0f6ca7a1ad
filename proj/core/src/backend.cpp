#include "delcheck/backend.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "delcheck/errors.hpp"
#include "delcheck/util.hpp"

namespace delcheck {

namespace {

using nlohmann::json;

class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(const std::string& fixture_path) {
    std::ifstream in(fixture_path);
    if (!in) throw Error("cannot open fixture '" + fixture_path + "'");
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (trim(line).empty()) continue;
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object()) {
        throw MalformedRecordError(number, "not a structured record");
      }
      auto id = obj.find("id");
      if (id == obj.end()) throw MissingFieldError(number, "id");
      std::string key;
      if (id->is_string()) {
        key = id->get<std::string>();
      } else if (id->is_number_integer()) {
        key = std::to_string(id->get<std::int64_t>());
      } else {
        throw MalformedRecordError(number, "field 'id' is not text");
      }
      auto response = obj.find("response");
      if (response == obj.end()) throw MissingFieldError(number, "response");
      if (!response->is_string()) {
        throw MalformedRecordError(number, "field 'response' is not text");
      }
      responses_[key] = response->get<std::string>();
    }
  }

  std::string complete(const std::vector<Message>&,
                       const std::string& record_id) override {
    auto it = responses_.find(record_id);
    if (it == responses_.end()) throw FixtureMissError(record_id);
    return it->second;
  }

 private:
  std::map<std::string, std::string> responses_;
};

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint '" + endpoint + "' has no scheme");
  }
  auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return SplitUrl{endpoint, "/"};
  }
  return SplitUrl{endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

class LiveBackend : public Backend {
 public:
  explicit LiveBackend(const BackendConfig& config) : config_(config) {
    const char* key = std::getenv(config.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw MissingApiKeyError(config.api_key_env);
    }
    api_key_ = key;
    url_ = split_url(config.endpoint);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url_.base.starts_with("https://")) {
      throw ConfigError("this build lacks TLS support; use an http endpoint");
    }
#endif
  }

  std::string complete(const std::vector<Message>& messages,
                       const std::string&) override {
    json body;
    body["model"] = config_.model;
    body["temperature"] = config_.temperature;
    body["messages"] = json::array();
    for (const Message& m : messages) {
      body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    }
    std::string payload = body.dump();

    std::string detail = "no attempt made";
    for (int attempt = 0; attempt <= config_.retry_limit; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(
            std::chrono::milliseconds(config_.backoff_ms));
      }
      httplib::Client client(url_.base);
      httplib::Headers headers = {
          {"Authorization", "Bearer " + api_key_}};
      auto res = client.Post(url_.path, headers, payload, "application/json");
      if (!res) {
        detail = "transport error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        detail = "HTTP " + std::to_string(res->status);
        continue;
      }
      json reply = json::parse(res->body, nullptr, false);
      if (reply.is_discarded()) {
        detail = "malformed response body";
        continue;
      }
      const json* content = nullptr;
      auto choices = reply.find("choices");
      if (choices != reply.end() && choices->is_array() &&
          !choices->empty() && (*choices)[0].is_object()) {
        const json& first = (*choices)[0];
        auto message = first.find("message");
        if (message != first.end() && message->is_object()) {
          auto text = message->find("content");
          if (text != message->end() && text->is_string()) content = &*text;
        }
      }
      if (content == nullptr) {
        detail = "response has no message content";
        continue;
      }
      return content->get<std::string>();
    }
    throw BackendUnavailableError(detail);
  }

 private:
  BackendConfig config_;
  std::string api_key_;
  SplitUrl url_;
};

}  // namespace

void validate_backend_config(const BackendConfig& config) {
  if (config.mode != "live" && config.mode != "replay") {
    throw ConfigError("backend mode must be live or replay, got '" +
                      config.mode + "'");
  }
  if (config.retry_limit < 0) throw ConfigError("retry limit must be >= 0");
  if (config.backoff_ms < 0) throw ConfigError("backoff must be >= 0");
  if (config.mode == "live") {
    if (config.endpoint.empty()) {
      throw ConfigError("live mode needs an endpoint");
    }
    if (config.model.empty()) {
      throw ConfigError("live mode needs a model name");
    }
    if (config.api_key_env.empty()) {
      throw ConfigError("live mode needs an api key environment variable");
    }
  } else if (config.fixture_path.empty()) {
    throw ConfigError("replay mode needs a fixture path");
  }
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config) {
  validate_backend_config(config);
  if (config.mode == "replay") {
    return std::make_unique<ReplayBackend>(config.fixture_path);
  }
  return std::make_unique<LiveBackend>(config);
}

}  // namespace delcheck
