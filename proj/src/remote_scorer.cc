// Copyright 2026 The Surprisal Split Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "surprisal_split/remote_scorer.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "httplib.h"
#include "surprisal_split/errors.h"
#include "surprisal_split/text.h"

namespace surprisal_split {
namespace {

using nlohmann::json;

class InFlightSlot {
 public:
  explicit InFlightSlot(std::function<void()> release)
      : release_(std::move(release)) {}
  ~InFlightSlot() { release_(); }
  InFlightSlot(const InFlightSlot&) = delete;
  InFlightSlot& operator=(const InFlightSlot&) = delete;

 private:
  std::function<void()> release_;
};

void SplitUrl(const std::string& url, std::string* scheme_host_port,
              std::string* path_prefix) {
  const size_t scheme_end = url.find("://");
  const size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const size_t path_start = url.find('/', host_start);
  if (path_start == std::string::npos) {
    *scheme_host_port = url;
    path_prefix->clear();
    return;
  }
  *scheme_host_port = url.substr(0, path_start);
  *path_prefix = url.substr(path_start);
  while (!path_prefix->empty() && path_prefix->back() == '/') {
    path_prefix->pop_back();
  }
}

double RequireNumber(const json& object, const char* field) {
  auto it = object.find(field);
  if (it == object.end() || !it->is_number()) {
    throw ScorerUnavailable(std::string("response missing numeric field '") +
                            field + "'");
  }
  return it->get<double>();
}

}  // namespace

RemoteScorer::RemoteScorer(RemoteScorerOptions options)
    : options_(std::move(options)) {
  if (options_.url.empty()) {
    throw std::invalid_argument("remote scorer URL is empty");
  }
  if (options_.max_in_flight == 0) {
    throw std::invalid_argument("max_in_flight must be at least 1");
  }
  SplitUrl(options_.url, &scheme_host_port_, &path_prefix_);
}

std::unique_ptr<RemoteScorer> RemoteScorer::Connect(
    RemoteScorerOptions options) {
  std::unique_ptr<RemoteScorer> scorer(new RemoteScorer(std::move(options)));
  const json health = scorer->Get("/v1/health");
  const std::string status = health.value("status", "");
  if (status != "ok") {
    throw ScorerUnavailable("scoring service at " + scorer->options_.url +
                            " is not ready (status '" + status + "')");
  }
  std::string identity;
  if (auto it = health.find("models"); it != health.end()) {
    identity = it->dump();
  } else if (auto id = health.find("model_identity"); id != health.end()) {
    identity = id->is_string() ? id->get<std::string>() : id->dump();
  } else {
    identity = scorer->options_.url;
  }
  size_t vocab = scorer->options_.lookup_k;
  if (auto it = health.find("vocabulary_size");
      it != health.end() && it->is_number_unsigned() && it->get<size_t>() > 0) {
    vocab = it->get<size_t>();
  }
  scorer->descriptor_ = {ScorerKind::kRemote, identity, vocab};
  return scorer;
}

void RemoteScorer::Acquire() const {
  std::unique_lock lock(gate_mu_);
  gate_cv_.wait(lock, [this] { return in_flight_ < options_.max_in_flight; });
  ++in_flight_;
  peak_in_flight_ = std::max(peak_in_flight_, in_flight_);
}

void RemoteScorer::Release() const {
  {
    std::lock_guard lock(gate_mu_);
    --in_flight_;
  }
  gate_cv_.notify_one();
}

size_t RemoteScorer::peak_in_flight() const {
  std::lock_guard lock(gate_mu_);
  return peak_in_flight_;
}

json RemoteScorer::Post(const std::string& route, const json& body) const {
  Acquire();
  InFlightSlot slot([this] { Release(); });
  httplib::Client client(scheme_host_port_);
  const auto timeout = std::chrono::duration<double>(options_.timeout_seconds);
  client.set_connection_timeout(
      std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(
      std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  auto result =
      client.Post(path_prefix_ + route, body.dump(), "application/json");
  if (!result) {
    throw ScorerUnavailable("POST " + options_.url + route + " failed: " +
                            httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw ScorerUnavailable("POST " + options_.url + route + " returned HTTP " +
                            std::to_string(result->status) + ": " +
                            result->body);
  }
  json parsed = json::parse(result->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw ScorerUnavailable("POST " + options_.url + route +
                            " returned a non-JSON body");
  }
  return parsed;
}

json RemoteScorer::Get(const std::string& route) const {
  Acquire();
  InFlightSlot slot([this] { Release(); });
  httplib::Client client(scheme_host_port_);
  const auto timeout = std::chrono::duration<double>(options_.timeout_seconds);
  client.set_connection_timeout(
      std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(
      std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  auto result = client.Get(path_prefix_ + route);
  if (!result) {
    throw ScorerUnavailable("GET " + options_.url + route + " failed: " +
                            httplib::to_string(result.error()));
  }
  json parsed = json::parse(result->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw ScorerUnavailable("GET " + options_.url + route +
                            " returned a non-JSON body (HTTP " +
                            std::to_string(result->status) + ")");
  }
  return parsed;
}

std::vector<ScoredWord> RemoteScorer::MaskedTopk(
    std::span<const std::string> words, size_t mask_index, size_t k) const {
  CheckMaskArguments(words, mask_index, k);
  const json request = {{"tokens", std::vector<std::string>(words.begin(), words.end())},
                        {"mask_index", mask_index},
                        {"k", k}};
  const json response = Post("/v1/masked_topk", request);
  auto it = response.find("candidates");
  if (it == response.end() || !it->is_array()) {
    throw ScorerUnavailable("masked_topk response has no candidate list");
  }
  std::vector<ScoredWord> out;
  for (const auto& entry : *it) {
    if (!entry.is_object() || !entry.contains("word") ||
        !entry["word"].is_string()) {
      throw ScorerUnavailable("masked_topk candidate without a word");
    }
    ScoredWord scored{entry["word"].get<std::string>(),
                      Floor(RequireNumber(entry, "logprob"))};
    if (!out.empty() && scored.logprob > out.back().logprob) {
      throw ScorerUnavailable("masked_topk candidates are not sorted");
    }
    const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& w) {
      return w.word == scored.word;
    });
    if (!seen) out.push_back(std::move(scored));
    if (out.size() == k) break;
  }
  return out;
}

double RemoteScorer::MaskedLogprob(std::span<const std::string> words,
                                   size_t mask_index,
                                   std::string_view fill) const {
  // The wire protocol only exposes top-k slices, so look the word up in a
  // vocabulary-sized slice. Multi-piece words never appear and get the floor.
  const std::string wanted = NormalizeWord(fill);
  for (const auto& scored : MaskedTopk(words, mask_index, options_.lookup_k)) {
    if (NormalizeWord(scored.word) == wanted) return scored.logprob;
  }
  return LogFloor();
}

double RemoteScorer::ConditionalLogprob(std::span<const std::string> context,
                                        std::string_view target) const {
  const json request = {
      {"context", std::vector<std::string>(context.begin(), context.end())},
      {"target", std::string(target)}};
  const json response = Post("/v1/conditional", request);
  return Floor(RequireNumber(response, "logprob"));
}

}  // namespace surprisal_split
