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

#ifndef SURPRISAL_SPLIT_REMOTE_SCORER_H_
#define SURPRISAL_SPLIT_REMOTE_SCORER_H_

#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>

#include "json.hpp"
#include "surprisal_split/scorer.h"

namespace surprisal_split {

// Environment variable consulted for the service URL when no flag is given.
inline constexpr const char* kLmUrlEnv = "SURPRISAL_SPLIT_LM_URL";

struct RemoteScorerOptions {
  std::string url;  // e.g. "http://127.0.0.1:8000", optional path prefix
  size_t max_in_flight = 4;
  double timeout_seconds = 60.0;
  // k used when looking up the masked log-probability of one specific word
  // that did not make the regular top-k.
  size_t lookup_k = 50265;
};

// Client for the transformer scoring service:
//
//   POST /v1/masked_topk  {"tokens":[...],"mask_index":i,"k":k}
//        -> {"candidates":[{"word":w,"logprob":lp},...],"model_identity":id}
//   POST /v1/conditional  {"context":[...],"target":w}
//        -> {"logprob":lp,"n_pieces":n,"model_identity":id}
//   GET  /v1/health       -> {"status":"ok"|"loading",...}
//
// Transport and protocol failures raise ScorerUnavailable. At most
// `max_in_flight` requests are outstanding at once across all threads.
class RemoteScorer : public Scorer {
 public:
  // Checks /v1/health and captures the model identities for the descriptor.
  // Throws ScorerUnavailable if the service is unreachable or not ready.
  static std::unique_ptr<RemoteScorer> Connect(RemoteScorerOptions options);

  std::vector<ScoredWord> MaskedTopk(std::span<const std::string> words,
                                     size_t mask_index,
                                     size_t k) const override;
  double MaskedLogprob(std::span<const std::string> words, size_t mask_index,
                       std::string_view fill) const override;
  double ConditionalLogprob(std::span<const std::string> context,
                            std::string_view target) const override;
  ScorerDescriptor Descriptor() const override { return descriptor_; }

  // Largest number of requests observed in flight simultaneously.
  size_t peak_in_flight() const;

 private:
  explicit RemoteScorer(RemoteScorerOptions options);

  nlohmann::json Post(const std::string& route,
                      const nlohmann::json& body) const;
  nlohmann::json Get(const std::string& route) const;

  void Acquire() const;
  void Release() const;

  RemoteScorerOptions options_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  ScorerDescriptor descriptor_;

  mutable std::mutex gate_mu_;
  mutable std::condition_variable gate_cv_;
  mutable size_t in_flight_ = 0;
  mutable size_t peak_in_flight_ = 0;
};

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_REMOTE_SCORER_H_
