// Copyright 2026 The facetrank Authors.
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

#ifndef FACETRANK_ASPECT_EXPLORER_H_
#define FACETRANK_ASPECT_EXPLORER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace facetrank {

enum class AspectSource { kPredicted, kGold, kFallback };

std::string_view AspectSourceName(AspectSource source);
AspectSource ParseAspectSource(std::string_view name);

struct SubAspectList {
  std::vector<std::string> aspects;
  AspectSource source = AspectSource::kPredicted;
};

// Instruction template for the explorer LLM. Holds exactly one "{query}".
class ExplorerPrompt {
 public:
  static constexpr std::string_view kPlaceholder = "{query}";

  // Throws Error unless the template contains the placeholder exactly once.
  explicit ExplorerPrompt(std::string templ);
  static ExplorerPrompt Default();

  std::string Render(std::string_view query) const;
  const std::string& templ() const { return template_; }

 private:
  std::string template_;
};

// Text-completion endpoint used by the explorer.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  // Throws TransportError when the endpoint cannot produce a completion.
  virtual std::string Complete(const std::string& prompt, int max_tokens) = 0;
};

// "[s1][s2]...[sn]". Throws Error("aspect contains bracket").
std::string FormatTarget(std::span<const std::string> aspects);

// Extracts bracketed segments in order, trimming each and dropping empty
// ones. Text outside brackets is ignored. Throws Error("malformed aspect
// string") on unbalanced or nested brackets and Error("no aspects parsed")
// when nothing survives.
SubAspectList ParseAspects(std::string_view raw);

// One completion, one retry on an unparseable answer, then the single
// aspect [query] marked as fallback. Transport errors propagate.
SubAspectList PredictAspects(std::string_view query,
                             const ExplorerPrompt& prompt, LlmClient& client,
                             int max_tokens = 128);

SubAspectList GoldAspects(std::span<const std::string> labeled);

// Negated sum of per-token log-probabilities of the target string.
double ExplorerSftLoss(std::span<const double> token_logprobs);

}  // namespace facetrank

#endif  // FACETRANK_ASPECT_EXPLORER_H_
