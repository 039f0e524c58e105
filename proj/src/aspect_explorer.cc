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

#include "facetrank/aspect_explorer.h"

#include <cmath>

#include "facetrank/error.h"

namespace facetrank {
namespace {

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto begin = s.find_first_not_of(kSpace);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(kSpace);
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string_view AspectSourceName(AspectSource source) {
  switch (source) {
    case AspectSource::kPredicted:
      return "predicted";
    case AspectSource::kGold:
      return "gold";
    case AspectSource::kFallback:
      return "fallback";
  }
  return "predicted";
}

AspectSource ParseAspectSource(std::string_view name) {
  if (name == "predicted") return AspectSource::kPredicted;
  if (name == "gold") return AspectSource::kGold;
  if (name == "fallback") return AspectSource::kFallback;
  throw Error("unknown aspect source " + std::string(name));
}

ExplorerPrompt::ExplorerPrompt(std::string templ) : template_(std::move(templ)) {
  const auto first = template_.find(kPlaceholder);
  if (first == std::string::npos ||
      template_.find(kPlaceholder, first + 1) != std::string::npos) {
    throw Error("explorer prompt must contain exactly one {query}");
  }
}

ExplorerPrompt ExplorerPrompt::Default() {
  return ExplorerPrompt(
      "List the distinct sub-aspects a comprehensive answer to the question "
      "below should cover. Write each sub-aspect inside square brackets, one "
      "after another, for example [history][impact].\nQuestion: {query}\n"
      "Sub-aspects:");
}

std::string ExplorerPrompt::Render(std::string_view query) const {
  std::string out = template_;
  out.replace(out.find(kPlaceholder), kPlaceholder.size(), query);
  return out;
}

std::string FormatTarget(std::span<const std::string> aspects) {
  std::string out;
  for (const auto& aspect : aspects) {
    if (aspect.find_first_of("[]") != std::string::npos) {
      throw Error("aspect contains bracket");
    }
    out += '[';
    out += aspect;
    out += ']';
  }
  return out;
}

SubAspectList ParseAspects(std::string_view raw) {
  SubAspectList list;
  size_t open = std::string_view::npos;
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '[') {
      if (open != std::string_view::npos) {
        throw Error("malformed aspect string");
      }
      open = i;
    } else if (raw[i] == ']') {
      if (open == std::string_view::npos) {
        throw Error("malformed aspect string");
      }
      const auto segment = Trim(raw.substr(open + 1, i - open - 1));
      if (!segment.empty()) list.aspects.emplace_back(segment);
      open = std::string_view::npos;
    }
  }
  if (open != std::string_view::npos) throw Error("malformed aspect string");
  if (list.aspects.empty()) throw Error("no aspects parsed");
  list.source = AspectSource::kPredicted;
  return list;
}

SubAspectList PredictAspects(std::string_view query,
                             const ExplorerPrompt& prompt, LlmClient& client,
                             int max_tokens) {
  const auto rendered = prompt.Render(query);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto completion = client.Complete(rendered, max_tokens);
    try {
      return ParseAspects(completion);
    } catch (const TransportError&) {
      throw;
    } catch (const Error&) {
      // Unparseable completion; ask again, then degrade.
    }
  }
  return {{std::string(query)}, AspectSource::kFallback};
}

SubAspectList GoldAspects(std::span<const std::string> labeled) {
  SubAspectList list;
  for (const auto& aspect : labeled) {
    // Gold aspects stay index-aligned with sub-answers, so none may vanish.
    const auto trimmed = Trim(aspect);
    if (trimmed.empty()) throw Error("empty gold sub-aspect");
    list.aspects.emplace_back(trimmed);
  }
  if (list.aspects.empty()) throw Error("record has no sub-aspects");
  list.source = AspectSource::kGold;
  return list;
}

double ExplorerSftLoss(std::span<const double> token_logprobs) {
  if (token_logprobs.empty()) throw Error("empty log-probability list");
  double loss = 0.0;
  for (double lp : token_logprobs) {
    if (!(lp <= 0.0)) throw Error("invalid log-probability");
    loss -= lp;
  }
  return loss;
}

}  // namespace facetrank
