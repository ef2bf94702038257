// src/prompts.cpp
//
// Copyright 2026 The uniasr Authors
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

#include "uniasr/prompts.hpp"

#include <algorithm>

#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

// The wording, casing and punctuation of these templates is a fixed
// external contract; see data/prompt_templates.txt for the golden copy.
const std::vector<std::string> kZeroShotTurns = {
    "Transcribe following Romanized sentence into a {lang} sentence: "
    "{roman}.",
};
const std::vector<std::string> kFewShotTurns = {
    "Here are some examples of transcribing a Romanized sentence into a "
    "{lang} sentence: {shots}.\n"
    "Considering the examples above, transcribe the following Romanized "
    "sentence into a {lang} sentence: {roman}.",
};
const std::vector<std::string> kZeroShotCotTurns = {
    "Transcribe the following Romanized sentence into a {lang} sentence. "
    "Think step by step: {roman}.",
};
const std::vector<std::string> kFewShotCotTurns = {
    "Here are some examples of transcribing a Romanized sentence into a "
    "{lang} sentence: {shots}.\n"
    "Considering the examples above, transcribe the following Romanized "
    "sentence into a {lang} sentence. Think step by step: {roman}.",
};
const std::vector<std::string> kPromptChainingTurns = {
    "Transcribe the following Romanized sentence into a {lang} sentence, "
    "based on its pronunciation: {roman}.",
    "Correct the typographical and spacing errors in the following {lang} "
    "sentence: {pred}.",
};

// Replaces every occurrence in a single left-to-right pass; substituted
// content is never rescanned, so braces inside values are inert.
std::string replace_all(std::string_view text, std::string_view slot,
                        std::string_view value) {
  std::string out;
  out.reserve(text.size() + value.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t hit = text.find(slot, pos);
    if (hit == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, hit - pos));
    out.append(value);
    pos = hit + slot.size();
  }
  return out;
}

bool uses_shots(PromptStrategy strategy) {
  return strategy == PromptStrategy::kFewShot ||
         strategy == PromptStrategy::kFewShotCot;
}

}  // namespace

PromptStrategy parse_strategy(std::string_view name) {
  if (name == "zero_shot") return PromptStrategy::kZeroShot;
  if (name == "few_shot") return PromptStrategy::kFewShot;
  if (name == "zero_shot_cot") return PromptStrategy::kZeroShotCot;
  if (name == "few_shot_cot") return PromptStrategy::kFewShotCot;
  if (name == "prompt_chaining") return PromptStrategy::kPromptChaining;
  throw PromptError("unknown prompt strategy: " + std::string(name));
}

std::string_view strategy_name(PromptStrategy strategy) {
  switch (strategy) {
    case PromptStrategy::kZeroShot:
      return "zero_shot";
    case PromptStrategy::kFewShot:
      return "few_shot";
    case PromptStrategy::kZeroShotCot:
      return "zero_shot_cot";
    case PromptStrategy::kFewShotCot:
      return "few_shot_cot";
    case PromptStrategy::kPromptChaining:
      return "prompt_chaining";
  }
  throw PromptError("invalid strategy value");
}

const std::vector<std::string>& prompt_template_turns(
    PromptStrategy strategy) {
  switch (strategy) {
    case PromptStrategy::kZeroShot:
      return kZeroShotTurns;
    case PromptStrategy::kFewShot:
      return kFewShotTurns;
    case PromptStrategy::kZeroShotCot:
      return kZeroShotCotTurns;
    case PromptStrategy::kFewShotCot:
      return kFewShotCotTurns;
    case PromptStrategy::kPromptChaining:
      return kPromptChainingTurns;
  }
  throw PromptError("invalid strategy value");
}

std::vector<FewShotExample> sample_shots(
    const std::vector<FewShotExample>& pool, std::size_t n, uint64_t seed,
    std::string_view exclude_id) {
  std::vector<FewShotExample> candidates;
  candidates.reserve(pool.size());
  for (const FewShotExample& example : pool) {
    if (example.source_id != exclude_id) candidates.push_back(example);
  }
  if (candidates.empty()) {
    throw PromptError("no few-shot candidates after excluding \"" +
                      std::string(exclude_id) + "\"");
  }
  const std::size_t take = std::min(n, candidates.size());
  Rng rng(seed);
  // Partial Fisher-Yates: the first `take` slots are a uniform sample
  // without replacement.
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(
                                  rng.next_below(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(take);
  return candidates;
}

RenderedPrompt render_prompt(PromptStrategy strategy,
                             std::string_view lang_name,
                             const RomanText& roman,
                             const std::vector<FewShotExample>& shots) {
  if (uses_shots(strategy) && shots.empty()) {
    throw PromptError(std::string(strategy_name(strategy)) +
                      " requires few-shot examples");
  }
  if (!uses_shots(strategy) && !shots.empty()) {
    throw PromptError(std::string(strategy_name(strategy)) +
                      " does not take few-shot examples");
  }

  std::string shot_block;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    if (i > 0) shot_block.push_back('\n');
    shot_block += shots[i].roman.text;
    shot_block += " -> ";
    shot_block += shots[i].target;
  }

  RenderedPrompt rendered;
  rendered.strategy = strategy;
  for (const std::string& turn : prompt_template_turns(strategy)) {
    std::string text = replace_all(turn, "{lang}", lang_name);
    text = replace_all(text, "{roman}", roman.text);
    if (uses_shots(strategy)) {
      text = replace_all(text, "{shots}", shot_block);
    }
    rendered.turns.push_back(std::move(text));
  }
  return rendered;
}

std::string fill_pred(std::string_view turn, std::string_view pred) {
  if (turn.find("{pred}") == std::string_view::npos) {
    throw PromptError("turn has no {pred} slot");
  }
  return replace_all(turn, "{pred}", pred);
}

}  // namespace uniasr
