// include/uniasr/prompts.hpp
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

#ifndef UNIASR_PROMPTS_HPP_
#define UNIASR_PROMPTS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uniasr/roman_text.hpp"

namespace uniasr {

enum class PromptStrategy {
  kZeroShot,
  kFewShot,
  kZeroShotCot,
  kFewShotCot,
  kPromptChaining,
};

// Parses "zero_shot", "few_shot", "zero_shot_cot", "few_shot_cot",
// "prompt_chaining". Throws PromptError on anything else.
PromptStrategy parse_strategy(std::string_view name);
std::string_view strategy_name(PromptStrategy strategy);

// Raw template turns with {lang}/{roman}/{shots}/{pred} placeholders.
// One turn for every strategy except prompt_chaining, which has two.
const std::vector<std::string>& prompt_template_turns(
    PromptStrategy strategy);

struct FewShotExample {
  RomanText roman;
  std::string target;
  std::string source_id;
};

struct RenderedPrompt {
  PromptStrategy strategy;
  // Turn 1 is fully rendered; a prompt_chaining turn 2 still carries the
  // {pred} slot until fill_pred.
  std::vector<std::string> turns;
};

// Uniform sample of n examples without replacement, never including
// exclude_id; a pool smaller than n is returned whole (in sampled
// order). Deterministic given seed. Throws PromptError when nothing
// remains after exclusion.
std::vector<FewShotExample> sample_shots(
    const std::vector<FewShotExample>& pool, std::size_t n, uint64_t seed,
    std::string_view exclude_id);

// Substitutes {lang}, {roman} and {shots} into the strategy's template.
// Shot lines serialize as "<roman> -> <target>" joined by newlines.
// Throws PromptError when shots are given to a shot-free strategy or
// missing for a shot-requiring one.
RenderedPrompt render_prompt(PromptStrategy strategy,
                             std::string_view lang_name,
                             const RomanText& roman,
                             const std::vector<FewShotExample>& shots = {});

// Fills the {pred} slot of a prompt_chaining turn 2 with turn 1's
// extracted answer. Throws PromptError if the turn has no {pred}.
std::string fill_pred(std::string_view turn, std::string_view pred);

}  // namespace uniasr

#endif  // UNIASR_PROMPTS_HPP_
