// include/uniasr/synth.hpp
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

#ifndef UNIASR_SYNTH_HPP_
#define UNIASR_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "uniasr/ctc.hpp"
#include "uniasr/roman_text.hpp"

namespace uniasr {

// Controls the synthetic acoustic stand-in. With all rates zero the
// generated emissions decode back to the input exactly.
struct NoiseSpec {
  // Per character: probability of rendering a wrong token / of emitting
  // no frames at all. Mutually exclusive; their sum must stay <= 1.
  double substitution_rate = 0.0;
  double deletion_rate = 0.0;
  // Probability mass moved from the true token to blank on every frame.
  double blank_bleed = 0.0;
  int32_t frames_per_char = 4;
  uint64_t seed = 0;

  // Throws ConfigError when a rate leaves [0,1], substitution_rate +
  // deletion_rate exceeds 1, or frames_per_char < 1.
  void validate() const;
};

// Emits frames_per_char frames per surviving character with probability
// mass concentrated on its token; one blank-dominated frame separates
// equal consecutive tokens so the CTC collapse cannot merge them. At
// least one frame is always produced. Deterministic given spec.seed.
// Throws VocabularyError if a character has no token.
EmissionMatrix synthesize_emissions(const RomanText& text,
                                    const Vocabulary& vocab,
                                    const NoiseSpec& spec);

// Character-level reference perturbation: per character, delete with
// deletion_rate, else substitute with substitution_rate (replacement
// uniform over a-z). blank_bleed and frames_per_char are ignored.
// Deterministic given spec.seed.
std::string perturb_text(std::string_view text, const NoiseSpec& spec);

}  // namespace uniasr

#endif  // UNIASR_SYNTH_HPP_
