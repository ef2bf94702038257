// src/synth.cpp
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

#include "uniasr/synth.hpp"

#include <cmath>
#include <vector>

#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

// Every row keeps this much mass on every token so log-probabilities
// stay finite.
constexpr double kFloor = 1e-7;

void check_rate(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError(std::string(name) + " must be in [0,1]");
  }
}

std::vector<float> make_row(int32_t vocab_size, int32_t main_token,
                            double blank_bleed) {
  const double mass = 1.0 - kFloor * vocab_size;
  std::vector<double> probs(static_cast<std::size_t>(vocab_size), kFloor);
  if (main_token == Vocabulary::kBlankIndex) {
    probs[Vocabulary::kBlankIndex] += mass;
  } else {
    probs[static_cast<std::size_t>(main_token)] += (1.0 - blank_bleed) * mass;
    probs[Vocabulary::kBlankIndex] += blank_bleed * mass;
  }
  std::vector<float> row(static_cast<std::size_t>(vocab_size));
  for (std::size_t v = 0; v < probs.size(); ++v) {
    row[v] = static_cast<float>(std::log(probs[v]));
  }
  return row;
}

}  // namespace

void NoiseSpec::validate() const {
  check_rate(substitution_rate, "substitution_rate");
  check_rate(deletion_rate, "deletion_rate");
  check_rate(blank_bleed, "blank_bleed");
  if (substitution_rate + deletion_rate > 1.0) {
    throw ConfigError("substitution_rate + deletion_rate must not exceed 1");
  }
  if (frames_per_char < 1) {
    throw ConfigError("frames_per_char must be at least 1");
  }
}

EmissionMatrix synthesize_emissions(const RomanText& text,
                                    const Vocabulary& vocab,
                                    const NoiseSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  // Letter tokens eligible as substitution targets.
  std::vector<int32_t> letters;
  for (int32_t i = 1; i < vocab.size(); ++i) {
    if (i != vocab.separator_index()) letters.push_back(i);
  }

  // Per character: one decision draw and one (always consumed)
  // replacement draw, so the stream layout does not depend on outcomes.
  std::vector<int32_t> emitted;
  for (char32_t c : decode_utf8(text.text)) {
    const int32_t true_token = vocab.index_for_char(c);
    const double decision = rng.next_double();
    const uint64_t replacement = rng.next_below(letters.size());
    if (decision < spec.deletion_rate) continue;
    if (decision < spec.deletion_rate + spec.substitution_rate) {
      emitted.push_back(letters[static_cast<std::size_t>(replacement)]);
    } else {
      emitted.push_back(true_token);
    }
  }

  std::vector<std::vector<float>> frames;
  int32_t previous = Vocabulary::kBlankIndex;
  for (int32_t token : emitted) {
    if (token == previous) {
      // The collapse rule would merge equal neighbors; a blank frame
      // keeps them distinct.
      frames.push_back(make_row(vocab.size(), Vocabulary::kBlankIndex, 0.0));
    }
    for (int32_t k = 0; k < spec.frames_per_char; ++k) {
      frames.push_back(make_row(vocab.size(), token, spec.blank_bleed));
    }
    previous = token;
  }
  if (frames.empty()) {
    frames.push_back(make_row(vocab.size(), Vocabulary::kBlankIndex, 0.0));
  }

  EmissionMatrix em;
  em.logp.resize(static_cast<Eigen::Index>(frames.size()), vocab.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    for (int32_t v = 0; v < vocab.size(); ++v) {
      em.logp(static_cast<Eigen::Index>(t), v) =
          frames[t][static_cast<std::size_t>(v)];
    }
  }
  return em;
}

std::string perturb_text(std::string_view text, const NoiseSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::string out;
  out.reserve(text.size());
  for (char32_t c : decode_utf8(text)) {
    const double decision = rng.next_double();
    const uint64_t replacement = rng.next_below(26);
    if (decision < spec.deletion_rate) continue;
    if (decision < spec.deletion_rate + spec.substitution_rate) {
      out.push_back(static_cast<char>('a' + replacement));
    } else {
      append_utf8(&out, c);
    }
  }
  return out;
}

}  // namespace uniasr
