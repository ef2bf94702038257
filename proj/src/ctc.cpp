// src/ctc.cpp
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

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "uniasr/ctc.hpp"
#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

using Prefix = std::vector<int32_t>;

struct PrefixScores {
  double blank = kLogZero;     // paths ending in blank
  double nonblank = kLogZero;  // paths ending in the prefix's last token

  double total() const { return log_add(blank, nonblank); }
};

std::string render_prefix(const Prefix& prefix, const Vocabulary& vocab) {
  std::string out;
  out.reserve(prefix.size());
  for (int32_t index : prefix) out.push_back(vocab.output_char(index));
  return out;
}

}  // namespace

std::string collapse(const std::vector<int32_t>& path,
                     const Vocabulary& vocab) {
  std::string out;
  int32_t previous = -1;
  for (int32_t index : path) {
    vocab.token(index);  // range check
    const bool repeat = index == previous;
    previous = index;
    if (repeat || index == Vocabulary::kBlankIndex) continue;
    out.push_back(vocab.output_char(index));
  }
  return out;
}

DecodeResult greedy_decode(const EmissionMatrix& em, const Vocabulary& vocab) {
  if (em.vocab_size() != vocab.size()) {
    throw EmissionError("emission width does not match vocabulary size");
  }
  std::vector<int32_t> path;
  path.reserve(static_cast<std::size_t>(em.frames()));
  double score = 0.0;
  for (int32_t t = 0; t < em.frames(); ++t) {
    Eigen::Index best = 0;
    // maxCoeff returns the first maximal entry, i.e. the lowest index.
    const float value = em.logp.row(t).maxCoeff(&best);
    path.push_back(static_cast<int32_t>(best));
    score += static_cast<double>(value);
  }
  return DecodeResult{make_roman_text(collapse(path, vocab)), score,
                      em.frames()};
}

DecodeResult beam_decode(const EmissionMatrix& em, const Vocabulary& vocab,
                         int32_t beam_size) {
  if (em.vocab_size() != vocab.size()) {
    throw EmissionError("emission width does not match vocabulary size");
  }
  if (beam_size < 1) {
    throw EmissionError("beam size must be at least 1");
  }

  // std::map keeps prefixes in lexicographic order, which fixes the
  // accumulation order of merged mass and makes ties reproducible.
  std::map<Prefix, PrefixScores> beam;
  beam[{}] = PrefixScores{0.0, kLogZero};

  const int32_t V = em.vocab_size();
  for (int32_t t = 0; t < em.frames(); ++t) {
    std::map<Prefix, PrefixScores> next;
    for (const auto& [prefix, scores] : beam) {
      for (int32_t v = 0; v < V; ++v) {
        const double lp = static_cast<double>(em.logp(t, v));
        if (v == Vocabulary::kBlankIndex) {
          PrefixScores& same = next[prefix];
          same.blank = log_add(same.blank, scores.total() + lp);
        } else if (!prefix.empty() && prefix.back() == v) {
          // Repeating the last token without an intervening blank stays
          // the same labeling; after a blank it extends it.
          PrefixScores& same = next[prefix];
          same.nonblank = log_add(same.nonblank, scores.nonblank + lp);
          Prefix extended = prefix;
          extended.push_back(v);
          PrefixScores& ext = next[extended];
          ext.nonblank = log_add(ext.nonblank, scores.blank + lp);
        } else {
          Prefix extended = prefix;
          extended.push_back(v);
          PrefixScores& ext = next[extended];
          ext.nonblank = log_add(ext.nonblank, scores.total() + lp);
        }
      }
    }

    if (static_cast<int32_t>(next.size()) > beam_size) {
      std::vector<std::pair<const Prefix*, PrefixScores>> ranked;
      ranked.reserve(next.size());
      for (const auto& [prefix, scores] : next) {
        ranked.emplace_back(&prefix, scores);
      }
      std::sort(ranked.begin(), ranked.end(),
                [](const auto& a, const auto& b) {
                  const double sa = a.second.total();
                  const double sb = b.second.total();
                  if (sa != sb) return sa > sb;
                  return *a.first < *b.first;
                });
      std::map<Prefix, PrefixScores> pruned;
      for (int32_t i = 0; i < beam_size; ++i) {
        pruned.emplace(*ranked[static_cast<std::size_t>(i)].first,
                       ranked[static_cast<std::size_t>(i)].second);
      }
      beam = std::move(pruned);
    } else {
      beam = std::move(next);
    }
  }

  // Map order makes the first strict maximum the lexicographically
  // smallest among equal scores.
  const Prefix* best_prefix = nullptr;
  double best_score = kLogZero;
  for (const auto& [prefix, scores] : beam) {
    const double total = scores.total();
    if (best_prefix == nullptr || total > best_score) {
      best_prefix = &prefix;
      best_score = total;
    }
  }
  return DecodeResult{make_roman_text(render_prefix(*best_prefix, vocab)),
                      best_score, em.frames()};
}

}  // namespace uniasr
