// tests/oracles/ctc_oracle.cpp
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

#include "oracles/ctc_oracle.hpp"

#include <cmath>
#include <map>

namespace uniasr::testing {

namespace {

constexpr int32_t kBlank = 0;

void enumerate_labelings(const EmissionMatrix& em,
                         std::vector<int32_t>* current,
                         OracleLabeling* best) {
  const double log_prob = forward_log_prob(em, *current);
  // Preorder enumeration is lexicographic, so strict improvement keeps
  // the smallest labeling among ties, matching the decoder's tie-break.
  if (log_prob > best->log_prob) {
    best->labeling = *current;
    best->log_prob = log_prob;
  }
  if (static_cast<int32_t>(current->size()) >= em.frames()) return;
  for (int32_t v = 1; v < em.vocab_size(); ++v) {
    current->push_back(v);
    enumerate_labelings(em, current, best);
    current->pop_back();
  }
}

}  // namespace

double forward_log_prob(const EmissionMatrix& em,
                        const std::vector<int32_t>& labeling) {
  const int32_t T = em.frames();
  if (labeling.empty()) {
    double total = 0.0;
    for (int32_t t = 0; t < T; ++t) {
      total += static_cast<double>(em.logp(t, kBlank));
    }
    return total;
  }
  if (T == 0) return kLogZero;

  // Blank-extended sequence: blank, l1, blank, l2, ..., blank.
  const std::size_t S = 2 * labeling.size() + 1;
  std::vector<int32_t> extended(S, kBlank);
  for (std::size_t i = 0; i < labeling.size(); ++i) {
    extended[2 * i + 1] = labeling[i];
  }

  std::vector<double> alpha(S, kLogZero);
  alpha[0] = static_cast<double>(em.logp(0, kBlank));
  alpha[1] = static_cast<double>(em.logp(0, extended[1]));
  for (int32_t t = 1; t < T; ++t) {
    std::vector<double> next(S, kLogZero);
    for (std::size_t s = 0; s < S; ++s) {
      double acc = alpha[s];
      if (s >= 1) acc = log_add(acc, alpha[s - 1]);
      // Skip transition over a blank is allowed unless it would merge
      // two equal labels.
      if (s >= 2 && extended[s] != kBlank && extended[s] != extended[s - 2]) {
        acc = log_add(acc, alpha[s - 2]);
      }
      next[s] = acc + static_cast<double>(em.logp(t, extended[s]));
    }
    alpha = std::move(next);
  }
  return log_add(alpha[S - 1], alpha[S - 2]);
}

OracleLabeling exhaustive_max_labeling(const EmissionMatrix& em) {
  OracleLabeling best;
  best.labeling.clear();
  best.log_prob = forward_log_prob(em, {});
  std::vector<int32_t> current;
  for (int32_t v = 1; v < em.vocab_size() && em.frames() > 0; ++v) {
    current.push_back(v);
    enumerate_labelings(em, &current, &best);
    current.pop_back();
  }
  return best;
}

OracleLabeling brute_force_max_labeling(const EmissionMatrix& em) {
  const int32_t T = em.frames();
  const int32_t V = em.vocab_size();
  std::map<std::vector<int32_t>, double> mass;
  std::vector<int32_t> path(static_cast<std::size_t>(T), 0);
  while (true) {
    double log_p = 0.0;
    for (int32_t t = 0; t < T; ++t) {
      log_p += static_cast<double>(
          em.logp(t, path[static_cast<std::size_t>(t)]));
    }
    // Independent collapse: merge repeats, drop blanks.
    std::vector<int32_t> labeling;
    int32_t prev = -1;
    for (int32_t token : path) {
      if (token != prev && token != kBlank) labeling.push_back(token);
      prev = token;
    }
    const auto it = mass.find(labeling);
    if (it == mass.end()) {
      mass.emplace(std::move(labeling), log_p);
    } else {
      it->second = log_add(it->second, log_p);
    }
    // Odometer increment over all V^T paths.
    int32_t pos = T - 1;
    while (pos >= 0 && path[static_cast<std::size_t>(pos)] == V - 1) {
      path[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++path[static_cast<std::size_t>(pos)];
  }

  OracleLabeling best;
  bool first = true;
  for (const auto& [labeling, log_p] : mass) {
    // Map order is lexicographic, so strict improvement keeps the
    // smallest labeling among ties.
    if (first || log_p > best.log_prob) {
      best.labeling = labeling;
      best.log_prob = log_p;
      first = false;
    }
  }
  return best;
}

EmissionMatrix random_emission(Rng& rng, int32_t frames, int32_t vocab_size) {
  EmissionMatrix em;
  em.logp.resize(frames, vocab_size);
  for (int32_t t = 0; t < frames; ++t) {
    double sum = 0.0;
    std::vector<double> gamma(static_cast<std::size_t>(vocab_size));
    for (int32_t v = 0; v < vocab_size; ++v) {
      // -log(U) is Exponential(1); normalized exponentials are uniform
      // on the simplex.
      double u;
      do {
        u = rng.next_double();
      } while (u <= 0.0);
      gamma[static_cast<std::size_t>(v)] = -std::log(u);
      sum += gamma[static_cast<std::size_t>(v)];
    }
    for (int32_t v = 0; v < vocab_size; ++v) {
      em.logp(t, v) = static_cast<float>(
          std::log(gamma[static_cast<std::size_t>(v)] / sum));
    }
  }
  return em;
}

}  // namespace uniasr::testing
