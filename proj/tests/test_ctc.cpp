// tests/test_ctc.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "oracles/ctc_oracle.hpp"
#include "uniasr/ctc.hpp"
#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

using namespace uniasr;
using uniasr::testing::brute_force_max_labeling;
using uniasr::testing::exhaustive_max_labeling;
using uniasr::testing::forward_log_prob;
using uniasr::testing::random_emission;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path((std::filesystem::temp_directory_path() / name).string()) {}
  ~TempFile() { std::remove(path.c_str()); }
  void write_bytes(const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
};

// Tiny vocabulary for decoder math tests: blank, separator, a, b, c.
Vocabulary tiny_vocab(int32_t letters = 3) {
  std::vector<std::string> tokens = {"<b>", "|"};
  for (int32_t i = 0; i < letters; ++i) {
    tokens.emplace_back(1, static_cast<char>('a' + i));
  }
  return Vocabulary::from_tokens(std::move(tokens));
}

EmissionMatrix from_probs(const std::vector<std::vector<double>>& rows) {
  EmissionMatrix em;
  em.logp.resize(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t v = 0; v < rows[t].size(); ++v) {
      em.logp(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(v)) =
          static_cast<float>(std::log(rows[t][v]));
    }
  }
  return em;
}

}  // namespace

TEST_CASE("shipped vocabulary file matches the built-in inventory") {
  const Vocabulary from_file =
      Vocabulary::load(std::string(UNIASR_DATA_DIR) + "/vocab.txt");
  const Vocabulary builtin = Vocabulary::universal();
  CHECK(from_file.size() == 29);
  CHECK(from_file.tokens() == builtin.tokens());
  CHECK(from_file.token(0) == "<b>");
  CHECK(from_file.token(from_file.separator_index()) == "|");
  CHECK(from_file.index_for_char(U'a') == 2);
  CHECK(from_file.index_for_char(U' ') == from_file.separator_index());
  CHECK(from_file.index_for_char(U'\'') == 28);
  CHECK_THROWS_AS(from_file.index_for_char(U'1'), VocabularyError);
}

TEST_CASE("vocabulary validation") {
  CHECK_THROWS_AS(Vocabulary::from_tokens({"a", "<b>", "|"}),
                  VocabularyError);  // blank not first
  CHECK_THROWS_AS(Vocabulary::from_tokens({"<b>", "a"}),
                  VocabularyError);  // no separator
  CHECK_THROWS_AS(Vocabulary::from_tokens({"<b>", "|", "a", "a"}),
                  VocabularyError);  // duplicate
  CHECK_THROWS_AS(Vocabulary::from_tokens({"<b>", "|", "ab"}),
                  VocabularyError);  // multi-char token
  CHECK_THROWS_AS(Vocabulary::from_tokens({"<b>", "|", "A"}),
                  VocabularyError);  // outside universal alphabet
  CHECK_THROWS_AS(Vocabulary::from_tokens({"<b>", "|", "д"}),
                  VocabularyError);
  CHECK_NOTHROW(Vocabulary::from_tokens({"<b>", "|", "a", "'"}));
}

TEST_CASE("emission round trip is bit identical") {
  const Vocabulary vocab = tiny_vocab();
  Rng rng(11);
  TempFile file("uniasr_em_rt.lem");
  for (int i = 0; i < 20; ++i) {
    const EmissionMatrix em =
        random_emission(rng, 1 + static_cast<int32_t>(rng.next_below(10)),
                        vocab.size());
    write_emissions(file.path, em);
    const EmissionMatrix back = read_emissions(file.path, vocab);
    REQUIRE(back.frames() == em.frames());
    REQUIRE(back.vocab_size() == em.vocab_size());
    CHECK(back.logp == em.logp);
  }
}

TEST_CASE("emission reader rejects malformed files") {
  const Vocabulary vocab = tiny_vocab();
  TempFile file("uniasr_em_bad.lem");
  Rng rng(12);
  const EmissionMatrix em = random_emission(rng, 2, vocab.size());
  write_emissions(file.path, em);
  std::string good;
  {
    std::ifstream in(file.path, std::ios::binary);
    good.assign((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  }

  SUBCASE("bad magic") {
    std::string bytes = good;
    bytes[0] = 'X';
    file.write_bytes(bytes);
    CHECK_THROWS_WITH_AS(read_emissions(file.path, vocab),
                         doctest::Contains("LEM1"), EmissionError);
  }
  SUBCASE("truncated payload") {
    file.write_bytes(good.substr(0, good.size() - 3));
    CHECK_THROWS_AS(read_emissions(file.path, vocab), EmissionError);
  }
  SUBCASE("trailing bytes") {
    file.write_bytes(good + "xx");
    CHECK_THROWS_AS(read_emissions(file.path, vocab), EmissionError);
  }
  SUBCASE("vocab size mismatch") {
    file.write_bytes(good);
    CHECK_THROWS_AS(read_emissions(file.path, tiny_vocab(5)), EmissionError);
  }
  SUBCASE("unnormalized row") {
    EmissionMatrix bad = em;
    bad.logp(0, 0) = std::log(0.9f) ;
    bad.logp(0, 1) = std::log(0.9f);
    bad.logp(0, 2) = std::log(0.9f);
    bad.logp(0, 3) = std::log(0.9f);
    bad.logp(0, 4) = std::log(0.9f);
    write_emissions(file.path, bad);
    CHECK_THROWS_WITH_AS(read_emissions(file.path, vocab),
                         doctest::Contains("sum"), EmissionError);
  }
  SUBCASE("NaN entry") {
    EmissionMatrix bad = em;
    bad.logp(1, 1) = std::nanf("");
    write_emissions(file.path, bad);
    CHECK_THROWS_WITH_AS(read_emissions(file.path, vocab),
                         doctest::Contains("finite"), EmissionError);
  }
}

TEST_CASE("row normalization tolerance is exactly 1e-3") {
  const Vocabulary vocab = tiny_vocab(0);  // blank + separator only
  EmissionMatrix em;
  em.logp.resize(1, 2);

  em.logp(0, 0) = static_cast<float>(std::log(0.5));
  em.logp(0, 1) = static_cast<float>(std::log(0.5005));
  CHECK_NOTHROW(validate_emissions(em, &vocab));

  em.logp(0, 1) = static_cast<float>(std::log(0.503));
  CHECK_THROWS_AS(validate_emissions(em, &vocab), EmissionError);
}

TEST_CASE("collapse merges repeats then deletes blanks") {
  const Vocabulary vocab = tiny_vocab();
  const int32_t a = 2, b = 3;
  CHECK(collapse({0, a, a, 0, b}, vocab) == "ab");
  CHECK(collapse({0, 0}, vocab) == "");
  CHECK(collapse({a, 0, a}, vocab) == "aa");
  CHECK(collapse({a, a, a}, vocab) == "a");
  CHECK(collapse({}, vocab) == "");
  CHECK(collapse({a, 1, b}, vocab) == "a b");
  CHECK(collapse({1, 1, a}, vocab) == " a");  // raw: leading separator kept
  CHECK_THROWS_AS(collapse({99}, vocab), VocabularyError);
  CHECK_THROWS_AS(collapse({-1}, vocab), VocabularyError);
}

TEST_CASE("greedy decode follows per-frame argmax") {
  const Vocabulary vocab = tiny_vocab();
  // Frames argmax to blank, a, a, blank, b.
  const EmissionMatrix em = from_probs({{0.6, 0.1, 0.1, 0.1, 0.1},
                                        {0.1, 0.1, 0.6, 0.1, 0.1},
                                        {0.1, 0.1, 0.6, 0.1, 0.1},
                                        {0.6, 0.1, 0.1, 0.1, 0.1},
                                        {0.1, 0.1, 0.1, 0.6, 0.1}});
  const DecodeResult result = greedy_decode(em, vocab);
  CHECK(result.text.text == "ab");
  CHECK(result.log_score == doctest::Approx(5 * std::log(0.6)));
  CHECK(result.n_frames == 5);
}

TEST_CASE("greedy argmax ties break to the lowest index") {
  const Vocabulary vocab = tiny_vocab();
  const EmissionMatrix em = from_probs({{0.2, 0.2, 0.2, 0.2, 0.2}});
  // All-equal row: blank (index 0) wins, so the text is empty.
  CHECK(greedy_decode(em, vocab).text.text == "");
}

TEST_CASE("greedy decode equals collapsed argmax path under fuzzing") {
  const Vocabulary vocab = tiny_vocab();
  Rng rng(303);
  for (int i = 0; i < 300; ++i) {
    const EmissionMatrix em =
        random_emission(rng, 1 + static_cast<int32_t>(rng.next_below(12)),
                        vocab.size());
    std::vector<int32_t> argmax_path;
    for (int32_t t = 0; t < em.frames(); ++t) {
      int32_t best = 0;
      for (int32_t v = 1; v < em.vocab_size(); ++v) {
        if (em.logp(t, v) > em.logp(t, best)) best = v;
      }
      argmax_path.push_back(best);
    }
    CHECK(greedy_decode(em, vocab).text ==
          make_roman_text(collapse(argmax_path, vocab)));
  }
}

TEST_CASE("two-frame blank/a emission sums its three a-paths") {
  // p(blank)=0.6, p(a)=0.4 per frame. Labeling "a" collects paths
  // a-blank, blank-a, a-a: 0.24 + 0.24 + 0.16 = 0.64 > 0.36 for "".
  const Vocabulary vocab = Vocabulary::from_tokens({"<b>", "|", "a"});
  EmissionMatrix em;
  em.logp.resize(2, 3);
  for (int t = 0; t < 2; ++t) {
    em.logp(t, 0) = static_cast<float>(std::log(0.6));
    em.logp(t, 1) = static_cast<float>(std::log(1e-9));
    em.logp(t, 2) = static_cast<float>(std::log(0.4 - 1e-9));
  }
  const DecodeResult result = beam_decode(em, vocab, 10);
  CHECK(result.text.text == "a");
  CHECK(result.log_score == doctest::Approx(std::log(0.64)).epsilon(1e-4));
}

TEST_CASE("single frame picks the stronger of letter and blank") {
  const Vocabulary vocab = Vocabulary::from_tokens({"<b>", "|", "a"});
  EmissionMatrix em;
  em.logp.resize(1, 3);
  em.logp(0, 0) = static_cast<float>(std::log(0.3));
  em.logp(0, 1) = static_cast<float>(std::log(0.1));
  em.logp(0, 2) = static_cast<float>(std::log(0.6));
  CHECK(beam_decode(em, vocab, 5).text.text == "a");
}

TEST_CASE("zero-frame emission decodes to the empty labeling") {
  const Vocabulary vocab = tiny_vocab();
  EmissionMatrix em;
  em.logp.resize(0, vocab.size());
  const DecodeResult result = beam_decode(em, vocab, 4);
  CHECK(result.text.text == "");
  CHECK(result.log_score == 0.0);
  CHECK(result.n_frames == 0);
  CHECK(greedy_decode(em, vocab).text.text == "");
}

TEST_CASE("beam decode rejects invalid inputs") {
  const Vocabulary vocab = tiny_vocab();
  EmissionMatrix em;
  em.logp.resize(1, 2);
  CHECK_THROWS_AS(beam_decode(em, vocab, 10), EmissionError);
  em.logp.resize(1, vocab.size());
  CHECK_THROWS_AS(beam_decode(em, vocab, 0), EmissionError);
}

TEST_CASE("forward oracle agrees with brute-force path enumeration") {
  Rng rng(909);
  for (int i = 0; i < 60; ++i) {
    const int32_t T = 1 + static_cast<int32_t>(rng.next_below(4));
    const int32_t V = 2 + static_cast<int32_t>(rng.next_below(2));
    const EmissionMatrix em = random_emission(rng, T, V);
    const auto forward = exhaustive_max_labeling(em);
    const auto brute = brute_force_max_labeling(em);
    CHECK(forward.labeling == brute.labeling);
    CHECK(forward.log_prob == doctest::Approx(brute.log_prob).epsilon(1e-9));
  }
}

TEST_CASE("wide beams recover the exhaustive max-sum labeling") {
  const Vocabulary vocab = tiny_vocab(2);  // blank, |, a, b
  Rng rng(1234);
  for (int i = 0; i < 60; ++i) {
    const int32_t T = 1 + static_cast<int32_t>(rng.next_below(5));
    const EmissionMatrix em = random_emission(rng, T, vocab.size());
    const auto oracle = exhaustive_max_labeling(em);
    const DecodeResult result = beam_decode(em, vocab, 400);
    std::string oracle_text;
    for (int32_t index : oracle.labeling) {
      oracle_text.push_back(vocab.output_char(index));
    }
    CAPTURE(i);
    CHECK(result.text == make_roman_text(oracle_text));
    CHECK(result.log_score ==
          doctest::Approx(oracle.log_prob).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("winning score never decreases with beam size") {
  const Vocabulary vocab = tiny_vocab();
  Rng rng(555);
  for (int i = 0; i < 40; ++i) {
    const EmissionMatrix em =
        random_emission(rng, 1 + static_cast<int32_t>(rng.next_below(6)),
                        vocab.size());
    double previous = -1e300;
    for (int32_t beam : {1, 2, 5, 10, 50}) {
      const double score = beam_decode(em, vocab, beam).log_score;
      CHECK(score >= previous - 1e-12);
      previous = score;
    }
  }
}

TEST_CASE("beam decode is deterministic") {
  const Vocabulary vocab = Vocabulary::universal();
  Rng rng(808);
  const EmissionMatrix em = random_emission(rng, 24, vocab.size());
  const DecodeResult first = beam_decode(em, vocab);
  for (int i = 0; i < 5; ++i) {
    const DecodeResult again = beam_decode(em, vocab);
    CHECK(again.text == first.text);
    CHECK(again.log_score == first.log_score);
  }
}

TEST_CASE("forward probabilities of all labelings sum to one") {
  // The alignment paths partition across labelings, so total mass must
  // be 1. Checks the oracle itself.
  Rng rng(717);
  const EmissionMatrix em = random_emission(rng, 4, 3);
  double total = kLogZero;
  std::vector<int32_t> stack;
  const auto visit = [&](auto&& self, std::vector<int32_t>* current) -> void {
    total = log_add(total, forward_log_prob(em, *current));
    if (static_cast<int32_t>(current->size()) >= em.frames()) return;
    for (int32_t v = 1; v < em.vocab_size(); ++v) {
      current->push_back(v);
      self(self, current);
      current->pop_back();
    }
  };
  visit(visit, &stack);
  CHECK(std::exp(total) == doctest::Approx(1.0).epsilon(1e-6));
}
