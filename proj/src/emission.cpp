// src/emission.cpp
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

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>

#include "uniasr/ctc.hpp"
#include "uniasr/error.hpp"

namespace uniasr {

namespace {

constexpr char kMagic[4] = {'L', 'E', 'M', '1'};
constexpr double kRowSumTolerance = 1e-3;

void put_u32(std::string* out, uint32_t value) {
  out->push_back(static_cast<char>(value & 0xFF));
  out->push_back(static_cast<char>((value >> 8) & 0xFF));
  out->push_back(static_cast<char>((value >> 16) & 0xFF));
  out->push_back(static_cast<char>((value >> 24) & 0xFF));
}

uint32_t get_u32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

}  // namespace

void validate_emissions(const EmissionMatrix& em, const Vocabulary* vocab) {
  if (vocab != nullptr && em.vocab_size() != vocab->size()) {
    throw EmissionError("emission width " + std::to_string(em.vocab_size()) +
                        " does not match vocabulary size " +
                        std::to_string(vocab->size()));
  }
  for (int32_t t = 0; t < em.frames(); ++t) {
    double sum = 0.0;
    for (int32_t v = 0; v < em.vocab_size(); ++v) {
      const float value = em.logp(t, v);
      if (!std::isfinite(value)) {
        throw EmissionError("non-finite log-probability at frame " +
                            std::to_string(t));
      }
      sum += std::exp(static_cast<double>(value));
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw EmissionError("frame " + std::to_string(t) +
                          " probabilities sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-3");
    }
  }
}

EmissionMatrix read_emissions(const std::string& path,
                              const Vocabulary& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EmissionError("cannot open emission file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || bytes.compare(0, 4, kMagic, 4) != 0) {
    throw EmissionError(path + ": not a LEM1 file");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const uint32_t frames = get_u32(p + 4);
  const uint32_t width = get_u32(p + 8);
  const uint64_t expected =
      12 + static_cast<uint64_t>(frames) * width * sizeof(float);
  if (bytes.size() != expected) {
    throw EmissionError(path + ": payload is " +
                        std::to_string(bytes.size()) + " bytes, expected " +
                        std::to_string(expected));
  }
  EmissionMatrix em;
  em.logp.resize(static_cast<Eigen::Index>(frames),
                 static_cast<Eigen::Index>(width));
  const unsigned char* cursor = p + 12;
  for (uint32_t t = 0; t < frames; ++t) {
    for (uint32_t v = 0; v < width; ++v) {
      em.logp(t, v) = std::bit_cast<float>(get_u32(cursor));
      cursor += 4;
    }
  }
  validate_emissions(em, &vocab);
  return em;
}

void write_emissions(const std::string& path, const EmissionMatrix& em) {
  std::string bytes;
  bytes.reserve(12 + static_cast<std::size_t>(em.frames()) *
                         static_cast<std::size_t>(em.vocab_size()) * 4);
  bytes.append(kMagic, 4);
  put_u32(&bytes, static_cast<uint32_t>(em.frames()));
  put_u32(&bytes, static_cast<uint32_t>(em.vocab_size()));
  for (int32_t t = 0; t < em.frames(); ++t) {
    for (int32_t v = 0; v < em.vocab_size(); ++v) {
      put_u32(&bytes, std::bit_cast<uint32_t>(em.logp(t, v)));
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open emission file for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing emission file: " + path);
}

}  // namespace uniasr
