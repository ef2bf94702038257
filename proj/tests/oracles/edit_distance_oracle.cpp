// tests/oracles/edit_distance_oracle.cpp
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

#include "oracles/edit_distance_oracle.hpp"

namespace uniasr::testing {

template std::size_t reference_edit_distance<std::u32string>(
    const std::u32string&, const std::u32string&);
template std::size_t reference_edit_distance<std::vector<std::string>>(
    const std::vector<std::string>&, const std::vector<std::string>&);

}  // namespace uniasr::testing
