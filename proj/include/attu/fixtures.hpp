// Copyright 2026 The attu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Small example transducers used by the tests, the acceptance run and the
// command line tool. Each one is also shipped as a file under fixtures/.

#ifndef ATTU_FIXTURES_HPP_
#define ATTU_FIXTURES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "attu/dsl.hpp"

namespace attu {

struct Fixture {
  std::string_view file;  // "ex1.att"
  std::string_view text;  // canonical DSL
};

const std::vector<Fixture>& fixtures();

/// Throws Error for unknown names. Accepts "ex1" or "ex1.att".
const Fixture& fixture(std::string_view name);
Document fixture_document(std::string_view name);
/// The last att of the fixture.
Att fixture_att(std::string_view name);
Evaluable fixture_evaluable(std::string_view name);

}  // namespace attu

#endif  // ATTU_FIXTURES_HPP_
