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


#include "attu/fixtures.hpp"

#include <iterator>

namespace attu {

namespace {

#include "fixture_texts.inc"

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all(std::begin(k_all), std::end(k_all));
  return all;
}

const Fixture& fixture(std::string_view name) {
  for (const Fixture& f : fixtures()) {
    std::string_view stem = f.file.substr(0, f.file.find('.'));
    if (f.file == name || stem == name) return f;
  }
  throw Error("unknown fixture '" + std::string(name) + "'");
}

Document fixture_document(std::string_view name) {
  return parse_dsl(fixture(name).text);
}

Att fixture_att(std::string_view name) {
  Document doc = fixture_document(name);
  const Att* a = doc.last_att();
  if (!a) throw Error("fixture '" + std::string(name) + "' has no att");
  return *a;
}

Evaluable fixture_evaluable(std::string_view name) {
  return evaluable_of(fixture_document(name));
}

}  // namespace attu
