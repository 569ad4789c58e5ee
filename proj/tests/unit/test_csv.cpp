// Copyright 2026 The msgate Authors
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

#include <doctest.h>

#include "msgate/csv.hpp"

using namespace msgate;

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("CSV layout") {
  CsvMeta m{"00ff", 7, {"note"}};
  const std::string text = format_csv(m, {"x", "y"}, {{1.0, -0.25}, {2.0, 3e-9}});
  CHECK(text ==
        "# config_hash: 00ff\n# seed: 7\n# note\nx,y\n"
        "1.0000000000e+00,-2.5000000000e-01\n2.0000000000e+00,3.0000000000e-09\n");
  CHECK_THROWS_AS(format_csv(m, {"x"}, {{1.0, 2.0}}), Error);
}
