// Copyright 2026 The rcgnn Authors
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


#include "rcgnn/provenance.h"

#include <gtest/gtest.h>

namespace rcgnn {
namespace {

TEST(ProvenanceTest, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(ProvenanceTest, CanonicalConfigIsKeyOrdered) {
  EXPECT_EQ(canonical_config({{"b", "2"}, {"a", "1"}}), "a=1;b=2");
  EXPECT_EQ(canonical_config({}), "");
}

TEST(ProvenanceTest, CommentLayout) {
  const std::string c = provenance_comment(7, {{"lr", "0.5"}});
  EXPECT_EQ(c.rfind("# rcgnn ", 0), 0u);
  EXPECT_NE(c.find(" seed=7 "), std::string::npos);
  EXPECT_NE(c.find(" config=lr=0.5"), std::string::npos);
  const auto at = c.find("config_hash=");
  ASSERT_NE(at, std::string::npos);
  EXPECT_EQ(c.substr(at + 12, 16).find_first_not_of("0123456789abcdef"), std::string::npos);
  EXPECT_EQ(c, provenance_comment(7, {{"lr", "0.5"}}));
  EXPECT_NE(c, provenance_comment(7, {{"lr", "0.25"}}));
}

}  // namespace
}  // namespace rcgnn
