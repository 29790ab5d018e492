// Copyright 2026 The Stopwatch Authors
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

#include <gtest/gtest.h>

#include "properties.hpp"

namespace stopwatch {
namespace {

TEST(Properties, ChannelTraceAndPsd) {
    auto r = property::channel_trace_and_psd(11);
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, PhaseIndependence) {
    auto r = property::phase_independence(12);
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, DephasingSemigroup) {
    auto r = property::dephasing_semigroup(13);
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, SchurNormalization) {
    auto r = property::schur_normalization(14);
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, DataProcessing) {
    auto r = property::data_processing(15, 20000);
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, Mixing) {
    auto r = property::mixing(16, 20000);
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, Continuity) {
    auto r = property::continuity(17, 20000);
    EXPECT_TRUE(r.ok) << r.detail;
}

}  // namespace
}  // namespace stopwatch
