// tests/test_weighting.cc

// Copyright 2026  The sedkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "sedkit/convert.h"
#include "sedkit/weighting.h"
#include "test_helpers.h"

using namespace sedkit;
using namespace sedkit::testing;

namespace {

// independent brute-force mask: 1 + centered zero-padded correlation of the
// first-difference impulses with the window
FrameTensor mask_oracle(const LabelTensor& labels, const WindowParams& p) {
  FrameTensor mask(labels.grid(), labels.vocab(), 1.0);
  if (p.alpha == 0.0 || p.sigma == 0) return mask;
  const int c = (p.sigma - 1) / 2;
  for (int k = 0; k < labels.num_classes(); ++k) {
    std::vector<double> impulse(labels.num_frames());
    double prev = 0.0;
    for (int n = 0; n < labels.num_frames(); ++n) {
      impulse[n] = std::abs(labels(n, k) - prev);
      prev = labels(n, k);
    }
    for (int n = 0; n < labels.num_frames(); ++n)
      for (int j = 0; j < p.sigma; ++j) {
        const int s = n + j - c;
        if (s >= 0 && s < labels.num_frames())
          mask(n, k) += impulse[s] *
                        (p.alpha * std::sin(M_PI * (j + 1) / (p.sigma + 1)));
      }
  }
  return mask;
}

}  // namespace

TEST_CASE("window params validation") {
  CHECK_NOTHROW(validate_window(WindowParams{0.0, 0}));
  CHECK_NOTHROW(validate_window(WindowParams{12.0, 7}));
  CHECK_THROWS_AS(validate_window(WindowParams{-1.0, 7}), ValidationError);
  CHECK_THROWS_AS(validate_window(WindowParams{1.0, -1}), ValidationError);
  CHECK_THROWS_AS(validate_window(WindowParams{1.0, 4}), ValidationError);
}

TEST_CASE("detect_boundaries") {
  SUBCASE("hard labels") {
    const auto o = detect_boundaries(column_tensor({0, 0, 1, 1, 1, 0}));
    const std::vector<double> expect{0, 0, 1, 0, 0, 1};
    for (int n = 0; n < 6; ++n) CHECK(o(n, 0) == expect[n]);
  }
  SUBCASE("soft labels keep their amplitude") {
    const auto o = detect_boundaries(column_tensor({0, 0.5, 0.5, 0}));
    const std::vector<double> expect{0, 0.5, 0, 0.5};
    for (int n = 0; n < 4; ++n) CHECK(o(n, 0) == expect[n]);
  }
  SUBCASE("active first frame counts as an onset (left zero padding)") {
    const auto o = detect_boundaries(column_tensor({1, 1, 0}));
    CHECK(o(0, 0) == 1.0);
    CHECK(o(1, 0) == 0.0);
    CHECK(o(2, 0) == 1.0);
  }
  SUBCASE("run ending at the last frame has no offset impulse") {
    const auto o = detect_boundaries(column_tensor({0, 1, 1}));
    CHECK(o(0, 0) == 0.0);
    CHECK(o(1, 0) == 1.0);
    CHECK(o(2, 0) == 0.0);
  }
}

TEST_CASE("sin_window") {
  SUBCASE("sigma 0 is empty") {
    CHECK(sin_window(WindowParams{5.0, 0}).empty());
  }
  SUBCASE("sigma 7 alpha 12") {
    const auto w = sin_window(WindowParams{12.0, 7});
    REQUIRE(w.size() == 7);
    CHECK(w[3] == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(w[0] == doctest::Approx(4.592201188381077).epsilon(1e-14));
    for (int i = 0; i < 7; ++i) {
      CHECK(w[i] == doctest::Approx(w[6 - i]).epsilon(1e-12));
      CHECK(w[i] > 0.0);
    }
  }
  SUBCASE("sigma 1 is a single alpha tap") {
    const auto w = sin_window(WindowParams{5.0, 1});
    REQUIRE(w.size() == 1);
    CHECK(w[0] == doctest::Approx(5.0).epsilon(1e-15));
  }
}

TEST_CASE("build_weight_mask") {
  SUBCASE("alpha 0 and sigma 0 give the all-ones mask") {
    rng::Engine g(17);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto labels = random_hard_labels(
          g, 4 + static_cast<int>(g() % 60), 1 + static_cast<int>(g() % 4));
      for (const auto& p :
           {WindowParams{0.0, 7}, WindowParams{12.0, 0}, WindowParams{0.0, 0}})
        for (double v : build_weight_mask(labels, p).values())
          CHECK(v == 1.0);
    }
  }

  SUBCASE("isolated onset, sigma 7 alpha 12") {
    // event from frame 10 to the end: one onset impulse, no offset
    std::vector<double> y(24, 0.0);
    for (int n = 10; n < 24; ++n) y[n] = 1.0;
    const auto mask = build_weight_mask(column_tensor(y), WindowParams{12, 7});
    CHECK(mask(10, 0) == doctest::Approx(13.0).epsilon(1e-15));
    const double edge = 1.0 + 12.0 * std::sin(M_PI / 8.0);
    CHECK(mask(7, 0) == doctest::Approx(edge).epsilon(1e-14));
    CHECK(mask(13, 0) == doctest::Approx(edge).epsilon(1e-14));
    CHECK(mask(6, 0) == 1.0);
    CHECK(mask(14, 0) == 1.0);
    int weighted = 0;
    for (int n = 0; n < 24; ++n)
      if (mask(n, 0) != 1.0) ++weighted;
    CHECK(weighted == 7);
  }

  SUBCASE("close onset and offset contributions add up") {
    const auto labels = column_tensor({0, 0, 1, 1, 0, 0, 0, 0, 0, 0});
    const WindowParams p{12.0, 7};
    const auto mask = build_weight_mask(labels, p);
    const auto expect = mask_oracle(labels, p);
    for (int n = 0; n < 10; ++n)
      CHECK(mask(n, 0) == doctest::Approx(expect(n, 0)).epsilon(1e-13));
    // between the impulses both windows contribute
    CHECK(mask(3, 0) > 13.0);
  }

  SUBCASE("matches the brute-force oracle on random tensors") {
    rng::Engine g(23);
    for (int trial = 0; trial < 200; ++trial) {
      const auto labels = random_hard_labels(
          g, 4 + static_cast<int>(g() % 40), 1 + static_cast<int>(g() % 3));
      const WindowParams p{rng::uniform(g, 0.5, 15.0),
                           1 + 2 * static_cast<int>(g() % 5)};
      const auto mask = build_weight_mask(labels, p);
      const auto expect = mask_oracle(labels, p);
      for (int n = 0; n < labels.num_frames(); ++n)
        for (int k = 0; k < labels.num_classes(); ++k)
          CHECK(mask(n, k) == doctest::Approx(expect(n, k)).epsilon(1e-12));
    }
  }

  SUBCASE("locality: ones beyond (sigma-1)/2 of any impulse") {
    std::vector<double> y(40, 0.0);
    for (int n = 20; n < 30; ++n) y[n] = 1.0;
    const int sigma = 9;
    const auto mask =
        build_weight_mask(column_tensor(y), WindowParams{3.0, sigma});
    const int half = (sigma - 1) / 2;
    for (int n = 0; n < 40; ++n) {
      const bool near_boundary =
          std::abs(n - 20) <= half || std::abs(n - 30) <= half;
      if (!near_boundary) CHECK(mask(n, 0) == 1.0);
    }
  }

  SUBCASE("mask minus one is linear in the impulse amplitude") {
    std::vector<double> hard(30, 0.0), soft(30, 0.0);
    for (int n = 12; n < 18; ++n) {
      hard[n] = 1.0;
      soft[n] = 0.4;
    }
    const WindowParams p{7.0, 5};
    const auto m1 = build_weight_mask(column_tensor(hard), p);
    const auto ma = build_weight_mask(column_tensor(soft), p);
    for (int n = 0; n < 30; ++n)
      CHECK(ma(n, 0) - 1.0 ==
            doctest::Approx(0.4 * (m1(n, 0) - 1.0)).epsilon(1e-12));
  }

  SUBCASE("mask is symmetric around an isolated impulse") {
    std::vector<double> y(41, 0.0);
    for (int n = 20; n < 41; ++n) y[n] = 1.0;  // single onset at 20
    const auto mask =
        build_weight_mask(column_tensor(y), WindowParams{12.0, 7});
    for (int d = 1; d <= 3; ++d)
      CHECK(mask(20 - d, 0) == doctest::Approx(mask(20 + d, 0)).epsilon(1e-13));
  }

  SUBCASE("sigma 7 at 64 ms frames spans 192 ms half width") {
    const double hop = 0.064;
    const int sigma = 7;
    CHECK((sigma - 1) / 2 * hop == doctest::Approx(0.192).epsilon(1e-12));
  }
}

TEST_CASE("count_class_weights") {
  SUBCASE("two classes with one event each split evenly") {
    const ClassStats s{make_vocab(2), {1, 1}, {4, 4}};
    const auto w = count_class_weights(s);
    CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("M=[1,2] reproduces the hand evaluation") {
    const ClassStats s{make_vocab(2), {1, 2}, {4, 4}};
    const auto w = count_class_weights(s);
    CHECK(w[0] == doctest::Approx(0.6224593312018545).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(0.3775406687981454).epsilon(1e-14));
    CHECK(w[0] + w[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("equal counts stay uniform") {
    const ClassStats s{make_vocab(3), {5, 5, 5}, {9, 9, 9}};
    for (double w : count_class_weights(s))
      CHECK(w == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
  SUBCASE("weights decrease with event count and sum to one") {
    rng::Engine g(31);
    for (int trial = 0; trial < 100; ++trial) {
      const int k = 2 + static_cast<int>(g() % 6);
      ClassStats s{make_vocab(k), {}, {}};
      for (int i = 0; i < k; ++i) {
        s.event_counts.push_back(1 + static_cast<std::int64_t>(g() % 50));
        s.frame_counts.push_back(s.event_counts.back() * 3);
      }
      const auto w = count_class_weights(s);
      double sum = 0.0;
      for (int i = 0; i < k; ++i) {
        sum += w[i];
        for (int j = 0; j < k; ++j)
          if (s.event_counts[i] < s.event_counts[j]) CHECK(w[i] > w[j]);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("zero events is an undefined statistic") {
    const ClassStats s{make_vocab(2), {0, 3}, {0, 9}};
    CHECK_THROWS_AS(count_class_weights(s), ValidationError);
  }
}

TEST_CASE("effective_number_weights") {
  SUBCASE("identical stats give uniform weights, summing to K") {
    const ClassStats s{make_vocab(4), {7, 7, 7, 7}, {100, 100, 100, 100}};
    for (double w : effective_number_weights(s, 8.0))
      CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("M=1 has beta=0 and unnormalized weight 1") {
    const ClassStats s{make_vocab(2), {1, 1}, {10, 990}};
    const auto w = effective_number_weights(s, 8.0);
    // both u_k = 1 regardless of the exponent, so weights stay uniform
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("M=[2,4], N=[100,300], lambda=8 reproduces the hand evaluation") {
    const ClassStats s{make_vocab(2), {2, 4}, {100, 300}};
    const auto w = effective_number_weights(s, 8.0);
    CHECK(w[0] == doctest::Approx(1.3734448296961044).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(0.6265551703038955).epsilon(1e-14));
    CHECK(w[0] + w[1] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("weights sum to K on random stats") {
    rng::Engine g(41);
    for (int trial = 0; trial < 200; ++trial) {
      const int k = 1 + static_cast<int>(g() % 8);
      ClassStats s{make_vocab(k), {}, {}};
      for (int i = 0; i < k; ++i) {
        s.event_counts.push_back(1 + static_cast<std::int64_t>(g() % 40));
        s.frame_counts.push_back(1 + static_cast<std::int64_t>(g() % 500));
      }
      const double lambda = rng::uniform(g, 0.5, 40.0);
      const auto w = effective_number_weights(s, lambda);
      double sum = 0.0;
      for (double x : w) sum += x;
      CHECK(sum == doctest::Approx(k).epsilon(1e-12));
    }
  }
  SUBCASE("zero statistics are rejected") {
    CHECK_THROWS_AS(
        effective_number_weights(ClassStats{make_vocab(1), {0}, {5}}, 8.0),
        ValidationError);
    CHECK_THROWS_AS(
        effective_number_weights(ClassStats{make_vocab(1), {2}, {0}}, 8.0),
        ValidationError);
  }
}

TEST_CASE("collect_class_stats") {
  const ClassVocabulary vocab({"a", "b"});
  const FrameGrid grid{20, 0.064};

  SUBCASE("empty corpus counts zeros") {
    const auto s =
        collect_class_stats(std::span<const EventList>{}, grid, vocab);
    CHECK(s.event_counts == std::vector<std::int64_t>{0, 0});
    CHECK(s.frame_counts == std::vector<std::int64_t>{0, 0});
  }

  SUBCASE("one three-frame event") {
    const std::vector<EventList> clips{
        EventList{"x", {Event{"a", 0.064, 0.064 * 4}}}};  // frames 1..3
    const auto s = collect_class_stats(clips, grid, vocab);
    CHECK(s.event_counts == std::vector<std::int64_t>{1, 0});
    CHECK(s.frame_counts == std::vector<std::int64_t>{3, 0});
  }

  SUBCASE("two identical clips double the counts") {
    const EventList clip{"x", {Event{"a", 0.064, 0.064 * 4}}};
    const std::vector<EventList> clips{clip, EventList{"y", clip.events}};
    const auto s = collect_class_stats(clips, grid, vocab);
    CHECK(s.event_counts == std::vector<std::int64_t>{2, 0});
    CHECK(s.frame_counts == std::vector<std::int64_t>{6, 0});
  }

  SUBCASE("label tensor variant counts runs and frames") {
    LabelTensor t(grid, vocab, 0.0);
    t(2, 0) = 1.0;
    t(3, 0) = 1.0;
    t(7, 0) = 1.0;
    t(5, 1) = 1.0;
    const std::vector<LabelTensor> labels{t};
    const auto s = collect_class_stats(labels);
    CHECK(s.event_counts == std::vector<std::int64_t>{2, 1});
    CHECK(s.frame_counts == std::vector<std::int64_t>{3, 1});
  }
}
