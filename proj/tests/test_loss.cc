// tests/test_loss.cc

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

#include "doctest.h"
#include "sedkit/loss.h"
#include "test_helpers.h"

using namespace sedkit;
using namespace sedkit::testing;

namespace {

constexpr double kLn2 = 0.6931471805599453;

ScoreTensor random_scores_inside(rng::Engine& g, int frames, int classes) {
  ScoreTensor t(FrameGrid{frames, 0.064}, make_vocab(classes), 0.0);
  for (double& v : t.values()) v = rng::uniform(g, 0.02, 0.98);
  return t;
}

}  // namespace

TEST_CASE("bce elementwise values") {
  SUBCASE("y=1, p=0.5 is ln 2") {
    const auto f =
        bce_elementwise(column_tensor({1.0}), column_tensor({0.5}));
    CHECK(f(0, 0) == doctest::Approx(kLn2).epsilon(1e-14));
  }
  SUBCASE("perfect negative prediction is ~0 after clipping") {
    const auto f =
        bce_elementwise(column_tensor({0.0}), column_tensor({0.0}));
    CHECK(f(0, 0) > 0.0);
    CHECK(f(0, 0) < 1.1e-7);
  }
  SUBCASE("soft target y=0.5 against p=0.5 is ln 2") {
    const auto f =
        bce_elementwise(column_tensor({0.5}), column_tensor({0.5}));
    CHECK(f(0, 0) == doctest::Approx(kLn2).epsilon(1e-14));
  }
  SUBCASE("shape mismatch throws") {
    CHECK_THROWS_AS(bce_elementwise(column_tensor({1.0, 0.0}),
                                    column_tensor({0.5})),
                    ValidationError);
  }
}

TEST_CASE("aggregate_loss") {
  rng::Engine g(3);
  const auto elem = random_unit_tensor(g, 6, 3);

  SUBCASE("identity weights reduce to the plain mean") {
    WeightMask ones(elem.grid(), elem.vocab(), 1.0);
    const std::vector<double> uniform(3, 1.0);
    const double plain = aggregate_loss(elem, nullptr, nullptr);
    CHECK(aggregate_loss(elem, &ones, &uniform) ==
          doctest::Approx(plain).epsilon(1e-12));
    double mean = 0.0;
    for (int n = 0; n < 6; ++n)
      for (int k = 0; k < 3; ++k) mean += elem(n, k);
    CHECK(plain == doctest::Approx(mean / 18.0).epsilon(1e-12));
  }

  SUBCASE("doubling one mask entry adds f/(N*K)") {
    const auto small = random_unit_tensor(g, 2, 1);
    WeightMask mask(small.grid(), small.vocab(), 1.0);
    const double base = aggregate_loss(small, &mask, nullptr);
    mask(1, 0) = 2.0;
    const double boosted = aggregate_loss(small, &mask, nullptr);
    CHECK(boosted - base ==
          doctest::Approx(small(1, 0) / 2.0).epsilon(1e-12));
  }

  SUBCASE("all-zero elementwise loss aggregates to zero") {
    const FrameTensor zeros(elem.grid(), elem.vocab(), 0.0);
    CHECK(aggregate_loss(zeros, nullptr, nullptr) == 0.0);
  }

  SUBCASE("raising a mask entry never lowers the loss") {
    rng::Engine g2(5);
    for (int trial = 0; trial < 100; ++trial) {
      const auto e = random_unit_tensor(g2, 5, 2);
      WeightMask mask(e.grid(), e.vocab(), 1.0);
      for (double& v : mask.values()) v = rng::uniform(g2, 1.0, 5.0);
      const double before = aggregate_loss(e, &mask, nullptr);
      const int n = static_cast<int>(g2() % 5);
      const int k = static_cast<int>(g2() % 2);
      mask(n, k) += rng::uniform(g2, 0.1, 3.0);
      const double after = aggregate_loss(e, &mask, nullptr);
      CHECK(after >= before - 1e-15);
    }
  }

  SUBCASE("dimension errors") {
    WeightMask wrong(FrameGrid{5, 0.064}, make_vocab(3), 1.0);
    CHECK_THROWS_AS(aggregate_loss(elem, &wrong, nullptr), ValidationError);
    const std::vector<double> bad(2, 1.0);
    CHECK_THROWS_AS(aggregate_loss(elem, nullptr, &bad), ValidationError);
  }
}

TEST_CASE("owbce_loss") {
  rng::Engine g(7);

  SUBCASE("alpha=0 and sigma=0 equal the unweighted mean bit-exactly") {
    for (int trial = 0; trial < 1000; ++trial) {
      const int frames = 2 + static_cast<int>(g() % 30);
      const int classes = 1 + static_cast<int>(g() % 4);
      const auto labels = random_hard_labels(g, frames, classes);
      const auto scores = random_scores_inside(g, frames, classes);
      const double plain =
          aggregate_loss(bce_elementwise(labels, scores), nullptr, nullptr);
      CHECK(owbce_loss(labels, scores, WindowParams{0.0, 7}) == plain);
      CHECK(owbce_loss(labels, scores, WindowParams{12.0, 0}) == plain);
    }
  }

  SUBCASE("an error at a weighted frame costs more than the plain mean") {
    std::vector<double> y(32, 0.0);
    for (int n = 10; n < 32; ++n) y[n] = 1.0;
    const auto labels = column_tensor(y);
    // wrong only near the onset frame
    std::vector<double> p(y);
    p[10] = 0.5;
    const auto scores = column_tensor(p);
    const double plain = owbce_loss(labels, scores, WindowParams{0.0, 0});
    const double weighted = owbce_loss(labels, scores, WindowParams{12.0, 7});
    // the mask multiplies the only nonzero term by 1 + alpha
    CHECK(weighted == doctest::Approx(13.0 * plain).epsilon(1e-9));
  }

  SUBCASE("zero elementwise loss stays zero under any mask") {
    const auto labels = column_tensor({0, 0, 1, 1, 0});
    ScoreTensor scores = labels;
    const double loss = owbce_loss(labels, scores, WindowParams{12.0, 7});
    CHECK(loss < 1e-6);  // only the clipping epsilon remains
  }
}

TEST_CASE("owbce_gradient") {
  SUBCASE("gradient vanishes at y == p") {
    const auto labels = column_tensor({0.3, 0.8});
    const auto grad =
        owbce_gradient(labels, labels, WindowParams{12.0, 7});
    for (double v : grad.values()) CHECK(v == 0.0);
  }

  SUBCASE("single entry y=1, p=0.5 gives -2") {
    const auto grad = owbce_gradient(column_tensor({1.0}),
                                     column_tensor({0.5}),
                                     WindowParams{0.0, 0});
    CHECK(grad(0, 0) == doctest::Approx(-2.0).epsilon(1e-14));
  }

  SUBCASE("the mask scales the gradient linearly") {
    // onset at frame 0 of a 1-frame tensor: mask = 1 + alpha = 13
    const auto grad = owbce_gradient(column_tensor({1.0}),
                                     column_tensor({0.5}),
                                     WindowParams{12.0, 7});
    CHECK(grad(0, 0) == doctest::Approx(-26.0).epsilon(1e-12));
  }

  SUBCASE("matches central finite differences on random tensors") {
    rng::Engine g(11);
    const double h = 1e-5;
    for (int trial = 0; trial < 120; ++trial) {
      const int frames = 2 + static_cast<int>(g() % 15);
      const int classes = 1 + static_cast<int>(g() % 4);
      const auto labels = random_hard_labels(g, frames, classes);
      ScoreTensor scores = random_scores_inside(g, frames, classes);
      const WindowParams p{rng::uniform(g, 0.0, 14.0),
                           1 + 2 * static_cast<int>(g() % 4)};
      const auto grad = owbce_gradient(labels, scores, p);

      // a handful of random coordinates per instance
      for (int probe = 0; probe < 4; ++probe) {
        const int n = static_cast<int>(g() % frames);
        const int k = static_cast<int>(g() % classes);
        const double saved = scores(n, k);
        scores(n, k) = saved + h;
        const double up = owbce_loss(labels, scores, p);
        scores(n, k) = saved - h;
        const double down = owbce_loss(labels, scores, p);
        scores(n, k) = saved;
        const double fd = (up - down) / (2.0 * h);
        const double a = grad(n, k);
        CHECK(std::abs(a - fd) <=
              1e-5 * std::max({std::abs(a), std::abs(fd), 1e-6}));
      }
    }
  }
}

TEST_CASE("weak_loss") {
  SUBCASE("absent class with silent scores is ~0") {
    const auto scores = column_tensor({0.0, 0.0, 0.0});
    CHECK(weak_loss(std::vector<double>{0.0}, scores) < 1.1e-7);
  }
  SUBCASE("present class pooled to 0.5 costs ln 2") {
    FrameTensor scores(FrameGrid{4, 0.064}, make_vocab(2), 0.1);
    scores(2, 0) = 0.5;
    scores(1, 1) = 0.5;
    const std::vector<double> labels{1.0, 1.0};
    CHECK(weak_loss(labels, scores) == doctest::Approx(kLn2).epsilon(1e-12));
  }
  SUBCASE("max pooling picks the strongest frame") {
    const auto scores = column_tensor({0.1, 0.9});
    const double expect = -std::log(0.9);
    CHECK(weak_loss(std::vector<double>{1.0}, scores) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("dimension error") {
    const auto scores = column_tensor({0.1});
    CHECK_THROWS_AS(weak_loss(std::vector<double>{1.0, 0.0}, scores),
                    ValidationError);
  }
}

TEST_CASE("consistency_loss") {
  rng::Engine g(13);
  const auto a = random_unit_tensor(g, 4, 2);

  SUBCASE("identical tensors cost nothing") {
    CHECK(consistency_loss(a, a) == 0.0);
  }
  SUBCASE("constant difference d costs d^2") {
    FrameTensor b = a;
    for (double& v : b.values()) v = std::min(1.0, v * 0.5 + 0.1);
    FrameTensor c = b;
    for (double& v : c.values()) v += 0.25;
    CHECK(consistency_loss(b, c) == doctest::Approx(0.0625).epsilon(1e-12));
  }
  SUBCASE("one differing entry out of four averages to 1/4") {
    FrameTensor s(FrameGrid{2, 0.064}, make_vocab(2), 0.0);
    FrameTensor t = s;
    t(1, 1) = 1.0;
    CHECK(consistency_loss(s, t) == doctest::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("combine_losses") {
  SUBCASE("zero combiner weights keep only the strong term") {
    const auto b = combine_losses(0.7, 5.0, 9.0, CombinerWeights{0, 0});
    CHECK(b.total == 0.7);
  }
  SUBCASE("unit weights add the three terms") {
    const auto b = combine_losses(1, 1, 1, CombinerWeights{1, 1});
    CHECK(b.total == 3.0);
  }
  SUBCASE("(0.5, 2) against (1, 2, 3) totals 8") {
    const auto b = combine_losses(1, 2, 3, CombinerWeights{0.5, 2});
    CHECK(b.total == 8.0);
    CHECK(b.strong == 1.0);
    CHECK(b.weak == 2.0);
    CHECK(b.consistency == 3.0);
  }
  SUBCASE("invariant: total recomposes from the parts") {
    rng::Engine g(17);
    for (int trial = 0; trial < 100; ++trial) {
      const CombinerWeights w{rng::uniform(g, 0, 3), rng::uniform(g, 0, 3)};
      const double s = rng::uniform(g, 0, 2), wk = rng::uniform(g, 0, 2),
                   c = rng::uniform(g, 0, 2);
      const auto b = combine_losses(s, wk, c, w);
      CHECK(b.total ==
            doctest::Approx(b.strong + w.w_weak * b.weak +
                            w.w_cons * b.consistency)
                .epsilon(1e-15));
    }
  }
  SUBCASE("non-finite inputs and negative weights are rejected") {
    CHECK_THROWS_AS(combine_losses(std::nan(""), 0, 0, CombinerWeights{}),
                    ValidationError);
    CHECK_THROWS_AS(combine_losses(0, 0, 0, CombinerWeights{-1, 0}),
                    ValidationError);
  }
}
