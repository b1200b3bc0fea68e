#include "torwalk/torus.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace torwalk;

TEST(Torus, CanonicalRepExamples) {
  TorusGeometry g10(10, 1);
  EXPECT_EQ(canonical_rep({7}, g10), (LatticePoint{-3}));
  EXPECT_EQ(canonical_rep({-5}, g10), (LatticePoint{5}));
  TorusGeometry g8(8, 2);
  EXPECT_EQ(canonical_rep({0, 0}, g8), (LatticePoint{0, 0}));
  EXPECT_EQ(canonical_rep({4, -4}, g8), (LatticePoint{4, 4}));
}

TEST(Torus, CanonicalRepIdempotent) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
  for (std::int64_t L : {2, 3, 8, 9, 17}) {
    TorusGeometry g(L, 3);
    for (int trial = 0; trial < 200; ++trial) {
      LatticePoint x{coord(rng), coord(rng), coord(rng)};
      auto c = canonical_rep(x, g);
      EXPECT_EQ(canonical_rep(c, g), c);
      for (auto v : c) {
        EXPECT_GT(2 * v, -L);
        EXPECT_LE(2 * v, L);
      }
      for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(detail::mod_floor(c[i] - x[i], L), 0);
    }
  }
}

TEST(Torus, NegationUpToBoundary) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> coord(-50, 50);
  for (std::int64_t L : {7, 10}) {
    TorusGeometry g(L, 2);
    for (int trial = 0; trial < 200; ++trial) {
      LatticePoint x{coord(rng), coord(rng)};
      auto a = canonical_rep(x, g);
      LatticePoint mx{-x[0], -x[1]};
      auto b = canonical_rep(mx, g);
      for (std::size_t i = 0; i < 2; ++i) {
        if (2 * a[i] == L)
          EXPECT_EQ(b[i], a[i]);  // both map to +L/2
        else
          EXPECT_EQ(b[i], -a[i]);
      }
    }
  }
}

TEST(Torus, PeriodicNormExamples) {
  TorusGeometry g10(10, 1);
  EXPECT_DOUBLE_EQ(periodic_norm({7}, 2.0, g10), 3.0);
  TorusGeometry g10d2(10, 2);
  EXPECT_DOUBLE_EQ(periodic_norm({5, 5}, 1.0, g10d2), 10.0);
  TorusGeometry g12(12, 1);
  EXPECT_DOUBLE_EQ(periodic_norm({12}, 2.0, g12), 0.0);
  EXPECT_DOUBLE_EQ(
      periodic_norm({3, -4}, std::numeric_limits<double>::infinity(), g10d2), 4.0);
}

TEST(Torus, PeriodicNormZeroIffZeroModL) {
  TorusGeometry g(6, 2);
  for_each_point(g, [&](std::int64_t, const LatticePoint& x) {
    const bool zero = x[0] == 0 && x[1] == 0;
    EXPECT_EQ(periodic_norm(x, 2.0, g) == 0.0, zero);
  });
}

TEST(Torus, NormSymmetryAndTriangle) {
  TorusGeometry g(9, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> coord(-20, 20);
  for (int trial = 0; trial < 300; ++trial) {
    LatticePoint x{coord(rng), coord(rng)}, y{coord(rng), coord(rng)},
        z{coord(rng), coord(rng)};
    LatticePoint xy{x[0] - y[0], x[1] - y[1]}, yx{y[0] - x[0], y[1] - x[1]};
    EXPECT_DOUBLE_EQ(periodic_norm(xy, 2.0, g), periodic_norm(yx, 2.0, g));
    LatticePoint xz{x[0] - z[0], x[1] - z[1]}, zy{z[0] - y[0], z[1] - y[1]};
    EXPECT_LE(periodic_norm(xy, 2.0, g),
              periodic_norm(xz, 2.0, g) + periodic_norm(zy, 2.0, g) + 1e-12);
  }
}

TEST(Torus, EnumerationExamples) {
  TorusGeometry g2(2, 1);
  auto pts = lattice_points(g2);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0], (LatticePoint{0}));
  EXPECT_EQ(pts[1], (LatticePoint{1}));

  TorusGeometry g3(3, 1);
  pts = lattice_points(g3);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0], (LatticePoint{-1}));
  EXPECT_EQ(pts[1], (LatticePoint{0}));
  EXPECT_EQ(pts[2], (LatticePoint{1}));

  TorusGeometry g22(2, 2);
  pts = lattice_points(g22);
  ASSERT_EQ(pts.size(), 4u);
  std::set<LatticePoint> uniq(pts.begin(), pts.end());
  EXPECT_EQ(uniq.size(), 4u);
}

TEST(Torus, IndexRoundTripAndEnumerationOrder) {
  for (std::int64_t L : {2, 5, 8}) {
    for (std::int64_t d : {1, 2, 3}) {
      TorusGeometry g(L, d);
      auto pts = lattice_points(g);
      for (std::int64_t i = 0; i < g.N; ++i) {
        EXPECT_EQ(point_to_index(pts[std::size_t(i)], g), i);
        EXPECT_EQ(index_to_point(i, g), pts[std::size_t(i)]);
      }
      // row-major: last coordinate fastest, ascending
      for (std::int64_t i = 0; i + 1 < g.N; ++i) {
        const auto &a = pts[std::size_t(i)], &b = pts[std::size_t(i) + 1];
        EXPECT_TRUE(std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                 b.end()));
      }
    }
  }
}

TEST(Torus, ForEachPointMatchesEnumeration) {
  TorusGeometry g(4, 2);
  auto pts = lattice_points(g);
  for_each_point(g, [&](std::int64_t idx, const LatticePoint& x) {
    EXPECT_EQ(x, pts[std::size_t(idx)]);
  });
}

TEST(Torus, SizeCap) {
  EXPECT_NO_THROW(TorusGeometry(256, 3));
  EXPECT_THROW(TorusGeometry(1024, 3, 1 << 20), ConfigError);
  EXPECT_THROW(TorusGeometry(1, 1), ConfigError);
  EXPECT_THROW(TorusGeometry(4, 0), ConfigError);
}

TEST(Torus, DimensionMismatch) {
  TorusGeometry g(8, 2);
  EXPECT_THROW(canonical_rep({1}, g), ConfigError);
  EXPECT_THROW(periodic_norm({1, 2, 3}, 2.0, g), ConfigError);
  EXPECT_THROW(periodic_norm({1, 2}, 0.5, g), ConfigError);
}
