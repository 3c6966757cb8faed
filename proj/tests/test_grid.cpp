#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "mhd/errors.hpp"
#include "mhd/grid.hpp"
#include "support.hpp"

using namespace mhd;

TEST_CASE("allocation sizes") {
  const auto st = allocate_state<double>(cube(16), SchemeParams{});
  CHECK(st.components().size() == 8);
  for (const auto* v : st.components()) CHECK(v->size() == 4096);
  CHECK(st.shape.orientation.canonical());
  CHECK(cube(128).cells() == 2097152u);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_WITH_AS(allocate_state<double>(GridShape{15, 16, 16}, SchemeParams{}),
                       doctest::Contains("dimension not multiple of 4"), Error);
  CHECK_THROWS_WITH_AS(cube(4).validate(), doctest::Contains("smaller than 8"), Error);
  CHECK_THROWS_AS((GridShape{16, 16, 16, 0.0}).validate(), Error);
  CHECK_NOTHROW((GridShape{8, 12, 16}).validate());
}

TEST_CASE("scheme parameter validation") {
  SchemeParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma = 1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = SchemeParams{};
  p.courant = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("orientation bookkeeping") {
  const Orientation o{};
  CHECK(o.axis(0) == Axis::X);
  CHECK(o.next().axis(0) == Axis::Y);
  CHECK(o.next().slot(Axis::X) == 2);
  CHECK(o.next().next().next() == o);
  CHECK(o.next().prev() == o);
  CHECK(o.next().str() == "YZX");
}

TEST_CASE("three forward transposes are the identity") {
  const auto st = testing::random_state<double>(GridShape{8, 12, 16}, 1);
  auto t = transpose(transpose(transpose(st)));
  CHECK(t.shape == st.shape);
  CHECK(t.bitwise_equal(st));
}

TEST_CASE("inverse undoes forward") {
  const auto st = testing::random_state<float>(GridShape{8, 12, 16}, 2);
  CHECK(transpose(transpose(st), TransposeDirection::Inverse).bitwise_equal(st));
  CHECK(transpose(transpose(st, TransposeDirection::Inverse)).bitwise_equal(st));
}

TEST_CASE("transpose moves the middle axis to the front") {
  const GridShape s{8, 12, 16};
  auto st = allocate_state<double>(s, SchemeParams{});
  for (int k = 0; k < s.n3; ++k)
    for (int j = 0; j < s.n2; ++j)
      for (int i = 0; i < s.n1; ++i) {
        st.rho[s.index(i, j, k)] = i + 10 * j + 100 * k;
        st.mom2[s.index(i, j, k)] = -(i + 10 * j + 100 * k);
        st.b3[s.index(i, j, k)] = 0.5 * (i + 10 * j + 100 * k);
      }
  for (int tile : {1, 3, 8, 64}) {
    const auto t = transpose(st, TransposeDirection::Forward, parallel::Executor(2), tile);
    CHECK(t.shape.n1 == 12);
    CHECK(t.shape.n2 == 16);
    CHECK(t.shape.n3 == 8);
    CHECK(t.shape.orientation.axis(0) == Axis::Y);
    bool ok = true;
    for (int k = 0; k < s.n3; ++k)
      for (int j = 0; j < s.n2; ++j)
        for (int i = 0; i < s.n1; ++i) {
          const std::size_t dst = t.shape.index(j, k, i);
          const double v = i + 10 * j + 100 * k;
          ok = ok && t.rho[dst] == v && t.mom1[dst] == -v && t.b2[dst] == 0.5 * v;
        }
    CHECK(ok);
  }
}

TEST_CASE("transpose preserves sums exactly") {
  const auto st = testing::random_state<double>(cube(16), 3);
  const auto t = transpose(st);
  auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sorted(t.rho) == sorted(st.rho));
  CHECK(sorted(t.mom1) == sorted(st.mom2));
  const Totals a = totals(st), b = totals(t);
  CHECK(std::memcmp(&a, &b, sizeof(Totals)) == 0);
  const Totals c = totals(transpose(t));
  CHECK(std::memcmp(&a, &c, sizeof(Totals)) == 0);
}

TEST_CASE("transpose_into refuses aliasing") {
  auto st = testing::random_state<double>(cube(8), 4);
  CHECK_THROWS_AS(transpose_into(st, st), Error);
}

TEST_CASE("face_to_center averages the bounding faces") {
  auto st = allocate_state<double>(cube(8), SchemeParams{});
  std::fill(st.b1.begin(), st.b1.end(), 3.0);
  auto c = face_to_center(st);
  CHECK(max_abs(c[0].values) == 3.0);
  CHECK(*std::min_element(c[0].values.begin(), c[0].values.end()) == 3.0);

  std::fill(st.b1.begin(), st.b1.end(), 0.0);
  st.b1[st.shape.index(2, 1, 1)] = 1.0;
  st.b1[st.shape.index(3, 1, 1)] = 2.0;
  c = face_to_center(st);
  CHECK(c[0].values[st.shape.index(2, 1, 1)] == 1.5);
}

TEST_CASE("face_to_center matches a direct two-point loop") {
  const auto st = testing::random_state<double>(GridShape{8, 12, 16}, 5);
  const auto& s = st.shape;
  const auto c = face_to_center(st, parallel::Executor(3));
  double worst = 0.0;
  for (int k = 0; k < s.n3; ++k)
    for (int j = 0; j < s.n2; ++j)
      for (int i = 0; i < s.n1; ++i) {
        const std::size_t n = s.index(i, j, k);
        worst = std::max(worst, std::abs(c[0].values[n] - (st.b1[n] + st.b1[s.index((i + 1) % s.n1, j, k)]) / 2));
        worst = std::max(worst, std::abs(c[1].values[n] - (st.b2[n] + st.b2[s.index(i, (j + 1) % s.n2, k)]) / 2));
        worst = std::max(worst, std::abs(c[2].values[n] - (st.b3[n] + st.b3[s.index(i, j, (k + 1) % s.n3)]) / 2));
      }
  CHECK(worst == 0.0);
}

TEST_CASE("face_to_center reproduces a linear field away from the seam") {
  auto st = allocate_state<double>(cube(8), SchemeParams{});
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i) st.b1[st.shape.index(i, j, k)] = 2.0 * i;
  const auto c = face_to_center(st);
  for (int i = 0; i < 7; ++i) CHECK(c[0].values[st.shape.index(i, 3, 3)] == 2.0 * i + 1.0);
}

TEST_CASE("divergence of a uniform field is zero") {
  auto st = allocate_state<double>(cube(8), SchemeParams{});
  std::fill(st.b1.begin(), st.b1.end(), 0.3);
  std::fill(st.b2.begin(), st.b2.end(), -1.1);
  std::fill(st.b3.begin(), st.b3.end(), 2.0);
  CHECK(max_abs(discrete_divergence(st).values) == 0.0);
}

TEST_CASE("divergence of a discrete curl vanishes to roundoff") {
  // b = curl A with A3 on z-edges: A3(i,j) = sin(2 pi i / n1) * cos(2 pi j / n2).
  const GridShape s{16, 8, 8, 0.25};
  auto st = allocate_state<double>(s, SchemeParams{});
  auto a3 = [&](int i, int j) {
    return std::sin(2 * std::numbers::pi * i / s.n1) * std::cos(2 * std::numbers::pi * j / s.n2);
  };
  for (int k = 0; k < s.n3; ++k)
    for (int j = 0; j < s.n2; ++j)
      for (int i = 0; i < s.n1; ++i) {
        const std::size_t n = s.index(i, j, k);
        st.b1[n] = (a3(i, j + 1) - a3(i, j)) / s.dx;
        st.b2[n] = -(a3(i + 1, j) - a3(i, j)) / s.dx;
      }
  const double bmax = max_abs_b(st);
  CHECK(bmax > 1.0);
  CHECK(max_abs(discrete_divergence(st).values) <= 4 * 2.3e-16 * bmax / s.dx);
}

TEST_CASE("divergence of a ramp") {
  // b1 = i: each interior cell sees the constant slope 1/dx and the seam
  // cell the jump back from n-1 to 0; the total cancels.
  const GridShape s{8, 8, 8, 0.5};
  auto st = allocate_state<double>(s, SchemeParams{});
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i) st.b1[s.index(i, j, k)] = i;
  const auto div = discrete_divergence(st);
  for (int i = 0; i < 7; ++i) CHECK(div.values[s.index(i, 2, 5)] == doctest::Approx(1.0 / s.dx));
  CHECK(div.values[s.index(7, 2, 5)] == doctest::Approx(-7.0 / s.dx));
  double sum = 0.0;
  for (double d : div.values) sum += d;
  CHECK(sum == doctest::Approx(0.0));
}

TEST_CASE("totals of a uniform box") {
  auto st = allocate_state<double>(cube(16), SchemeParams{});
  std::fill(st.rho.begin(), st.rho.end(), 1.0);
  CHECK(totals(st).mass == 4096.0);
  const GridShape half = cube(16, 0.5);
  auto st2 = allocate_state<double>(half, SchemeParams{});
  std::fill(st2.rho.begin(), st2.rho.end(), 1.0);
  CHECK(totals(st2).mass == 512.0);
}

TEST_CASE("totals use a fixed pairwise order") {
  const auto st = testing::random_state<double>(GridShape{8, 12, 16}, 6);
  std::vector<double> rho(st.rho.begin(), st.rho.end());
  const double oracle = testing::pairwise_sum(rho, 0, rho.size());
  double plain = 0.0;
  for (double r : rho) plain += r;
  for (int w : {1, 2, 8}) {
    const Totals t = totals(st, parallel::Executor(w));
    CHECK(t.mass == oracle);
    CHECK(t.mass == doctest::Approx(plain).epsilon(1e-13));
  }
}

TEST_CASE("momentum totals are reported in physical order") {
  auto st = allocate_state<double>(GridShape{8, 12, 16}, SchemeParams{});
  std::fill(st.mom1.begin(), st.mom1.end(), 1.0);
  std::fill(st.mom2.begin(), st.mom2.end(), 2.0);
  std::fill(st.mom3.begin(), st.mom3.end(), 3.0);
  const auto t = transpose(st);
  const double cells = static_cast<double>(st.shape.cells());
  for (const auto& state : {st, t}) {
    const Totals tt = totals(state);
    CHECK(tt.momentum[0] == cells);
    CHECK(tt.momentum[1] == 2 * cells);
    CHECK(tt.momentum[2] == 3 * cells);
  }
}
