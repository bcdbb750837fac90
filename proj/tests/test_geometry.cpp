#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <limits>
#include <cmath>
#include <random>
#include <vector>

#include "msl/geometry.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace msl;
using msl::testing::rand_point;



TEST_CASE("distance basics") {
    CHECK(distance(Point{0, 0}, Point{3, 4}) == doctest::Approx(5.0));
    CHECK(distance(Point{7.5}, Point{7.5}) == 0.0);
    CHECK(distance(Point{1}, Point{-2}) == doctest::Approx(3.0));
    CHECK_THROWS_AS(distance(Point{1}, Point{1, 2}), std::invalid_argument);
}

TEST_CASE("distance triangle inequality on random triples") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const int dim = 1 + static_cast<int>(rng() % 3);
        const Point a = rand_point(rng, dim, -5, 5);
        const Point b = rand_point(rng, dim, -5, 5);
        const Point c = rand_point(rng, dim, -5, 5);
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
        CHECK(distance(a, b) == doctest::Approx(distance(b, a)));
    }
}

TEST_CASE("clamp_move") {
    const Point r1 = clamp_move(Point{0, 0}, Point{3, 4}, 10.0);
    CHECK(r1 == Point{3, 4});
    const Point r2 = clamp_move(Point{0, 0}, Point{3, 4}, 1.0);
    CHECK(r2[0] == doctest::Approx(0.6));
    CHECK(r2[1] == doctest::Approx(0.8));
    const Point r3 = clamp_move(Point{2, 2}, Point{2, 2}, 0.0);
    CHECK(r3 == Point{2, 2});
}

TEST_CASE("clamp_move stays on the segment within the limit") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> M(0.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        const Point from = rand_point(rng, 2, -5, 5);
        const Point to = rand_point(rng, 2, -5, 5);
        const double max_dist = M(rng);
        const Point got = clamp_move(from, to, max_dist);
        CHECK(distance(from, got) <= max_dist + 1e-12);
        // collinear and between the endpoints
        const double along = distance(from, got) + distance(got, to);
        CHECK(along == doctest::Approx(distance(from, to)).epsilon(1e-9));
    }
}

TEST_CASE("geometric_median fixed cases") {
    CHECK(geometric_median(std::vector<Point>{Point{2}}, Point{99}).position == Point{2});

    // 1D two-point tie: the whole segment minimizes, anchor inside wins
    const auto two = std::vector<Point>{Point{0}, Point{10}};
    CHECK(geometric_median(two, Point{3}).position[0] == doctest::Approx(3.0));
    CHECK(geometric_median(two, Point{-4}).position[0] == doctest::Approx(0.0));
    CHECK(geometric_median(two, Point{25}).position[0] == doctest::Approx(10.0));

    // equilateral triangle: symmetry pins the minimizer at the centroid
    const auto tri = std::vector<Point>{Point{0, 0}, Point{1, 0}, Point{0.5, 0.8660254}};
    const Point c = geometric_median(tri, Point{0, 0}).position;
    CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(c[1] == doctest::Approx(0.2886751).epsilon(1e-5));

    CHECK_THROWS_AS(geometric_median(std::vector<Point>{}, Point{0}), std::invalid_argument);
}

TEST_CASE("geometric_median matches grid search on random 2D sets") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> NP(2, 6);
    for (int i = 0; i < 10; ++i) {
        std::vector<Point> pts;
        const std::size_t np = NP(rng);
        for (std::size_t j = 0; j < np; ++j) pts.push_back(rand_point(rng, 2, 0, 1));
        const Point anchor = rand_point(rng, 2, 0, 1);
        const Point got = geometric_median(pts, anchor).position;
        const Point oracle = msl::testing::grid_median_2d(pts, 0.0, 1.0, 5e-3);
        CHECK(median_objective(pts, got) <= median_objective(pts, oracle) + 1e-6);
    }
}

TEST_CASE("geometric_median properties") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> NP(1, 9);
    for (int i = 0; i < 200; ++i) {
        const int dim = 1 + static_cast<int>(rng() % 2);
        std::vector<Point> pts;
        const std::size_t np = NP(rng);
        for (std::size_t j = 0; j < np; ++j) pts.push_back(rand_point(rng, dim, -4, 4));
        const Point anchor = rand_point(rng, dim, -4, 4);
        const Point med = geometric_median(pts, anchor).position;
        const double f = median_objective(pts, med);

        // no worse than every input point and the coordinate-wise mean
        Point mean{std::vector<double>(static_cast<std::size_t>(dim), 0.0)};
        for (const Point& p : pts)
            for (std::size_t k = 0; k < p.dim(); ++k)
                mean[k] += p[k] / static_cast<double>(pts.size());
        CHECK(f <= median_objective(pts, mean) + 1e-9);
        for (const Point& p : pts) CHECK(f <= median_objective(pts, p) + 1e-9);

        // translation equivariance
        const Point shift = rand_point(rng, dim, -3, 3);
        std::vector<Point> moved = pts;
        for (Point& p : moved)
            for (std::size_t k = 0; k < p.dim(); ++k) p[k] += shift[k];
        Point anchor2 = anchor;
        for (std::size_t k = 0; k < anchor2.dim(); ++k) anchor2[k] += shift[k];
        const Point med2 = geometric_median(moved, anchor2).position;
        for (std::size_t k = 0; k < med.dim(); ++k)
            CHECK(med2[k] == doctest::Approx(med[k] + shift[k]).epsilon(1e-7));
    }
}

TEST_CASE("1D median with odd count is the middle order statistic") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + 2 * (rng() % 5);
        std::vector<Point> pts;
        std::vector<double> vals;
        for (std::size_t j = 0; j < n; ++j) {
            pts.push_back(rand_point(rng, 1, -10, 10));
            vals.push_back(pts.back()[0]);
        }
        std::sort(vals.begin(), vals.end());
        const Point med = geometric_median(pts, rand_point(rng, 1, -10, 10)).position;
        CHECK(med[0] == vals[n / 2]);  // exact, no tolerance
    }
}

TEST_CASE("collinear 2D inputs reduce to the 1D rule along the line") {
    // points on the line y = 2x, even count: minimizer segment, anchor inside
    std::vector<Point> pts{Point{0, 0}, Point{1, 2}, Point{2, 4}, Point{3, 6}};
    const Point anchor{1.5, 3.0};
    const Point med = geometric_median(pts, anchor).position;
    CHECK(med[0] == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(med[1] == doctest::Approx(3.0).epsilon(1e-9));
    // anchor off the segment clamps to the nearer inner point
    const Point med2 = geometric_median(pts, Point{10, 20}).position;
    CHECK(med2[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("duplicated points weight the median") {
    // three copies at 0 vs one at 10: majority pins the median at 0
    std::vector<Point> pts{Point{0}, Point{0}, Point{0}, Point{10}};
    CHECK(geometric_median(pts, Point{8}).position[0] == doctest::Approx(0.0));
}
