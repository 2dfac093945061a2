#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "ozf/errors.hpp"
#include "ozf/linprog.hpp"

using namespace ozf;

TEST_SUITE("linprog") {

TEST_CASE("simple bounded optimum") {
    // min -x - y  s.t.  x + y <= 4, x <= 3, y <= 2.
    LpProblem p;
    p.n = 2;
    p.c = {-1.0, -1.0};
    p.rows.push_back({{1.0, 1.0}, LpRelation::le, 4.0});
    p.rows.push_back({{1.0, 0.0}, LpRelation::le, 3.0});
    p.rows.push_back({{0.0, 1.0}, LpRelation::le, 2.0});
    const auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == doctest::Approx(-4.0));
    CHECK(r.x[0] + r.x[1] == doctest::Approx(4.0));
}

TEST_CASE("equality and ge rows engage phase one") {
    // min x + 2y  s.t.  x + y = 3, x - y >= 1.
    LpProblem p;
    p.n = 2;
    p.c = {1.0, 2.0};
    p.rows.push_back({{1.0, 1.0}, LpRelation::eq, 3.0});
    p.rows.push_back({{1.0, -1.0}, LpRelation::ge, 1.0});
    const auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.x[0] == doctest::Approx(3.0));
    CHECK(r.x[1] == doctest::Approx(0.0));
    CHECK(r.objective == doctest::Approx(3.0));
}

TEST_CASE("negative rhs rows are normalized") {
    // min x  s.t.  -x <= -2  (x >= 2).
    LpProblem p;
    p.n = 1;
    p.c = {1.0};
    p.rows.push_back({{-1.0}, LpRelation::le, -2.0});
    const auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.x[0] == doctest::Approx(2.0));
}

TEST_CASE("infeasible problems produce a verifiable Farkas certificate") {
    // x >= 2 and x <= 1 cannot hold together.
    LpProblem p;
    p.n = 1;
    p.c = {0.0};
    p.rows.push_back({{1.0}, LpRelation::ge, 2.0});
    p.rows.push_back({{1.0}, LpRelation::le, 1.0});
    const auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::infeasible);
    CHECK(verify_farkas(p, r.farkas));

    // Equalities: x + y = 1, x + y = 2.
    LpProblem q;
    q.n = 2;
    q.c = {0.0, 0.0};
    q.rows.push_back({{1.0, 1.0}, LpRelation::eq, 1.0});
    q.rows.push_back({{1.0, 1.0}, LpRelation::eq, 2.0});
    const auto rq = solve_lp(q);
    REQUIRE(rq.status == LpStatus::infeasible);
    CHECK(verify_farkas(q, rq.farkas));
}

TEST_CASE("unbounded detection") {
    LpProblem p;
    p.n = 1;
    p.c = {-1.0};
    p.rows.push_back({{1.0}, LpRelation::ge, 0.0});
    CHECK(solve_lp(p).status == LpStatus::unbounded);
}

TEST_CASE("zero-variable problems") {
    LpProblem p;
    p.n = 0;
    p.rows.push_back({{}, LpRelation::le, 1.0});
    CHECK(solve_lp(p).status == LpStatus::optimal);

    LpProblem q;
    q.n = 0;
    q.rows.push_back({{}, LpRelation::ge, 1.0});  // 0 >= 1
    const auto r = solve_lp(q);
    REQUIRE(r.status == LpStatus::infeasible);
    CHECK(verify_farkas(q, r.farkas));
}

TEST_CASE("two-variable problems match a vertex-enumeration oracle") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.2, 1.5);
    for (int rep = 0; rep < 120; ++rep) {
        LpProblem p;
        p.n = 2;
        p.c = {dist(rng), dist(rng)};
        const std::size_t m = 2 + rep % 4;
        std::vector<double> x0{pos(rng), pos(rng)};
        for (std::size_t i = 0; i < m; ++i) {
            LpRow row{{dist(rng), dist(rng)}, LpRelation::le, 0.0};
            row.b = row.a[0] * x0[0] + row.a[1] * x0[1] + pos(rng);
            p.rows.push_back(std::move(row));
        }
        // Box rows keep the oracle finite and the problem bounded.
        p.rows.push_back({{1.0, 0.0}, LpRelation::le, 10.0});
        p.rows.push_back({{0.0, 1.0}, LpRelation::le, 10.0});

        // Oracle: every intersection of two constraint boundaries (axes
        // included) that satisfies all rows is a candidate vertex.
        std::vector<std::array<double, 3>> lines;  // a0 x + a1 y = b
        for (const auto& row : p.rows) lines.push_back({row.a[0], row.a[1], row.b});
        lines.push_back({1.0, 0.0, 0.0});
        lines.push_back({0.0, 1.0, 0.0});
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lines.size(); ++i) {
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                const double det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
                if (std::abs(det) < 1e-9) continue;
                const double x = (lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det;
                const double y = (lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det;
                if (x < -1e-9 || y < -1e-9) continue;
                bool ok = true;
                for (const auto& row : p.rows)
                    ok = ok && row.a[0] * x + row.a[1] * y <= row.b + 1e-8;
                if (ok) best = std::min(best, p.c[0] * x + p.c[1] * y);
            }
        }
        REQUIRE(best < std::numeric_limits<double>::infinity());

        const auto r = solve_lp(p);
        REQUIRE(r.status == LpStatus::optimal);
        CHECK(r.objective == doctest::Approx(best).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("random feasible problems solve to verifiable optima") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.1, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 1 + rep % 5;
        const std::size_t m = 1 + rep % 7;
        // Feasible by construction: random x0 >= 0, rows a'x <= a'x0 + slack.
        std::vector<double> x0(n);
        for (double& v : x0) v = pos(rng);
        LpProblem p;
        p.n = n;
        p.c.resize(n);
        for (double& v : p.c) v = dist(rng);
        for (std::size_t i = 0; i < m; ++i) {
            LpRow row;
            row.a.resize(n);
            double ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                row.a[j] = dist(rng);
                ax += row.a[j] * x0[j];
            }
            row.rel = LpRelation::le;
            row.b = ax + pos(rng);
            p.rows.push_back(std::move(row));
        }
        const auto r = solve_lp(p);
        if (r.status != LpStatus::optimal) {
            CHECK(r.status == LpStatus::unbounded);  // possible with random c
            continue;
        }
        // Feasibility of the reported point.
        for (const auto& row : p.rows) {
            double ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) ax += row.a[j] * r.x[j];
            CHECK(ax <= row.b + 1e-7);
        }
        for (double v : r.x) CHECK(v >= -1e-9);
        // Not worse than the seed point.
        double cx0 = 0.0;
        for (std::size_t j = 0; j < n; ++j) cx0 += p.c[j] * x0[j];
        CHECK(r.objective <= cx0 + 1e-7);
    }
}

}  // TEST_SUITE
