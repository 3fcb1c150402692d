#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cvent/sweep.hpp"

using namespace cvent;
constexpr double kPi = std::numbers::pi;

TEST_CASE("axis parsing") {
    const Axis a = parse_axis("theta:0:1.5:4");
    CHECK(a.param == Param::theta);
    CHECK(a.start == 0.0);
    CHECK(a.stop == 1.5);
    CHECK(a.count == 4);
    CHECK(a.value(0) == 0.0);
    CHECK(a.value(1) == doctest::Approx(0.5));
    CHECK(a.value(3) == 1.5);
    CHECK(parse_axis("phi-b:0:1:2").param == Param::phi_b);
    CHECK(parse_axis("nbar:2:2:1").value(0) == 2.0);
    CHECK_THROWS_AS(parse_axis("theta:0:1"), DomainError);
    CHECK_THROWS_AS(parse_axis("gamma:0:1:3"), DomainError);
    CHECK_THROWS_AS(parse_axis("tau:x:1:3"), DomainError);
    CHECK_THROWS_AS(parse_axis("tau:0:1:3.5"), DomainError);
}

TEST_CASE("grid validation") {
    SweepGrid g;
    g.axes = {Axis{Param::tau, 0.0, 0.4, 3}};
    CHECK_NOTHROW(validate(g));
    g.axes = {Axis{Param::tau, 0.0, 0.5, 3}};
    CHECK_THROWS_AS(validate(g), DomainError);
    g.axes = {Axis{Param::u, 0.0, 1.0, 3}};
    CHECK_THROWS_AS(validate(g), DomainError);
    g.axes = {Axis{Param::nbar, 1.0, 0.0, 3}};
    CHECK_THROWS_AS(validate(g), DomainError);
    g.axes = {Axis{Param::nbar, 0.0, 1.0, 0}};
    CHECK_THROWS_AS(validate(g), DomainError);
    g.axes = {Axis{Param::nbar, 0.0, 1.0, 2}, Axis{Param::nbar, 0.0, 1.0, 2}};
    CHECK_THROWS_AS(validate(g), DomainError);
}

TEST_CASE("grid order: first axis slowest") {
    SweepGrid g;
    g.fixed.tau = 0.2;
    g.axes = {Axis{Param::nbar, 0.0, 1.0, 2}, Axis{Param::theta, 0.1, 0.3, 3}};
    CHECK(point_count(g) == 6);
    CHECK(grid_point(g, 0).nbar == 0.0);
    CHECK(grid_point(g, 0).theta == 0.1);
    CHECK(grid_point(g, 2).theta == 0.3);
    CHECK(grid_point(g, 3).nbar == 1.0);
    CHECK(grid_point(g, 3).theta == 0.1);
    CHECK(grid_point(g, 5).tau == 0.2);
}

TEST_CASE("records and output formats") {
    SweepGrid g;
    g.fixed = ScenarioParams<double>{0.25, 1.0, 0.0, 0.0, kPi / 4, 0.0};
    g.axes = {Axis{Param::nbar, 0.0, 0.0, 1}};
    const auto recs = run_sweep(g, SweepColumns{true});
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].negativity == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(2 * recs[0].xi_minus == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    REQUIRE(recs[0].critical.has_value());
    CHECK(recs[0].critical->value == doctest::Approx(0.5));

    std::ostringstream csv;
    write_records(csv, recs, SweepColumns{true}, OutputFormat::csv);
    const std::string text = csv.str();
    CHECK(text.rfind("tau,u,nbar,theta,phi,phi_b,N,xi_minus,nbar_c,nbar_c_flag\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.find(",0.5,") != std::string::npos);
    CHECK(text.find(",finite\n") != std::string::npos);

    std::ostringstream jl;
    write_records(jl, recs, SweepColumns{false}, OutputFormat::jsonl);
    CHECK(jl.str().rfind("{\"tau\":0.25,\"u\":1,", 0) == 0);
    CHECK(jl.str().find("\"N\":0.5") != std::string::npos);
    CHECK(jl.str().find("nbar_c") == std::string::npos);

    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(parse_format("jsonl") == OutputFormat::jsonl);
    CHECK_FALSE(parse_format("xml").has_value());
}

TEST_CASE("infinite thresholds are written as strings in JSONL") {
    SweepGrid g;
    g.fixed = ScenarioParams<double>{0.49999, 1.0, 0.0, 0.0, kPi / 4, 0.0};
    const auto recs = run_sweep(g, SweepColumns{true});
    std::ostringstream jl;
    write_records(jl, recs, SweepColumns{true}, OutputFormat::jsonl);
    CHECK(jl.str().find("\"nbar_c\":\"inf\"") != std::string::npos);
    CHECK(jl.str().find("\"nbar_c_flag\":\"infinite-threshold\"") != std::string::npos);
}

TEST_CASE("sweeps are deterministic") {
    const auto f = figure_preset("2a", 7, 5);
    REQUIRE(f.has_value());
    std::ostringstream a, b;
    write_records(a, run_sweep(f->grid, f->columns), f->columns, OutputFormat::csv);
    write_records(b, run_sweep(f->grid, f->columns), f->columns, OutputFormat::csv);
    CHECK(a.str() == b.str());
}

TEST_CASE("figure presets") {
    CHECK_FALSE(figure_preset("9z", 3, 3).has_value());
    for (const char* name : {"1a", "1b", "1c", "2a", "2b", "3", "3b"}) {
        const auto f = figure_preset(name, 11, 9);
        REQUIRE(f.has_value());
        CHECK_NOTHROW(validate(f->grid));
        CHECK(point_count(f->grid) == 99);
    }

    SUBCASE("1a: no entanglement once nbar reaches tau / (1 - 2 tau)") {
        const auto f = figure_preset("1a", 31, 21);
        const double nc = 0.2 / 0.6;
        bool some_entangled = false;
        for (const auto& r : run_sweep(f->grid, f->columns)) {
            if (r.params.nbar >= nc) CHECK(r.negativity == 0.0);
            if (r.negativity > 0) some_entangled = true;
        }
        CHECK(some_entangled);
    }
    SUBCASE("1a-1c: the entangled region shrinks with nbar at every theta") {
        for (const char* name : {"1a", "1b", "1c"}) {
            const auto f = figure_preset(name, 21, 11);
            const auto recs = run_sweep(f->grid, f->columns);
            for (int j = 0; j < 11; ++j)
                for (int i = 1; i < 21; ++i)
                    CHECK(recs[i * 11 + j].negativity <= recs[(i - 1) * 11 + j].negativity + 1e-14);
        }
    }
    SUBCASE("2a, 2b: entangled region broadens with u") {
        for (const char* name : {"2a", "2b"}) {
            const auto f = figure_preset(name, 20, 41);
            const auto recs = run_sweep(f->grid, f->columns);
            int prev = -1;
            for (int i = 0; i < 20; ++i) {
                int count = 0;
                for (int j = 0; j < 41; ++j) count += recs[i * 41 + j].negativity > 0;
                CHECK(count >= prev);
                prev = count;
            }
            CHECK(prev > 0);
        }
    }
    SUBCASE("3: critical noise peaks at 2 on the 50:50 line and is flat at u = 1") {
        const auto f = figure_preset("3", 11, 5);
        REQUIRE(f->columns.critical);
        const auto recs = run_sweep(f->grid, f->columns);
        double best = 0;
        for (const auto& r : recs)
            if (r.critical->kind == ThresholdKind::finite) best = std::max(best, r.critical->value);
        CHECK(best == doctest::Approx(2.0).epsilon(1e-9));
        for (const auto& r : recs) {
            if (std::abs(r.params.theta - kPi / 4) < 1e-12) CHECK(r.critical->value == doctest::Approx(2.0).epsilon(1e-9));
            if (r.params.u == 1.0 && r.critical->kind == ThresholdKind::finite)
                CHECK(r.critical->value == doctest::Approx(2.0).epsilon(1e-9));
        }
    }
}
