#include <cmath>
#include <variant>

#include <doctest.h>

#include "perspectiva/errors.hpp"
#include "perspectiva/projector.hpp"
#include "perspectiva/scene_dsl.hpp"

#include "support.hpp"

using namespace perspectiva;
using testsupport::Rng;

namespace {

ViewerFrame frame(double H, double D) {
    ViewerFrame f;
    f.eye_height_H = H;
    f.canvas_distance_D = D;
    f.canvas_width = 4.0 * D;
    f.canvas_height = 4.0 * D;
    return f;
}

Scene fixture_scene(const std::string& name) {
    auto parsed = parse_scene(testsupport::read_file(testsupport::fixture_path(name)));
    REQUIRE(std::holds_alternative<Scene>(parsed));
    return std::get<Scene>(std::move(parsed));
}

const CanvasSegment& find_segment(const ProjectionReport& r, const std::string& id) {
    for (const CanvasSegment& s : r.segments)
        if (s.source_id == id) return s;
    FAIL("no segment with source ", id);
    static CanvasSegment dummy;
    return dummy;
}

}  // namespace

TEST_CASE("segments in front of the eye project by similar triangles") {
    const ViewerFrame f = frame(100.0, 200.0);
    const auto r = project_segment(f, {50.0, 400.0, 0.0}, {50.0, 400.0, 180.0}, "post",
                                   Style::figure);
    REQUIRE(std::holds_alternative<CanvasSegment>(r));
    const CanvasSegment& s = std::get<CanvasSegment>(r);
    // x / y and (z - H) / y, worked by hand
    CHECK(s.start.u == 0.125);
    CHECK(s.start.w == -0.25);
    CHECK(s.end.u == 0.125);
    CHECK(s.end.w == 0.2);
    CHECK(s.source_id == "post");
    CHECK(s.style == Style::figure);
}

TEST_CASE("segments fully behind the viewer are rejected") {
    const ViewerFrame f = frame(100.0, 200.0);
    const auto r = project_segment(f, {0.0, -50.0, 10.0}, {30.0, -400.0, 10.0});
    REQUIRE(std::holds_alternative<Rejection>(r));
    CHECK(std::get<Rejection>(r).reason == "behind viewer");
}

TEST_CASE("a segment along one sight ray has no usable image") {
    const ViewerFrame f = frame(10.0, 10.0);
    const auto r = project_segment(f, {1.0, 1.0, 10.0}, {2.0, 2.0, 10.0});
    REQUIRE(std::holds_alternative<Rejection>(r));
    CHECK(std::get<Rejection>(r).reason == "degenerate ray");

    CHECK_THROWS_AS(project_segment(f, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("crossing segments are clipped just in front of the eye") {
    const ViewerFrame f = frame(10.0, 10.0);
    const Point3 a{-2.0, -1.0, 50.0}, b{2.0, 1.0, 50.0};
    const auto r = project_segment(f, a, b, "beam");
    REQUIRE(std::holds_alternative<CanvasSegment>(r));
    const CanvasSegment& s = std::get<CanvasSegment>(r);

    // the surviving endpoint keeps its exact image: u = 2/1, w = (50-10)/1
    CHECK(s.end.u == 2.0);
    CHECK(s.end.w == 40.0);

    // the clipped end races towards infinity along the image line of ab:
    // both returned points must sit on the join of two far-forward images
    const auto img = [&](double t) {
        const double x = a.x + t * (b.x - a.x), y = a.y + t * (b.y - a.y),
                     z = a.z + t * (b.z - a.z);
        return CanvasPoint{x / y, (z - f.eye_height_H) / y};
    };
    const CanvasLine carrier = join(CanvasElement{img(0.9)}, CanvasElement{img(0.99)});
    CHECK(std::fabs(s.start.w) > 1e8);  // blown up by the tiny clip depth
    CHECK(incident(CanvasElement{s.start}, carrier));
    CHECK(incident(CanvasElement{s.end}, carrier));
}

TEST_CASE("the classic direction families land on their tabulated points") {
    // beams on the ceiling plane one normalised unit above the eye,
    // anchored per family, in physical centimetres
    const double H = 116.0, D = 232.0;
    Scene s;
    s.frame = frame(H, D);
    const double zc = H + D;  // ceiling one normalised unit up
    // straight-ahead family: x/D in {-1, 0, 1}
    for (double xn : {-1.0, 0.0, 1.0})
        s.lines.push_back({{xn * D, D, zc}, {0.0, 1.0, 0.0}, {}});
    // diagonal family x = y - k
    for (double k : {0.0, 1.0, 2.0})
        s.lines.push_back({{-k * D, 0.0, zc}, {1.0, 1.0, 0.0}, {}});
    // oblique families x = (y - k) / m
    for (double m : {2.0, 4.0})
        for (double k : {1.0, 2.0, 3.0})
            s.lines.push_back({{-k * D / m, 0.0, zc}, {1.0, m, 0.0}, {}});

    const auto families = analyze_families(s, 12);
    REQUIRE(families.size() == 4);

    const auto expect_at = [&](const Direction& d, double u) {
        const auto it = families.find(direction_class_key(d));
        REQUIRE(it != families.end());
        const FamilyEntry& fam = it->second;
        REQUIRE(is_proper(fam.point));
        CHECK(std::fabs(proper(fam.point).u - u) <= 1e-12);
        CHECK(std::fabs(proper(fam.point).w) <= 1e-12);
        CHECK(fam.consistent);
        REQUIRE(fam.meet_deviation.has_value());
        CHECK(*fam.meet_deviation <= 1e-12);
    };
    expect_at({0.0, 1.0, 0.0}, 0.0);
    expect_at({1.0, 1.0, 0.0}, 1.0);
    expect_at({1.0, 2.0, 0.0}, 0.5);
    expect_at({1.0, 4.0, 0.0}, 0.25);
}

TEST_CASE("projecting the panel fixture") {
    const Scene scene = fixture_scene("flagellazione.scene");
    const ProjectionReport r = project_scene(scene);

    CHECK(r.braccio_cm == 58.0);
    CHECK(r.horizon_line.a == 0.0);
    CHECK(r.horizon_line.b == 0.0);
    CHECK(r.horizon_line.c == 1.0);

    SUBCASE("figures project where the annotation oracle puts them") {
        const CanvasSegment& fg = find_segment(r, "figure0/right-foreground");
        CHECK(fg.start.u == doctest::Approx(30.0 / 290.0).epsilon(1e-14));
        CHECK(fg.start.w == doctest::Approx(-60.0 / 290.0).epsilon(1e-14));
        CHECK(fg.end.w == doctest::Approx(114.0 / 290.0).epsilon(1e-14));
        const CanvasSegment& bg = find_segment(r, "figure1/left-rear");
        CHECK(bg.start.u == doctest::Approx(-40.0 / 435.0).epsilon(1e-14));
        CHECK(bg.end.w == doctest::Approx(114.0 / 435.0).epsilon(1e-14));
    }

    SUBCASE("the floor fixes the distance point at one unit") {
        REQUIRE(r.distance_point_status == DistancePointStatus::present);
        REQUIRE(r.distance_point.has_value());
        CHECK(std::fabs(r.distance_point->point.u - 1.0) <= 1e-12);
        CHECK(std::fabs(r.distance_point->point.w) <= 1e-12);
        CHECK(r.distance_point->eye_distance_cm == doctest::Approx(145.0).epsilon(1e-12));
        CHECK(distance_point(r).eye_distance_cm == r.distance_point->eye_distance_cm);
    }

    SUBCASE("tile corners agree with a direct ray-plane intersection") {
        const TiledFloor& f = scene.floors[0];
        REQUIRE(r.tile_corners.size() ==
                static_cast<size_t>((f.columns + 1) * (f.rows + 1)));
        const double D = scene.frame.canvas_distance_D, H = scene.frame.eye_height_H;
        size_t idx = 0;
        for (int i = 0; i <= f.rows; ++i) {
            for (int j = 0; j <= f.columns; ++j, ++idx) {
                const double x = -f.columns * f.tile_width_s_x / 2.0 +
                                 j * f.tile_width_s_x;
                const double y = D + i * f.tile_depth_s_y;
                // eye ray to (x, y, 0) meets the canvas at t = D / y
                const double t = D / y;
                const CanvasPoint c = r.tile_corners[idx];
                CHECK(c.u * D == doctest::Approx(t * x).epsilon(1e-12));
                CHECK(c.w * D == doctest::Approx(t * 0.0 - H * t).epsilon(1e-12));
            }
        }
    }

    SUBCASE("vanishing point table") {
        const auto& v = r.vanishing_points.at(direction_class_key({0.0, 1.0, 0.0}));
        REQUIRE(is_proper(v.point));
        CHECK(std::fabs(proper(v.point).u) <= 1e-12);
        CHECK(std::fabs(proper(v.point).w) <= 1e-12);
        CHECK(v.consistent);

        const auto& t = r.vanishing_points.at(direction_class_key({1.0, 0.0, 0.0}));
        REQUIRE_FALSE(is_proper(t.point));
        CHECK(improper(t.point).x_axis);
        CHECK(t.consistent);
    }
}

TEST_CASE("scenes without a floor have no distance point") {
    Scene s;
    s.frame = frame(100.0, 150.0);
    s.figures.push_back({0.0, 300.0, 174.0, "alone"});
    const ProjectionReport r = project_scene(s);
    CHECK(r.distance_point_status == DistancePointStatus::no_floor);
    CHECK_FALSE(r.distance_point.has_value());
    try {
        (void)distance_point(r);
        FAIL("must refuse");
    } catch (const DomainError& e) {
        CHECK(e.name() == "not-applicable");
    }
}

TEST_CASE("rectangular tiles disqualify the distance point but not the drawing") {
    Scene s;
    s.frame = frame(100.0, 150.0);
    s.floors.push_back({30.0, 45.0, 3, 3, 0.0});
    const ProjectionReport r = project_scene(s);
    CHECK(r.distance_point_status == DistancePointStatus::tiles_not_square);
    CHECK_FALSE(r.distance_point.has_value());
    CHECK_FALSE(r.tile_corners.empty());
    CHECK_THROWS_AS(distance_point(r), DomainError);
}

TEST_CASE("segments crossing the eye plane raise the clip counter") {
    Scene s;
    s.frame = frame(100.0, 150.0);
    SceneLine l;
    l.anchor = {0.0, -100.0, 30.0};
    l.direction = {0.0, 1.0, 0.0};
    l.extent = Interval{0.0, 300.0};
    s.lines.push_back(l);
    const ProjectionReport r = project_scene(s);
    CHECK(r.clipped_count == 1);
    REQUIRE(r.segments.size() == 1);
    CHECK(std::isfinite(r.segments[0].start.u));
    CHECK(std::isfinite(r.segments[0].start.w));
}

TEST_CASE("project_scene refuses invalid scenes by name") {
    Scene s;
    s.frame = frame(100.0, 150.0);
    s.figures.push_back({0.0, -5.0, 174.0, "behind"});
    try {
        (void)project_scene(s);
        FAIL("must refuse");
    } catch (const DomainError& e) {
        CHECK(e.name() == "invalid-scene");
    }
}

TEST_CASE("direction class keys identify rays, not vectors") {
    CHECK(direction_class_key({0.0, 1.0, 0.0}) == direction_class_key({0.0, 2.0, 0.0}));
    CHECK(direction_class_key({0.0, -1.0, 0.0}) == direction_class_key({0.0, 1.0, 0.0}));
    CHECK(direction_class_key({3.0, 6.0, 0.0}) == direction_class_key({1.0, 2.0, 0.0}));
    CHECK(direction_class_key({0.0, 1.0, 0.0}, 0) == "0,1,0");
    // negative zeros are scrubbed so coarse keys can collide as intended
    CHECK(direction_class_key({0.0, 1.0, -0.001}, 2) == direction_class_key({0.0, 1.0, 0.0}, 2));
    CHECK(direction_class_key({0.0, 1.0, -0.001}, 12) !=
          direction_class_key({0.0, 1.0, 0.0}, 12));
}

TEST_CASE("slope families that only pretend to share a point are caught coarsely") {
    const Scene scene = fixture_scene("duccio.scene");

    const auto fine = analyze_families(scene, 12);
    for (const auto& [key, fam] : fine) CHECK(fam.consistent);
    // three rafter slopes and the table edge
    CHECK(fine.size() == 4);

    const auto coarse = analyze_families(scene, 0);
    REQUIRE(coarse.count("0,1,0") == 1);
    const FamilyEntry& merged = coarse.at("0,1,0");
    CHECK(merged.members == 6);
    CHECK_FALSE(merged.consistent);
    REQUIRE(merged.meet_deviation.has_value());
    CHECK(*merged.meet_deviation > 1e-3);
    CHECK(coarse.at("1,0,0").consistent);
}

TEST_CASE("random horizontal families always converge on their vanishing point") {
    Rng rng(4201);
    for (int round = 0; round < 50; ++round) {
        Scene s;
        s.frame = frame(rng.uniform(40.0, 200.0), rng.uniform(80.0, 600.0));
        Direction d{rng.uniform(-2.0, 2.0), rng.uniform(0.2, 3.0), 0.0};
        for (int i = 0; i < 5; ++i)
            s.lines.push_back({{rng.uniform(-200.0, 200.0), rng.uniform(-100.0, 400.0),
                                rng.uniform(0.0, 250.0)},
                               d,
                               {}});
        const auto families = analyze_families(s, 12);
        REQUIRE(families.size() == 1);
        const FamilyEntry& fam = families.begin()->second;
        CHECK(fam.members == 5);
        CHECK(fam.consistent);
        REQUIRE(is_proper(fam.point));
        CHECK(proper(fam.point).u == doctest::Approx(d.dx / d.dy).epsilon(1e-12));
        CHECK(std::fabs(proper(fam.point).w) <= 1e-12);
    }
}
