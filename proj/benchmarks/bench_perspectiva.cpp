#include <benchmark/benchmark.h>

#include <string>
#include <variant>

#include "perspectiva/alberti.hpp"
#include "perspectiva/projector.hpp"
#include "perspectiva/scene_dsl.hpp"
#include "perspectiva/svg.hpp"

using namespace perspectiva;

namespace {

Scene dense_scene(int tiles) {
    Scene s;
    s.frame.eye_height_H = 160.0;
    s.frame.canvas_distance_D = 250.0;
    s.frame.canvas_width = 400.0;
    s.frame.canvas_height = 300.0;
    s.floors.push_back({20.0, 20.0, tiles, tiles, 0.0});
    for (int i = 0; i < 8; ++i)
        s.figures.push_back({-80.0 + 20.0 * i, 300.0 + 40.0 * i, 170.0,
                             "fig" + std::to_string(i)});
    return s;
}

void bm_project_scene(benchmark::State& state) {
    const Scene s = dense_scene(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(project_scene(s));
}
BENCHMARK(bm_project_scene)->Arg(8)->Arg(32)->Arg(64);

void bm_step3_assemble(benchmark::State& state) {
    const AlbertiInput in =
        make_alberti_input(1000.0, 300.0, static_cast<int>(state.range(0)), 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(step3_assemble(in));
}
BENCHMARK(bm_step3_assemble)->Arg(8)->Arg(32)->Arg(64);

void bm_parse_scene(benchmark::State& state) {
    const std::string text = print_scene(dense_scene(32));
    for (auto _ : state) {
        auto r = parse_scene(text);
        benchmark::DoNotOptimize(std::get<Scene>(r));
    }
}
BENCHMARK(bm_parse_scene);

void bm_emit_svg(benchmark::State& state) {
    const ProjectionReport r = project_scene(dense_scene(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(emit_svg(r));
}
BENCHMARK(bm_emit_svg)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
