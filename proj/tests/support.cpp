#include "support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace testsupport {

using namespace perspectiva;

Scene random_scene(Rng& rng) {
    Scene s;
    s.frame.eye_height_H = rng.uniform(1.0, 500.0);
    s.frame.canvas_distance_D = rng.uniform(1.0, 500.0);
    s.frame.canvas_width = rng.uniform(10.0, 1000.0);
    s.frame.canvas_height = rng.uniform(10.0, 1000.0);
    s.frame.canvas_base_height = rng.coin() ? 0.0 : rng.uniform(0.1, 50.0);
    s.braccio_cm = rng.uniform(30.0, 80.0);

    const int n_lines = rng.uniform_int(0, 4);
    for (int i = 0; i < n_lines; ++i) {
        SceneLine l;
        l.anchor = {rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0),
                    rng.uniform(-500.0, 500.0)};
        do {
            l.direction = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                           rng.uniform(-3.0, 3.0)};
        } while (l.direction.dx == 0.0 && l.direction.dy == 0.0 && l.direction.dz == 0.0);
        s.lines.push_back(l);
    }
    const int n_floors = rng.uniform_int(0, 2);
    for (int i = 0; i < n_floors; ++i) {
        TiledFloor f;
        f.tile_width_s_x = rng.uniform(5.0, 100.0);
        f.tile_depth_s_y = rng.coin() ? f.tile_width_s_x : rng.uniform(5.0, 100.0);
        f.columns = rng.uniform_int(1, 8);
        f.rows = rng.uniform_int(1, 8);
        f.origin_offset = rng.coin() ? 0.0 : rng.uniform(-100.0, 100.0);
        s.floors.push_back(f);
    }
    static const char* kLabels[] = {"plain", "a\"b", "back\\slash", "two words", ""};
    const int n_figures = rng.uniform_int(0, 4);
    for (int i = 0; i < n_figures; ++i) {
        StandingFigure g;
        g.base_x = rng.uniform(-400.0, 400.0);
        g.base_depth = rng.uniform(0.5, 2000.0);
        g.height = rng.uniform(1.0, 300.0);
        g.label = kLabels[rng.uniform_int(0, 4)];
        s.figures.push_back(g);
    }
    return s;
}

Scene random_viewing_scene(Rng& rng) {
    Scene s;
    const double H = rng.uniform(40.0, 200.0);
    const double D = rng.uniform(80.0, 600.0);
    s.frame.eye_height_H = H;
    s.frame.canvas_distance_D = D;
    s.frame.canvas_width = 0.8 * D;
    s.frame.canvas_height = 420.0;
    s.frame.canvas_base_height = 0.0;

    TiledFloor f;
    const double side = rng.uniform(15.0, std::min(40.0, 0.3 * D));
    f.tile_width_s_x = side;
    f.tile_depth_s_y = side;
    f.columns = 2;
    f.rows = 3;
    s.floors.push_back(f);

    const int n_figures = rng.uniform_int(1, 5);
    for (int i = 0; i < n_figures; ++i) {
        StandingFigure g;
        g.base_depth = rng.uniform(1.2 * D, 4.0 * D);
        g.base_x = rng.uniform(-0.3, 0.3) * g.base_depth;
        g.height = rng.uniform(140.0, 200.0);
        g.label = "fig" + std::to_string(i);
        s.figures.push_back(g);
    }
    return s;
}

Annotation annotate_scene(const Scene& scene) {
    const ViewerFrame& fr = scene.frame;
    const double H = fr.eye_height_H;
    const double D = fr.canvas_distance_D;
    const double b = fr.canvas_base_height;
    const double mid = fr.canvas_width / 2.0;

    // Where the sight ray through physical (x, y, z) pierces the canvas,
    // in centimetres from the canvas' bottom-left corner. Derived from
    // similar triangles only; shares no code with the library.
    const auto mark_u = [&](double x, double y) { return mid + x * D / y; };
    const auto mark_w = [&](double y, double z) { return (H - b) + (z - H) * D / y; };

    Annotation a;
    a.canvas_width = fr.canvas_width;
    a.canvas_height = fr.canvas_height;
    a.base_height = b;
    a.horizon_height = H - b;
    a.vp = CanvasPoint{mid, H - b};

    for (const StandingFigure& g : scene.figures) {
        FigureMark m;
        m.label = g.label;
        m.base = {mark_u(g.base_x, g.base_depth), mark_w(g.base_depth, 0.0)};
        m.top = {mark_u(g.base_x, g.base_depth), mark_w(g.base_depth, g.height)};
        a.figure_marks.push_back(std::move(m));
    }
    for (const TiledFloor& f : scene.floors) {
        const double s = f.tile_width_s_x;
        const double left = f.origin_offset - f.columns * s / 2.0;
        // diagonal of the second-row corner tile, kept off the canvas edge
        const double x0 = left, y0 = D + f.tile_depth_s_y;
        DiagonalMark m;
        m.p1 = {mark_u(x0, y0), mark_w(y0, 0.0)};
        m.p2 = {mark_u(x0 + s, y0 + s), mark_w(y0 + s, 0.0)};
        m.assume_square_tile = f.square();
        a.diagonal_marks.push_back(m);
    }
    return a;
}

CommandResult run_command(const std::string& command, const std::string& stdin_text) {
    const std::string in = temp_path("stdin"), out = temp_path("stdout"),
                      err = temp_path("stderr");
    write_file(in, stdin_text);
    const std::string full = "( " + command + " ) < " + in + " > " + out + " 2> " + err;
    const int status = std::system(full.c_str());
    CommandResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    std::filesystem::remove(in);
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

std::string temp_path(const std::string& stem) {
    static std::atomic<unsigned> counter{0};
    const auto dir = std::filesystem::temp_directory_path();
    return (dir / ("perspectiva-test-" + stem + "-" + std::to_string(::getpid()) + "-" +
                   std::to_string(counter++)))
        .string();
}

}  // namespace testsupport
