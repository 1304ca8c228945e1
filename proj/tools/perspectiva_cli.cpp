// perspectiva: project scenes onto the picture plane, run the costruzione
// legittima, and recover viewer geometry from marked-up paintings.
//
// Exit codes: 0 success, 1 domain or input error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "perspectiva/alberti.hpp"
#include "perspectiva/errors.hpp"
#include "perspectiva/projector.hpp"
#include "perspectiva/reconstruct.hpp"
#include "perspectiva/report_io.hpp"
#include "perspectiva/scene_dsl.hpp"
#include "perspectiva/svg.hpp"

namespace {

using namespace perspectiva;

std::string read_all(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin),
                           std::istreambuf_iterator<char>());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("unreadable-input", "cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_all(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("unwritable-output", "cannot open '" + path + "'");
    out << text;
    if (!out) throw DomainError("unwritable-output", "write to '" + path + "' failed");
}

// Precedence: a braccio statement in the scene wins, then --braccio-cm,
// then PERSPECTIVA_BRACCIO_CM, then the Florentine 58 cm.
double default_braccio(const std::optional<double>& flag) {
    if (flag) {
        if (*flag <= 0.0) throw DomainError("invalid-braccio", "--braccio-cm must be positive");
        return *flag;
    }
    if (const char* env = std::getenv("PERSPECTIVA_BRACCIO_CM")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0))
            throw DomainError("invalid-braccio",
                              std::string("PERSPECTIVA_BRACCIO_CM is not a positive number: '") +
                                  env + "'");
        return v;
    }
    return kDefaultBraccioCm;
}

Scene load_scene(const std::string& path, const std::optional<double>& braccio_flag) {
    const std::string text = read_all(path);
    auto parsed = parse_scene(text, default_braccio(braccio_flag));
    if (const auto* err = std::get_if<ParseError>(&parsed))
        throw DomainError("parse-error", err->message());
    Scene scene = std::get<Scene>(std::move(parsed));
    const auto violations = validate(scene);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "scene fails validation:";
        for (const Violation& v : violations) msg << "\n  " << v.field << ": " << v.rule;
        throw DomainError("invalid-scene", msg.str());
    }
    return scene;
}

struct SvgFlags {
    int width = 960;
    int height = 720;
    double margin = 40.0;
    bool no_horizon = false;
    bool no_markers = false;
    bool improper_labels = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--width", width, "SVG viewport width in px")->capture_default_str();
        cmd->add_option("--height", height, "SVG viewport height in px")->capture_default_str();
        cmd->add_option("--margin", margin, "viewport margin in px")->capture_default_str();
        cmd->add_flag("--no-horizon", no_horizon, "omit the horizon line");
        cmd->add_flag("--no-markers", no_markers, "omit vanishing point markers");
        cmd->add_flag("--improper-labels", improper_labels,
                      "list improper vanishing points in a legend");
    }

    RenderOptions options() const {
        RenderOptions o;
        o.viewport_w = width;
        o.viewport_h = height;
        o.margin = margin;
        o.show_horizon = !no_horizon;
        o.show_vanishing_points = !no_markers;
        o.show_improper_labels = improper_labels;
        return o;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"bidirectional perspective engine"};
    app.require_subcommand(1);

    // render
    auto* render = app.add_subcommand("render", "project a scene file onto the canvas");
    std::string render_scene_path;
    render->add_option("scene", render_scene_path, "scene file, '-' for stdin")->required();
    std::optional<std::string> render_json, render_svg;
    render->add_option("--json", render_json, "write projection report JSON ('-' for stdout)");
    render->add_option("--svg", render_svg, "write SVG drawing ('-' for stdout)");
    std::optional<double> render_braccio;
    render->add_option("--braccio-cm", render_braccio, "braccio length in cm");
    SvgFlags render_svg_flags;
    render_svg_flags.attach(render);

    // alberti
    auto* alberti = app.add_subcommand("alberti", "run the costruzione legittima");
    double al_side = 100.0, al_distance = 0.0, al_tile = 0.0;
    int al_tiles = 0;
    std::optional<double> al_vp_height;
    alberti->add_option("--side", al_side, "square canvas side in cm")->capture_default_str();
    alberti->add_option("--distance", al_distance, "viewer distance D in cm")->required();
    alberti->add_option("--tiles", al_tiles, "tile count across the base")->required();
    alberti->add_option("--tile", al_tile, "tile side in cm")->required();
    alberti->add_option("--vp-height", al_vp_height,
                        "vanishing point height in cm (default: side / 2)");
    std::optional<std::string> al_json, al_svg;
    alberti->add_option("--json", al_json, "write grid JSON ('-' for stdout)");
    alberti->add_option("--svg", al_svg, "write SVG drawing ('-' for stdout)");
    SvgFlags al_svg_flags;
    al_svg_flags.attach(alberti);

    // reconstruct
    auto* reco = app.add_subcommand("reconstruct",
                                    "estimate viewer geometry from an annotated painting");
    std::string reco_path;
    reco->add_option("annotation", reco_path, "annotation JSON, '-' for stdin")->required();
    ReconstructOptions reco_opts;
    reco->add_option("--knee-ratio", reco_opts.knee_ratio,
                     "knee height as a fraction of body height")
        ->capture_default_str();
    reco->add_option("--knee-tolerance", reco_opts.knee_tolerance_frac,
                     "allowed knee spread, fraction of canvas height")
        ->capture_default_str();
    std::optional<std::string> reco_json;
    reco->add_option("--json", reco_json, "write estimate JSON ('-' for stdout)");

    // vanishing
    auto* vanish = app.add_subcommand("vanishing",
                                      "group scene lines by direction and locate their"
                                      " vanishing points");
    std::string vanish_scene_path;
    vanish->add_option("scene", vanish_scene_path, "scene file, '-' for stdin")->required();
    int vanish_digits = 12;
    vanish->add_option("--merge-digits", vanish_digits,
                       "decimals kept when grouping directions; lower values merge"
                       " near-parallel families")
        ->capture_default_str()
        ->check(CLI::Range(0, 17));
    std::optional<double> vanish_braccio;
    vanish->add_option("--braccio-cm", vanish_braccio, "braccio length in cm");
    std::optional<std::string> vanish_json;
    vanish->add_option("--json", vanish_json, "write family JSON ('-' for stdout)");

    // check
    auto* check = app.add_subcommand("check", "validate a scene and its vanishing points");
    std::string check_scene_path;
    check->add_option("scene", check_scene_path, "scene file, '-' for stdin")->required();
    int check_digits = 12;
    check->add_option("--merge-digits", check_digits, "decimals kept when grouping directions")
        ->capture_default_str()
        ->check(CLI::Range(0, 17));
    std::optional<double> check_braccio;
    check->add_option("--braccio-cm", check_braccio, "braccio length in cm");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (render->parsed()) {
        const Scene scene = load_scene(render_scene_path, render_braccio);
        const ProjectionReport report = project_scene(scene);
        if (render_svg) write_all(*render_svg, emit_svg(report, render_svg_flags.options()));
        if (render_json) write_all(*render_json, report_to_json(report));
        if (!render_svg && !render_json) write_all("-", report_to_json(report));
        return 0;
    }

    if (alberti->parsed()) {
        AlbertiInput input = make_alberti_input(al_side, al_distance, al_tiles, al_tile);
        if (al_vp_height) input.vp_height = *al_vp_height;
        const auto violations = validate(input);
        if (!violations.empty()) {
            std::ostringstream msg;
            msg << "construction input is invalid:";
            for (const Violation& v : violations) msg << "\n  " << v.field << ": " << v.rule;
            throw DomainError("invalid-construction", msg.str());
        }
        const AlbertiGrid grid = step3_assemble(input);
        if (al_svg) write_all(*al_svg, emit_svg(grid, al_svg_flags.options()));
        if (al_json) write_all(*al_json, grid_to_json(grid));
        if (!al_svg && !al_json) write_all("-", grid_to_json(grid));
        return 0;
    }

    if (reco->parsed()) {
        const Annotation annotation = annotation_from_json(read_all(reco_path));
        const ViewerEstimate estimate = reconstruct_scene(annotation, reco_opts);
        write_all(reco_json.value_or("-"), estimate_to_json(estimate));
        return 0;
    }

    if (vanish->parsed()) {
        const Scene scene = load_scene(vanish_scene_path, vanish_braccio);
        const auto families = analyze_families(scene, vanish_digits);
        write_all(vanish_json.value_or("-"), families_to_json(families));
        return 0;
    }

    if (check->parsed()) {
        const Scene scene = load_scene(check_scene_path, check_braccio);
        const auto families = analyze_families(scene, check_digits);
        bool all_consistent = true;
        for (const auto& [key, fam] : families) {
            if (fam.consistent) continue;
            all_consistent = false;
            std::cerr << "inconsistent family " << key << ": " << fam.members
                      << " lines, worst meet deviation "
                      << (fam.meet_deviation ? *fam.meet_deviation : 0.0) << "\n";
        }
        if (!all_consistent) return 1;
        std::cout << "ok: " << families.size() << " direction families, all consistent\n";
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const perspectiva::DomainError& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
