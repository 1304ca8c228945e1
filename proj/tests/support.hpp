#pragma once

// Shared helpers for the test binaries: a seeded RNG, scene generators,
// a ground-truth annotator that recomputes image marks from first
// principles (so reconstruction is checked against an independent
// derivation, not against the library's own projector), and a small
// process runner for exercising the CLI.

#include <cstdint>
#include <random>
#include <string>

#include "perspectiva/reconstruct.hpp"
#include "perspectiva/scene.hpp"

namespace testsupport {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }
    bool coin() { return uniform_int(0, 1) == 1; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Unconstrained scene for parser round trips: arbitrary full-precision
// doubles in every slot the text format can carry.
perspectiva::Scene random_scene(Rng& rng);

// Scene a painter could actually set up: figures comfortably inside the
// canvas, one square-tiled floor. Used for the render->reconstruct loop.
perspectiva::Scene random_viewing_scene(Rng& rng);

// Marks the painting the way a careful art historian would: horizon and
// principal vanishing point, figure base/top verticals, one square-tile
// diagonal. All positions recomputed here from eye geometry.
perspectiva::Annotation annotate_scene(const perspectiva::Scene& scene);

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs `command` through /bin/sh with optional stdin text.
CommandResult run_command(const std::string& command, const std::string& stdin_text = "");

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
std::string fixture_path(const std::string& name);

// Fresh path inside the system temp dir; unique per call, never created.
std::string temp_path(const std::string& stem);

}  // namespace testsupport
