#pragma once

#include <cstdint>
#include <vector>

#include "plc/curtain.hpp"
#include "plc/geom2d.hpp"
#include "plc/layout.hpp"

namespace plc {

// One renderable surface: a world-frame footprint extruded over [z_min, z_max].
struct ScenePrism {
    Polygon2 footprint;
    double z_min = 0.0;
    double z_max = 2.0;
    double reflectivity = 1.0;
};

using Scene = std::vector<ScenePrism>;

// Obstacles posed at time t. Robot footprints are appended as static prisms
// when include_robots is set (used for reconstruction of the full workspace).
Scene scene_at(const Scenario& scenario, double t, bool include_robots = false);

struct IntensityImage {
    long frame = 0;
    int width = 0;   // n_cols
    int height = 0;  // n_rows
    std::vector<float> intensity;     // row-major, values in [0, 1]
    std::vector<double> column_range; // imaged control-point range per column

    float& at(int row, int col) { return intensity[static_cast<std::size_t>(row) * width + col]; }
    float at(int row, int col) const { return intensity[static_cast<std::size_t>(row) * width + col]; }
    float column_max(int col) const;
};

// Renders the intensity return of one curtain against the scene. A column
// lights up where the nearest surface along its ray lies within
// curtain_thickness of the control point; the lit rows are those whose
// elevation intersects the prism's vertical extent at that range.
IntensityImage image_curtain(const Scene& scene, const PlcModel& plc,
                             const CurtainProfile& profile, double laser_gain = 1.0);

// Cheap presence predicate: would this curtain produce any return at all
// against the scene, for surfaces at reflectivity >= threshold.
bool curtain_intersects(const Scene& scene, const PlcModel& plc,
                        const CurtainProfile& profile, double threshold);

struct InterferenceModel {
    double burst_probability = 0.0;  // per frame, of starting a new burst
    int burst_length = 3;            // frames, in [2, 4]
    int burst_columns = 8;
    std::uint64_t seed = 0;
};

// Stateful stream transformer adding saturated interference bursts. Feeding
// the same frame sequence with the same model yields identical output. At
// least one clean frame separates consecutive bursts, so an affected run is
// never longer than burst_length.
class InterferenceInjector {
public:
    explicit InterferenceInjector(const InterferenceModel& model);
    IntensityImage apply(IntensityImage image);

private:
    InterferenceModel model_;
    std::uint64_t counter_ = 0;
    int active_frames_ = 0;  // remaining frames of the current burst
    bool cooldown_ = false;  // burst just ended; next frame must stay clean
    int burst_col_ = 0;
};

enum class WatchdogStatus { healthy, mirror_fault, power_fault };

// Reference-plane laser watchdog: checks that the imaged return of a curtain
// targeted at the reference sheet is present and within the expected
// intensity band.
WatchdogStatus watchdog_check(const PlcModel& plc, double reference_range,
                              const IntensityImage& image,
                              double expected_intensity = 1.0, double band = 0.25);

}  // namespace plc
