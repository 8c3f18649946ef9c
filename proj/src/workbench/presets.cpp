#include "thedra/workbench/presets.hpp"

#include <cmath>

#include "thedra/builders.hpp"
#include "thedra/error.hpp"

namespace thedra::workbench {

namespace {

constexpr const char* kPresetTimestamp = "2024-01-01T00:00:00Z";

DesignDocument discrete(DesignData d, const std::string& name) {
    return {kSchemaVersion, std::move(d), {name, kPresetTimestamp}};
}

DesignDocument smooth_doc(smooth::Surface s, const std::string& name) {
    return {kSchemaVersion, std::move(s), {name, kPresetTimestamp}};
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"miura", "paraboloid-of-revolution", "translational-paraboloid", "paraboloid-wedge",
            "smooth-translational-paraboloid"};
}

DesignDocument preset(const std::string& name) {
    using smooth::ScalarFunction;
    if (name == "miura") return discrete(translational_design(miura_data({1, 1, 1, 1, 3, 3})), name);
    if (name == "paraboloid-of-revolution") {
        // Six meridians 15 degrees apart, radii 0.5..2 on z = r^2.
        RevolutionData r;
        for (int i = 1; i <= 6; ++i) r.phi.push_back(i * std::acos(-1.0) / 12);
        for (int j = 0; j <= 6; ++j) {
            const double radius = 0.5 + 0.25 * j;
            r.F.push_back(radius);
            r.z.push_back(radius * radius - 0.25);
        }
        return discrete(revolution_to_axial(r).design, name);
    }
    if (name == "translational-paraboloid") {
        // Uniform grid of step 1/16 on [0, 0.5]^2 lifted to x = u^2 + v^2.
        TranslationalData t;
        for (int k = 0; k <= 8; ++k) {
            const double s = k / 16.0;
            t.x_row.push_back(s * s);
            t.x_col.push_back(s * s);
            t.y.push_back(s);
            t.z.push_back(s);
        }
        return discrete(translational_design(t), name);
    }
    if (name == "paraboloid-wedge") {
        const smooth::Interval U{0.0, std::acos(-1.0) / 2}, V{0.1, 1.0};
        return smooth_doc(smooth::AxialSurface{ScalarFunction::constant(1.0, U), ScalarFunction::polynomial({0, 1}, U),
                                               ScalarFunction::polynomial({0, 1}, V),
                                               ScalarFunction::polynomial({0, 0, 1}, V)},
                          name);
    }
    if (name == "smooth-translational-paraboloid") {
        const smooth::Interval I{0.0, 0.5};
        return smooth_doc(smooth::TranslationalSurface{ScalarFunction::polynomial({0, 0, 1}, I),
                                                       ScalarFunction::polynomial({0, 1}, I),
                                                       ScalarFunction::polynomial({0, 0, 1}, I),
                                                       ScalarFunction::polynomial({0, 1}, I)},
                          name);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'", "name");
}

}  // namespace thedra::workbench
