#pragma once

#include <string>
#include <vector>

#include "thedra/workbench/document.hpp"

namespace thedra::workbench {

// miura, paraboloid-of-revolution, translational-paraboloid (discrete);
// paraboloid-wedge, smooth-translational-paraboloid (smooth).
std::vector<std::string> preset_names();
// Throws InvalidArgument for unknown names. created_at is fixed so that
// preset documents are byte-stable.
DesignDocument preset(const std::string& name);

}  // namespace thedra::workbench
