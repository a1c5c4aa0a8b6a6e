#pragma once

// Frame output: CSV (one row per cell centre, 17 significant digits) and
// legacy VTK structured points.

#include "congest/grid.hpp"

#include <stdexcept>
#include <string>

namespace congest {

enum class FrameFormat { Csv, Vtk };

FrameFormat parse_frame_format(const std::string& s);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws IoError naming the path when the file cannot be written.
void write_frame(const GridState& state, const Grid& grid, const std::string& path, FrameFormat format);

/// Reads a CSV frame written for `grid` back into a state (time is not stored).
GridState read_csv_frame(const std::string& path, const Grid& grid);

}  // namespace congest
