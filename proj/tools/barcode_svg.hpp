#pragma once

#include <string>

#include "socioplex/persistence.hpp"

namespace socioplex::cli {

struct SvgOptions {
  int width = 800;
  int bar_spacing = 10;
  /// Right end of the scale axis; <= 0 picks the largest finite value plus a margin.
  double max_scale = 0.0;
  bool allow_empty = false;
  std::string title = "Persistence barcodes";
};

/// One horizontal panel per dimension, bars sorted by birth. Essential bars run
/// to the end of the axis and end in an arrow. Throws InvalidArgument for an
/// empty diagram unless allow_empty is set.
std::string render_barcode_svg(const PersistenceDiagram& d, const SvgOptions& options = {});

}  // namespace socioplex::cli
