#pragma once

#include "cancov/generators.hpp"

namespace fixtures {

/// a - b - c on a line with unit steps, boundary {a, c}.
inline cancov::DiscretePack line3(double dac = 2.0) {
  return cancov::validate_pack({10, 11, 12}, {{0, 1, dac}, {1, 0, 1}, {dac, 1, 0}}, {true, false, true}, {}, {});
}

/// One boundary point with levels 1, 1/2, 1/4, 1/8 above it; level j sits at id j+1.
inline cancov::DiscretePack cyl() {
  cancov::GenParams g;
  g.kind = cancov::PackKindTag::finite_cylinder;
  g.base_points = 1;
  g.levels = 4;
  g.ratio = 0.5;
  return cancov::generate_pack(g);
}

inline cancov::DiscretePack small(cancov::PackKindTag kind) {
  cancov::GenParams g = cancov::default_params(kind);
  if (kind == cancov::PackKindTag::finite_cylinder) g.levels = 6;
  if (kind == cancov::PackKindTag::circle_in_disk) g.base_points = 16, g.levels = 10;
  return cancov::generate_pack(g);
}

}  // namespace fixtures
