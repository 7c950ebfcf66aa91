#ifndef LIFEDIT_SCENE_H_
#define LIFEDIT_SCENE_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "lifedit/camera.h"
#include "lifedit/geometry.h"
#include "lifedit/lighting.h"
#include "lifedit/material.h"

namespace lifedit {

struct Scene {
  // Shared so that material or lighting variants reuse one BVH.
  std::shared_ptr<const AcceleratedGeometry> geometry;
  EnvironmentMap environment;
  Material material;
  std::vector<Camera> cameras;
  std::uint64_t seed = 0;
  int spp = 256;
  int lif_resolution = 256;

  const AcceleratedGeometry& geom() const { return *geometry; }

  Scene with_material(Material m) const;
  Scene with_environment(EnvironmentMap e) const;
};

}  // namespace lifedit

#endif  // LIFEDIT_SCENE_H_
