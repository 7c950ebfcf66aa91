#include "lifedit/scene.h"

namespace lifedit {

Scene Scene::with_material(Material m) const {
  Scene s = *this;
  s.material = std::move(m);
  return s;
}

Scene Scene::with_environment(EnvironmentMap e) const {
  Scene s = *this;
  s.environment = std::move(e);
  return s;
}

}  // namespace lifedit
