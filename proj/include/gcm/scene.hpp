#pragma once

#include <string>
#include <vector>

#include "gcm/field.hpp"

namespace gcm {

/// A homogeneous inclusion in air.
///
/// `smooth` objects taper eps - 1 with a cos^2 profile over the outer half of
/// the radius (balls) so the contrast is C^1; `sharp` objects are indicator sets.
struct SceneObject {
    enum class Shape { ball, box };
    enum class Profile { sharp, smooth };

    Shape shape = Shape::ball;
    Profile profile = Profile::sharp;
    Point3 center{0.0, 0.0, 0.0};
    double radius = 0.3;
    Point3 box_min{0.0, 0.0, 0.0};
    Point3 box_max{0.0, 0.0, 0.0};
    double eps = 4.0;

    /// Contrast eps_r - 1 contributed at point p.
    double contrast_at(const Point3& p) const;
    /// Lower and upper corners of the object's bounding box.
    std::pair<Point3, Point3> bounds() const;
};

struct Scene {
    std::vector<SceneObject> objects;

    /// eps_r sampled at the lattice nodes; overlapping contrasts add.
    PermittivityField rasterize(const Domain& domain) const;
    /// Smallest box containing every object, or nothing for an empty scene.
    std::pair<Point3, Point3> bounds() const;
    double max_eps() const;
};

} // namespace gcm
