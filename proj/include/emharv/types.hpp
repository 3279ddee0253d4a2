#pragma once

#include <Eigen/Core>

namespace emharv {

using Scalar = double;

using Vec3 = Eigen::Vector3<Scalar>;
using VecX = Eigen::VectorX<Scalar>;

}  // namespace emharv
