#pragma once

// Umbrella header for the grasp-geometry library.

#include "graspgeom/camera.hpp"
#include "graspgeom/collision.hpp"
#include "graspgeom/config.hpp"
#include "graspgeom/depth.hpp"
#include "graspgeom/depth_io.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/grasp.hpp"
#include "graspgeom/image.hpp"
#include "graspgeom/manifest.hpp"
#include "graspgeom/mesh.hpp"
#include "graspgeom/mesh_io.hpp"
#include "graspgeom/parallel.hpp"
#include "graspgeom/png_io.hpp"
#include "graspgeom/pose_recovery.hpp"
#include "graspgeom/repr_convert.hpp"
#include "graspgeom/sampling.hpp"
#include "graspgeom/scene.hpp"
#include "graspgeom/scene_io.hpp"
#include "graspgeom/serialization.hpp"
#include "graspgeom/synthetic.hpp"
#include "graspgeom/training.hpp"
#include "graspgeom/transform.hpp"
#include "graspgeom/vec3.hpp"
#include "graspgeom/version.hpp"
