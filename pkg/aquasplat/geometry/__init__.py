# Copyright (C) 2022 Intel Corporation
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions
# and limitations under the License.

"""
Introduction
------------

The `geometry` package contains the pinhole camera model and the multi-view
geometry used by the trinocular regularizers: projection of points and covariances,
construction of virtual views, disparity maps, inverse warping, frustum-based
candidate selection and two-view triangulation.

Module contents
---------------

.. automodule:: aquasplat.geometry.projection
   :members:

.. automodule:: aquasplat.geometry.stereo
   :members:

.. automodule:: aquasplat.geometry.triangulation
   :members:
"""

from .projection import (
    DEPTH_EPSILON,
    SCREEN_LOW_PASS,
    pixel_grid,
    project_covariance,
    project_covariances,
    project_point,
    project_points,
    projection_jacobians,
    ray_directions,
    unproject_pixels,
    world_to_camera,
)
from .stereo import (
    alignment_disparities,
    disparity_maps,
    inverse_warp,
    make_virtual_poses,
)
from .triangulation import (
    MAX_CONDITION_NUMBER,
    inside_image,
    select_candidates,
    triangulate_depth,
    triangulate_depths,
    triangulate_points,
)

__all__ = [
    "DEPTH_EPSILON",
    "MAX_CONDITION_NUMBER",
    "SCREEN_LOW_PASS",
    "alignment_disparities",
    "disparity_maps",
    "inside_image",
    "inverse_warp",
    "make_virtual_poses",
    "pixel_grid",
    "project_covariance",
    "project_covariances",
    "project_point",
    "project_points",
    "projection_jacobians",
    "ray_directions",
    "select_candidates",
    "triangulate_depth",
    "triangulate_depths",
    "triangulate_points",
    "unproject_pixels",
    "world_to_camera",
]
