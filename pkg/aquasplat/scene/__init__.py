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

The `scene` package implements the operations on Gaussian primitives: the
covariance parameterization, point evaluation and the construction of the initial
cloud.

Module contents
---------------

.. automodule:: aquasplat.scene.covariance
   :members:

.. automodule:: aquasplat.scene.initialization
   :members:
"""

from .covariance import (
    build_covariances,
    cloud_covariances,
    covariance_of,
    eval_gaussian,
    normalize_quaternions,
    quaternion_to_rotation,
)
from .initialization import bounds_from_cameras, init_cloud, opacity_to_logit

__all__ = [
    "bounds_from_cameras",
    "build_covariances",
    "cloud_covariances",
    "covariance_of",
    "eval_gaussian",
    "init_cloud",
    "normalize_quaternions",
    "opacity_to_logit",
    "quaternion_to_rotation",
]
