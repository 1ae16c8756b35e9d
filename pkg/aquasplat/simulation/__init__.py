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

The `simulation` package degrades clean images with the physical image formation
model of a scattering medium and generates synthetic scenes with fully known
geometry, clean images and degraded observations.

Module contents
---------------

.. automodule:: aquasplat.simulation.degradation
   :members:

.. automodule:: aquasplat.simulation.fixtures
   :members:
"""

from .degradation import degrade, normalize_depth
from .fixtures import camera_arc, look_at, make_fixture, scene_cloud, split_views

__all__ = [
    "camera_arc",
    "degrade",
    "look_at",
    "make_fixture",
    "normalize_depth",
    "scene_cloud",
    "split_views",
]
