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

The `rendering` package composites Gaussian clouds into images. A single render
produces the object radiance, the backscatter of the medium in front of it, their
composite, the expected depth and the residual transmittance.

Module contents
---------------

.. automodule:: aquasplat.rendering.rasterizer
   :members:
"""

from .rasterizer import (
    MAX_ALPHA,
    MIN_ALPHA,
    composite_full,
    medium_coefficients,
    render,
    sort_splats,
    splat_alphas,
)

__all__ = [
    "MAX_ALPHA",
    "MIN_ALPHA",
    "composite_full",
    "medium_coefficients",
    "render",
    "sort_splats",
    "splat_alphas",
]
