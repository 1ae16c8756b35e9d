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

The `losses` package implements every term of the training objective: the
regularized photometric loss, the trinocular view consistency loss, the epipolar
depth prior loss and the depth residual loss, and their weighted combination.

All losses take float64 tensors, respect validity masks and route detached values
through `aquasplat.gradients.tape.stop_gradient`.

Module contents
---------------

.. automodule:: aquasplat.losses.ssim
   :members:

.. automodule:: aquasplat.losses.photometric
   :members:

.. automodule:: aquasplat.losses.trinocular
   :members:

.. automodule:: aquasplat.losses.depth
   :members:

.. automodule:: aquasplat.losses.objective
   :members:
"""

from .depth import (
    edge_weights,
    epipolar_loss,
    nearest_pixels,
    residual_loss,
    sample_bilinear,
    sample_nearest,
)
from .objective import total_loss
from .photometric import DEFAULT_EPSILON, photometric_loss, r_l1, regularized_ssim_loss
from .ssim import gaussian_window, ssim_map, structural_similarity
from .trinocular import image_gradients, smoothness_loss, trinocular_losses

__all__ = [
    "DEFAULT_EPSILON",
    "edge_weights",
    "epipolar_loss",
    "gaussian_window",
    "image_gradients",
    "nearest_pixels",
    "photometric_loss",
    "r_l1",
    "regularized_ssim_loss",
    "residual_loss",
    "sample_bilinear",
    "sample_nearest",
    "smoothness_loss",
    "ssim_map",
    "structural_similarity",
    "total_loss",
    "trinocular_losses",
]
