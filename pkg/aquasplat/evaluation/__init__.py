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

The `evaluation` package contains the image quality metrics used to assess
reconstructions: PSNR, SSIM and depth error, and the validation of a trained model
on held-out views.

Module contents
---------------

.. automodule:: aquasplat.evaluation.metrics
   :members:

.. automodule:: aquasplat.evaluation.validation
   :members:
"""

from .metrics import (
    depth_mae,
    evaluate,
    evaluate_folders,
    load_image_folder,
    psnr,
    ssim,
)
from .validation import validate

__all__ = [
    "depth_mae",
    "evaluate",
    "evaluate_folders",
    "load_image_folder",
    "psnr",
    "ssim",
    "validate",
]
