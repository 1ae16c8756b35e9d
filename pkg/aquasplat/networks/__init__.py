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

The `networks` package holds the two small learned functions of the medium model:
the medium network, which predicts per-ray attenuation, backscatter and medium color
from the viewing direction, and the opacity network, which predicts a depth-aware
opacity for every Gaussian.

Module contents
---------------

.. automodule:: aquasplat.networks.encoding
   :members:

.. automodule:: aquasplat.networks.medium_field
   :members:
"""

from .encoding import encode_direction, encoded_size
from .medium_field import (
    MediumField,
    alpha_adjust,
    build_mlp,
    linear_layers,
    medium_eval,
)

__all__ = [
    "MediumField",
    "alpha_adjust",
    "build_mlp",
    "encode_direction",
    "encoded_size",
    "linear_layers",
    "medium_eval",
]
