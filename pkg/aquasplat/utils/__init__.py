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

The `utils` package contains utility functions used throughout aquasplat: image
reading and writing, and deserialization of configuration dictionaries.

Module contents
---------------

.. automodule:: aquasplat.utils.image_helpers
   :members:

.. automodule:: aquasplat.utils.serialization_helpers
   :members:
"""

from .image_helpers import (
    load_array,
    load_depth,
    load_image,
    load_png,
    save_array,
    save_depth_png,
    save_png,
    to_uint8,
)
from .serialization_helpers import deserialize_dictionary

__all__ = [
    "deserialize_dictionary",
    "load_array",
    "load_depth",
    "load_image",
    "load_png",
    "save_array",
    "save_depth_png",
    "save_png",
    "to_uint8",
]
