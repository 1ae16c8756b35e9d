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

The `converters` package contains methods for serializing and deserializing the
entities of aquasplat to and from files, using the data models defined in the
:py:mod:`~aquasplat.data_models` module.

Module contents
---------------

.. autoclass:: SceneConverter
   :members:

.. autoclass:: NetworkConverter
   :members:

.. autoclass:: CameraConverter
   :members:

.. autoclass:: ConfigConverter
   :members:

.. autoclass:: CheckpointConverter
   :members:

.. autoclass:: DatasetConverter
   :members:
"""

from .camera_converter import CameraConverter
from .checkpoint_converter import CheckpointConverter, checkpoint_folder_name
from .config_converter import ConfigConverter
from .dataset_converter import DatasetConverter, save_view_depth, save_view_image
from .network_converter import NetworkConverter
from .scene_converter import SceneConverter

__all__ = [
    "CameraConverter",
    "CheckpointConverter",
    "ConfigConverter",
    "DatasetConverter",
    "NetworkConverter",
    "SceneConverter",
    "checkpoint_folder_name",
    "save_view_depth",
    "save_view_image",
]
