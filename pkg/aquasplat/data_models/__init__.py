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

The `data_models` package contains the types that flow between the modules of
aquasplat: Gaussian clouds, cameras, render results, medium parameters, loss reports,
training configuration and datasets.

All data models are defined as attrs classes holding float64 torch tensors.

Module contents
---------------

.. automodule:: aquasplat.data_models.gaussians
   :members:
   :undoc-members:
   :show-inheritance:

.. automodule:: aquasplat.data_models.camera
   :members:
   :undoc-members:
   :show-inheritance:

.. automodule:: aquasplat.data_models.render_bundle
   :members:
   :undoc-members:
   :show-inheritance:

.. automodule:: aquasplat.data_models.medium
   :members:
   :undoc-members:
   :show-inheritance:

.. automodule:: aquasplat.data_models.training
   :members:
   :undoc-members:
   :show-inheritance:
"""

from .camera import CameraView
from .dataset import DatasetView, TrainingDataset
from .enums import (
    AlphaDecay,
    LossTerm,
    MediumPresetName,
    MetricTask,
    RenderComponent,
    TrainPreset,
    WarpAxis,
)
from .fixture import FixtureSpec, SyntheticFixture
from .gaussians import (
    PARAMETER_NAMES,
    CloudInitSpec,
    GaussianCloud,
    GaussianPrimitive,
)
from .gradient_check import FiniteDifferenceEntry, FiniteDifferenceReport
from .losses import LossReport, TrinocularLosses
from .medium import AlphaAdjustState, MediumParameters, MediumPreset
from .metrics import MetricReport, ViewMetric
from .render_bundle import RenderBundle, SplatList
from .stereo import DisparityMaps, VirtualViews, WarpResult
from .training import (
    Checkpoint,
    DensificationResult,
    ScheduleState,
    StepOutputs,
    TrainConfig,
    TrainingResult,
)
from .utils import DTYPE

__all__ = [
    "DTYPE",
    "PARAMETER_NAMES",
    "AlphaAdjustState",
    "AlphaDecay",
    "CameraView",
    "Checkpoint",
    "CloudInitSpec",
    "DatasetView",
    "DensificationResult",
    "DisparityMaps",
    "FiniteDifferenceEntry",
    "FiniteDifferenceReport",
    "FixtureSpec",
    "GaussianCloud",
    "GaussianPrimitive",
    "LossReport",
    "LossTerm",
    "MediumParameters",
    "MediumPreset",
    "MediumPresetName",
    "MetricReport",
    "MetricTask",
    "RenderBundle",
    "RenderComponent",
    "ScheduleState",
    "SplatList",
    "StepOutputs",
    "SyntheticFixture",
    "TrainConfig",
    "TrainPreset",
    "TrainingDataset",
    "TrainingResult",
    "TrinocularLosses",
    "ViewMetric",
    "VirtualViews",
    "WarpAxis",
    "WarpResult",
]
