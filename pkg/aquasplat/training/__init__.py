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

The `training` package optimizes a Gaussian cloud and the medium networks against
a dataset of posed degraded images. It holds the step schedule, virtual baseline
sampling, adaptive densification, the optimizer, the forward pass of a single step,
the training loop with checkpointing, and the finite difference gradient check on a
micro-scene.

Module contents
---------------

.. automodule:: aquasplat.training.schedule
   :members:

.. automodule:: aquasplat.training.baselines
   :members:

.. automodule:: aquasplat.training.densification
   :members:

.. automodule:: aquasplat.training.optimizer
   :members:

.. automodule:: aquasplat.training.step
   :members:

.. automodule:: aquasplat.training.trainer
   :members:

.. automodule:: aquasplat.training.gradient_check
   :members:
"""

from .baselines import sample_baselines
from .densification import DensificationStats, densify_prune, split_children
from .gradient_check import check_gradients, format_reports, micro_scene_config
from .optimizer import GaussianOptimizer, exponential_learning_rate
from .schedule import schedule_at
from .step import compute_step, downscale_image, step_generator
from .trainer import Trainer, network_modules, train

__all__ = [
    "DensificationStats",
    "GaussianOptimizer",
    "Trainer",
    "check_gradients",
    "compute_step",
    "densify_prune",
    "downscale_image",
    "exponential_learning_rate",
    "format_reports",
    "micro_scene_config",
    "network_modules",
    "sample_baselines",
    "schedule_at",
    "split_children",
    "step_generator",
    "train",
]
