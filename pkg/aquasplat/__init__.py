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

These pages contain the documentation for the main class,
:py:class:`~aquasplat.aquasplat.AquaSplat`.

The :py:class:`~aquasplat.aquasplat.AquaSplat` class implements convenience
methods for the full reconstruction pipeline of scenes seen through a scattering
medium such as water or fog: generating degraded datasets, training a Gaussian
cloud together with the medium networks, rendering a trained checkpoint with or
without the medium, evaluating rendered images and verifying the analytic gradients
of the training objective.

For example, to train on a synthetic fixture, simply do:

.. code-block:: python

   from aquasplat import AquaSplat
   from aquasplat.data_models import FixtureSpec, TrainConfig

   aquasplat = AquaSplat()
   aquasplat.simulate_fixture(FixtureSpec(num_gaussians=200), output_dir="fixture")
   result = aquasplat.train(TrainConfig(total_steps=2000), "fixture", "run")

For custom operations or more fine-grained control over the behavior, the
subpackages :py:mod:`~aquasplat.rendering`, :py:mod:`~aquasplat.losses` and
:py:mod:`~aquasplat.training` should be used.

Module contents
---------------

.. autoclass:: aquasplat.aquasplat::AquaSplat
   :no-members:

   .. rubric:: Dataset generation

   .. automethod:: simulate_fixture

   .. automethod:: simulate_images

   .. rubric:: Training and rendering

   .. automethod:: train

   .. automethod:: render

   .. rubric:: Evaluation

   .. automethod:: evaluate

   .. automethod:: check_gradients

"""

from .aquasplat import AquaSplat

__version__ = "1.0.0"

__all__ = ["AquaSplat"]
