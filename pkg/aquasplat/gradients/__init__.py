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

The `gradients` package holds the differentiation contract of aquasplat. Gradients
are computed by torch autograd over the float64 forward pass. This package adds:

- the forward tape that records stop-gradient values and discrete decisions of a
  forward pass,
- a named, ordered view on all learnable parameters and their gradients,
- a central finite difference checker built on the tape.

Module contents
---------------

.. automodule:: aquasplat.gradients.tape
   :members:

.. automodule:: aquasplat.gradients.param_set
   :members:

.. automodule:: aquasplat.gradients.finite_differences
   :members:
"""

from .finite_differences import fd_check, relative_error
from .param_set import GradSet, ParamSet, backward, gradients_of
from .tape import ForwardTape, TapeMode, active_tape, note_branch, stop_gradient

__all__ = [
    "ForwardTape",
    "GradSet",
    "ParamSet",
    "TapeMode",
    "active_tape",
    "backward",
    "fd_check",
    "gradients_of",
    "note_branch",
    "relative_error",
    "stop_gradient",
]
