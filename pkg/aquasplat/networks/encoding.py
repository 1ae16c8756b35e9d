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

import math

import torch


def encoded_size(frequencies: int) -> int:
    """
    Return the length of a direction encoding with `frequencies` frequencies.
    """
    return 3 + 6 * frequencies


def encode_direction(directions: torch.Tensor, frequencies: int) -> torch.Tensor:
    """
    Encode unit directions with sinusoids of increasing frequency.

    The encoding is the direction itself followed, for every k < `frequencies`, by
    sin(2^k pi v) and cos(2^k pi v) of its three components.

    :param directions: Unit vectors, shape (..., 3)
    :param frequencies: Number of frequencies, at least 0
    :return: Tensor of shape (..., 3 + 6 * frequencies)
    """
    if frequencies < 0:
        raise ValueError(
            f"Number of frequencies must be non-negative, got {frequencies}"
        )
    features = [directions]
    for k in range(frequencies):
        scaled = (2.0**k) * math.pi * directions
        features.append(torch.sin(scaled))
        features.append(torch.cos(scaled))
    return torch.cat(features, dim=-1)
