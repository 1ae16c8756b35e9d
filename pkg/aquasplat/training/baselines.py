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

from typing import Tuple

import numpy as np


def sample_baselines(
    rng: np.random.Generator, baseline_range: float = 0.4, ratio: float = 1.5
) -> Tuple[float, float]:
    """
    Draw the baselines of the virtual stereo views for one training step.

    The vertical baseline b_v is uniform on [-baseline_range, baseline_range] and the
    horizontal baseline is b_h = ratio * b_v.

    :param rng: Seeded numpy random generator
    :param baseline_range: Half width of the interval b_v is drawn from
    :param ratio: Ratio b_h / b_v
    :return: Tuple of (b_h, b_v)
    """
    if baseline_range < 0:
        raise ValueError(f"Baseline range must be non-negative, got {baseline_range}")
    baseline_v = float(rng.uniform(-baseline_range, baseline_range))
    return ratio * baseline_v, baseline_v
