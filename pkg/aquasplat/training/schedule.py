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

from aquasplat.data_models import AlphaDecay, ScheduleState, TrainConfig
from aquasplat.exceptions import ScheduleError


def _resolution_divisor(step: int, config: TrainConfig) -> int:
    """
    Return the image downscaling divisor at `step`: 4, then 2, then 1.
    """
    total = config.total_steps
    if step < config.quarter_resolution_until * total:
        return 4
    if step < config.half_resolution_until * total:
        return 2
    return 1


def _alpha_weight(step: int, config: TrainConfig) -> float:
    """
    Return the blend weight w of the depth-aware opacity adjustment at `step`.
    """
    transition = config.alpha_transition * config.total_steps
    if not config.use_alpha_adjust or step >= transition:
        return 0.0
    if config.alpha_decay == AlphaDecay.LINEAR:
        return config.alpha_initial_weight * (1.0 - step / transition)
    return config.alpha_initial_weight


def _epipolar_weight(step: int, config: TrainConfig) -> float:
    """
    Return the epipolar loss weight, interpolated linearly over the regularizer
    window.
    """
    start = config.regularizer_start * config.total_steps
    end = config.regularizer_end * config.total_steps
    if end <= start:
        return config.lambda_epi_start
    fraction = (step - start) / (end - start)
    return config.lambda_epi_start + fraction * (
        config.lambda_epi_end - config.lambda_epi_start
    )


def schedule_at(step: int, config: TrainConfig) -> ScheduleState:
    """
    Return the effective value of every scheduled quantity at a training step.

    The result depends on `step` and `config` only.

    :param step: Training step t, in [0, total_steps)
    :param config: TrainConfig of the run
    :raises ScheduleError: If `step` is outside the training horizon
    :return: ScheduleState for the step
    """
    total = config.total_steps
    if not 0 <= step < total:
        raise ScheduleError(f"Step {step} is outside the training horizon [0, {total})")
    regularizers_active = (
        config.regularizer_start * total <= step < config.regularizer_end * total
    )
    epipolar_active = regularizers_active and config.use_epipolar
    return ScheduleState(
        step=step,
        resolution_divisor=_resolution_divisor(step, config),
        trinocular_active=regularizers_active and config.use_trinocular,
        epipolar_active=epipolar_active,
        lambda_epi=_epipolar_weight(step, config) if epipolar_active else 0.0,
        alpha_weight=_alpha_weight(step, config),
        densify_active=step < config.densify_until * total,
    )
