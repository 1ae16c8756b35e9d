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

from typing import Dict, Optional

import torch

from aquasplat.data_models import (
    DTYPE,
    LossReport,
    LossTerm,
    ScheduleState,
    TrainConfig,
    TrinocularLosses,
)


def total_loss(
    photometric: torch.Tensor,
    trinocular: Optional[TrinocularLosses],
    epipolar: Optional[torch.Tensor],
    residual: Optional[torch.Tensor],
    schedule: ScheduleState,
    config: TrainConfig,
    components: Optional[Dict[str, float]] = None,
) -> LossReport:
    """
    Combine the loss terms of one step into the training objective,
    L = L_photo + lambda_tri L_tri + lambda_epi L_epi + lambda_res L_res.

    A term is active when the schedule enables it, the configuration does not
    disable it and a value was computed. Inactive terms are reported as exactly zero
    and contribute nothing to the total.

    :param photometric: Photometric loss, always active
    :param trinocular: Trinocular losses, or None if not computed this step
    :param epipolar: Epipolar loss, or None if not computed this step
    :param residual: Depth residual loss, or None if not computed this step
    :param schedule: ScheduleState of the step
    :param config: TrainConfig of the run
    :param components: Additional diagnostic scalars to store in the report
    :return: LossReport holding all terms, their weights and the total
    """
    zero = torch.zeros((), dtype=DTYPE)
    active = {
        LossTerm.PHOTOMETRIC: True,
        LossTerm.TRINOCULAR: bool(
            schedule.trinocular_active
            and config.use_trinocular
            and trinocular is not None
        ),
        LossTerm.EPIPOLAR: bool(
            schedule.epipolar_active and config.use_epipolar and epipolar is not None
        ),
        LossTerm.RESIDUAL: bool(config.use_residual and residual is not None),
    }
    trinocular_value = trinocular.total if active[LossTerm.TRINOCULAR] else zero
    epipolar_value = epipolar if active[LossTerm.EPIPOLAR] else zero
    residual_value = residual if active[LossTerm.RESIDUAL] else zero
    lambda_epi = schedule.lambda_epi if active[LossTerm.EPIPOLAR] else 0.0

    total = photometric
    if active[LossTerm.TRINOCULAR]:
        total = total + config.lambda_tri * trinocular_value
    if active[LossTerm.EPIPOLAR]:
        total = total + lambda_epi * epipolar_value
    if active[LossTerm.RESIDUAL]:
        total = total + config.lambda_res * residual_value

    report_components: Dict[str, float] = {}
    if trinocular is not None and active[LossTerm.TRINOCULAR]:
        report_components.update(trinocular.to_dict())
    if components is not None:
        report_components.update(components)
    return LossReport(
        photometric=photometric,
        trinocular=trinocular_value,
        epipolar=epipolar_value,
        residual=residual_value,
        total=total,
        lambda_tri=config.lambda_tri,
        lambda_epi=lambda_epi,
        lambda_res=config.lambda_res,
        lambda_ssim=config.lambda_ssim,
        active=active,
        components=report_components,
    )
