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
Forward pass of a single training step, shared by the trainer and the gradient check.
"""

import logging
from typing import Dict, Optional, Tuple

import numpy as np
import torch
import torch.nn.functional as F

from aquasplat.data_models import (
    AlphaAdjustState,
    CameraView,
    DatasetView,
    GaussianCloud,
    LossTerm,
    RenderBundle,
    ScheduleState,
    StepOutputs,
    TrainConfig,
    TrinocularLosses,
    VirtualViews,
    WarpAxis,
)
from aquasplat.geometry import (
    alignment_disparities,
    inverse_warp,
    make_virtual_poses,
    project_points,
    select_candidates,
    triangulate_depths,
)
from aquasplat.gradients import note_branch
from aquasplat.losses import (
    epipolar_loss,
    nearest_pixels,
    photometric_loss,
    residual_loss,
    sample_nearest,
    total_loss,
    trinocular_losses,
)
from aquasplat.networks import MediumField
from aquasplat.rendering import render


def downscale_image(image: torch.Tensor, divisor: int) -> torch.Tensor:
    """
    Downscale an (H, W, C) image by averaging `divisor` x `divisor` blocks.

    Trailing rows and columns that do not fill a block are dropped, matching
    `CameraView.downscaled`.
    """
    if divisor == 1:
        return image
    pooled = F.avg_pool2d(image.permute(2, 0, 1)[None], kernel_size=divisor)
    return pooled[0].permute(1, 2, 0)


def step_generator(seed: int, step: int) -> torch.Generator:
    """
    Return a random generator that depends only on the run seed and the step.
    """
    state = np.random.SeedSequence([seed, step]).generate_state(1)[0]
    return torch.Generator().manual_seed(int(state))


def _trinocular_terms(
    central: RenderBundle,
    cloud: GaussianCloud,
    field: Optional[MediumField],
    views: VirtualViews,
    alpha_state: AlphaAdjustState,
    ground_truth: torch.Tensor,
    config: TrainConfig,
) -> Tuple[TrinocularLosses, Dict[str, float]]:
    """
    Render the virtual views, warp their object images onto the central view and
    evaluate the trinocular losses.
    """
    disparities = alignment_disparities(central.depth, views)
    warped = {}
    for axis, camera, disparity in (
        (WarpAxis.HORIZONTAL, views.horizontal, disparities.horizontal),
        (WarpAxis.VERTICAL, views.vertical, disparities.vertical),
    ):
        bundle = render(cloud, camera, medium=field, alpha_state=alpha_state)
        warped[axis] = inverse_warp(
            bundle.object_image, disparity, axis, valid=disparities.valid
        )
    losses = trinocular_losses(
        central,
        warped[WarpAxis.HORIZONTAL],
        warped[WarpAxis.VERTICAL],
        ground_truth,
        disparities,
        gamma=config.smoothness_gamma,
        epsilon=config.rl1_epsilon,
        min_coverage=config.min_warp_coverage,
    )
    diagnostics = dict(losses.to_dict())
    diagnostics["coverage_horizontal"] = warped[WarpAxis.HORIZONTAL].coverage
    diagnostics["coverage_vertical"] = warped[WarpAxis.VERTICAL].coverage
    return losses, diagnostics


def _epipolar_term(
    central: RenderBundle,
    cloud: GaussianCloud,
    views: VirtualViews,
    config: TrainConfig,
    generator: torch.Generator,
) -> Tuple[torch.Tensor, Dict[str, float]]:
    """
    Triangulate the centers of confident Gaussians from the virtual views and
    compare the rendered central depth with the triangulated depth at their pixels.
    """
    camera = views.central
    candidates = select_candidates(
        cloud,
        [camera, views.horizontal, views.vertical],
        config.candidate_opacity_threshold,
    )
    num_candidates = candidates.shape[0]
    if num_candidates > config.max_candidates:
        subset = torch.randperm(num_candidates, generator=generator)
        candidates = candidates[subset[: config.max_candidates].sort().values]
    note_branch(candidates)

    with torch.no_grad():
        means = cloud.means.detach()[candidates]
        pixels_h, _, _ = project_points(views.horizontal, means)
        pixels_v, _, _ = project_points(views.vertical, means)
        pixels_c, _, _ = project_points(camera, means)
    priors, accepted = triangulate_depths(
        pixels_h,
        pixels_v,
        views.horizontal.projection_matrix,
        views.vertical.projection_matrix,
        camera,
    )
    note_branch(accepted)
    locations = nearest_pixels(pixels_c[accepted])
    note_branch(locations)
    loss = epipolar_loss(
        sample_nearest(central.depth, pixels_c[accepted]),
        priors[accepted],
        central.composite,
        locations,
    )
    diagnostics = {
        "num_candidates": float(num_candidates),
        "num_triangulated": float(accepted.sum()),
    }
    return loss, diagnostics


def compute_step(
    cloud: GaussianCloud,
    field: Optional[MediumField],
    view: DatasetView,
    schedule: ScheduleState,
    config: TrainConfig,
    baselines: Tuple[float, float],
) -> StepOutputs:
    """
    Run the forward pass of one training step and evaluate the objective.

    The central view is rendered at the scheduled resolution with the scheduled
    opacity adjustment. While the regularizers are active, the horizontally and
    vertically translated virtual views are rendered with the same adjustment,
    their object images are warped onto the central view for the trinocular loss,
    and confident Gaussians are triangulated from them for the epipolar loss. The
    result only depends on the arguments.

    :param cloud: GaussianCloud being optimized
    :param field: MediumField being optimized, or None to render without a medium
    :param view: Training view of the step
    :param schedule: ScheduleState of the step
    :param config: TrainConfig of the run
    :param baselines: Tuple of the horizontal and vertical baselines (b_h, b_v)
    :return: StepOutputs holding the loss report and the central render
    """
    divisor = schedule.resolution_divisor
    camera: CameraView = view.camera.downscaled(divisor)
    ground_truth = downscale_image(view.image, divisor)
    alpha_state = AlphaAdjustState(weight=schedule.alpha_weight)

    central = render(cloud, camera, medium=field, alpha_state=alpha_state)
    photometric = photometric_loss(
        central.composite,
        ground_truth,
        lambda_ssim=config.lambda_ssim,
        epsilon=config.rl1_epsilon,
    )
    components: Dict[str, float] = {
        "resolution_divisor": float(divisor),
        "alpha_weight": schedule.alpha_weight,
        "num_gaussians": float(len(cloud)),
        "baseline_h": float(baselines[0]),
        "baseline_v": float(baselines[1]),
    }

    trinocular: Optional[TrinocularLosses] = None
    epipolar: Optional[torch.Tensor] = None
    if schedule.trinocular_active or schedule.epipolar_active:
        views = make_virtual_poses(camera, *baselines)
        if schedule.trinocular_active:
            trinocular, diagnostics = _trinocular_terms(
                central, cloud, field, views, alpha_state, ground_truth, config
            )
            components.update(diagnostics)
        if schedule.epipolar_active:
            epipolar, diagnostics = _epipolar_term(
                central,
                cloud,
                views,
                config,
                step_generator(config.seed, schedule.step),
            )
            components.update(diagnostics)

    residual: Optional[torch.Tensor] = None
    if config.use_residual:
        residual = residual_loss(
            cloud, camera, central.depth, bilinear=config.residual_bilinear
        )

    report = total_loss(
        photometric,
        trinocular,
        epipolar,
        residual,
        schedule,
        config,
        components=components,
    )
    terms = {
        str(term): report.weight(term) * report.term(term)
        for term in LossTerm.weighted_terms()
        if report.active.get(term, False)
    }
    logging.debug(f"Step {schedule.step}: total loss {float(report.total):.6f}")
    return StepOutputs(report=report, central=central, terms=terms)
