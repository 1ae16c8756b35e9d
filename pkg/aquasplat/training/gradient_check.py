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
Finite difference verification of every term of the training objective on a
micro-scene.
"""

import logging
from typing import Dict, List, Tuple

import numpy as np
import torch

from aquasplat.data_models import (
    DTYPE,
    PARAMETER_NAMES,
    FiniteDifferenceReport,
    FixtureSpec,
    GaussianCloud,
    LossTerm,
    TrainConfig,
)
from aquasplat.gradients import ParamSet, fd_check
from aquasplat.networks import MediumField
from aquasplat.simulation import make_fixture

from .schedule import schedule_at
from .step import compute_step
from .trainer import network_modules

MICRO_SCENE_GAUSSIANS = 5
MICRO_SCENE_SIZE = 8
CHECK_STEP = 5
CHECK_BASELINES = (0.15, 0.1)
NUM_NETWORK_ENTRIES = 30


def micro_scene_config(seed: int = 0) -> TrainConfig:
    """
    Return a configuration under which every loss term and the opacity adjustment
    are active at step CHECK_STEP, at full resolution.
    """
    return TrainConfig(
        total_steps=2 * CHECK_STEP,
        seed=seed,
        quarter_resolution_until=0.0,
        half_resolution_until=0.0,
        regularizer_start=0.0,
        regularizer_end=1.0,
        alpha_transition=1.0,
        candidate_opacity_threshold=0.5,
        min_warp_coverage=0.0,
        hidden_width=8,
        hidden_layers=1,
        direction_frequencies=2,
    )


def perturbed_cloud(cloud: GaussianCloud, generator: torch.Generator) -> GaussianCloud:
    """
    Return a copy of `cloud` with slightly shifted parameters, so that the loss of
    the copy against renders of the original is not at a minimum.
    """

    def noise(tensor: torch.Tensor, scale: float) -> torch.Tensor:
        return scale * torch.randn(tensor.shape, generator=generator, dtype=DTYPE)

    return GaussianCloud(
        means=cloud.means + noise(cloud.means, 0.05),
        log_scales=cloud.log_scales + noise(cloud.log_scales, 0.05),
        rotations=cloud.rotations + noise(cloud.rotations, 0.05),
        opacity_logits=cloud.opacity_logits + noise(cloud.opacity_logits, 0.2),
        colors=torch.clamp(cloud.colors + noise(cloud.colors, 0.05), 0.05, 0.95),
    )


def check_subset(params: ParamSet, seed: int) -> List[int]:
    """
    Return the flat indices to check: every cloud entry and a random sample of the
    network weights.
    """
    cloud_groups = len(PARAMETER_NAMES)
    num_cloud_entries = sum(tensor.numel() for tensor in params.tensors[:cloud_groups])
    num_network_entries = len(params) - num_cloud_entries
    rng = np.random.default_rng(seed)
    sampled = rng.choice(
        num_network_entries,
        size=min(NUM_NETWORK_ENTRIES, num_network_entries),
        replace=False,
    )
    network_indices = sorted(num_cloud_entries + int(index) for index in sampled)
    return list(range(num_cloud_entries)) + network_indices


def check_gradients(
    seed: int = 0, step_size: float = 1e-6, tolerance: float = 1e-4
) -> Dict[str, FiniteDifferenceReport]:
    """
    Compare the analytic gradient of every loss term with central finite
    differences on a micro-scene of five Gaussians seen by two 8x8 cameras.

    :param seed: Seed of the micro-scene
    :param step_size: Finite difference step size h
    :param tolerance: Maximum relative error per checked entry
    :return: FiniteDifferenceReport per loss term, keyed by term name
    """
    fixture = make_fixture(
        FixtureSpec(
            num_gaussians=MICRO_SCENE_GAUSSIANS,
            num_train_views=2,
            num_test_views=0,
            width=MICRO_SCENE_SIZE,
            height=MICRO_SCENE_SIZE,
            seed=seed,
        )
    )
    config = micro_scene_config(seed)
    generator = torch.Generator().manual_seed(seed)
    cloud = perturbed_cloud(fixture.cloud, generator).requires_grad_(True)
    field = MediumField(
        hidden_width=config.hidden_width,
        hidden_layers=config.hidden_layers,
        frequencies=config.direction_frequencies,
        scene_extent=fixture.dataset.scene_extent,
        seed=seed,
    )
    with torch.no_grad():
        for parameter in field.phi_alpha.parameters():
            noise = torch.randn(parameter.shape, generator=generator, dtype=DTYPE)
            parameter.add_(0.1 * noise)
    params = ParamSet.from_model(cloud, network_modules(field))
    subset = check_subset(params, seed)
    view = fixture.dataset.train_views[0]
    schedule = schedule_at(CHECK_STEP, config)

    reports: Dict[str, FiniteDifferenceReport] = {}
    for term in LossTerm:

        def objective(term: LossTerm = term) -> torch.Tensor:
            outputs = compute_step(
                cloud, field, view, schedule, config, CHECK_BASELINES
            )
            return outputs.report.term(term)

        reports[str(term)] = fd_check(
            objective, params, subset=subset, step_size=step_size, tolerance=tolerance
        )
        logging.info(f"Gradient check of '{term}': {reports[str(term)].summary()}")
    return reports


def format_reports(reports: Dict[str, FiniteDifferenceReport]) -> str:
    """
    Format gradient check reports as a table with one row per loss term.
    """
    header: Tuple[str, ...] = (
        "term",
        "checked",
        "excluded",
        "max_error",
        "mean_error",
        "status",
    )
    rows = [header]
    for name, report in reports.items():
        rows.append(
            (
                name,
                str(len(report.checked_entries)),
                str(len(report.excluded_entries)),
                f"{report.max_error:.3e}",
                f"{report.mean_error:.3e}",
                "PASS" if report.passed else "FAIL",
            )
        )
    widths = [max(len(row[column]) for row in rows) for column in range(len(header))]
    return "\n".join(
        "  ".join(value.ljust(width) for value, width in zip(row, widths))
        for row in rows
    )
