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

from typing import Any, Dict, List, Optional, Union

import attr
import torch

from .enums import AlphaDecay, TrainPreset
from .gaussians import GaussianCloud
from .losses import LossReport
from .render_bundle import RenderBundle
from .utils import str_to_enum_converter


@attr.define(slots=False)
class TrainConfig:
    """
    Configuration of a training run.

    All step boundaries are expressed as fractions of `total_steps`. The class doubles
    as the schema for configuration files, so every field has a plain type and a
    default value.

    :var total_steps: Number of optimization steps S
    :var seed: Seed for all random number generators of the run
    :var num_threads: Number of CPU threads used by torch, fixed for reproducibility
    :var quarter_resolution_until: Fraction of S during which images are rendered at
        1/4 resolution
    :var half_resolution_until: Fraction of S during which images are rendered at
        1/2 resolution
    :var regularizer_start: Fraction of S at which the trinocular and epipolar
        losses become active
    :var regularizer_end: Fraction of S at which they become inactive again
    :var alpha_transition: Fraction of S after which the opacity adjustment is off
    :var alpha_initial_weight: Blend weight of the opacity adjustment at step 0
    :var alpha_decay: How the blend weight goes to zero
    :var densify_from_step: First step at which densification may run
    :var densify_until: Fraction of S after which densification stops
    :var densify_interval: Number of steps between densification passes
    :var densify_grad_threshold: Screen-space gradient threshold for densification
    :var prune_opacity_threshold: Gaussians with lower opacity are pruned
    :var percent_dense: Fraction of the scene extent separating small Gaussians
        (cloned) from large Gaussians (split)
    :var max_gaussians: Upper bound on the size of the cloud
    :var lambda_ssim: Weight of the SSIM part of the photometric loss
    :var lambda_tri: Weight of the trinocular loss
    :var lambda_res: Weight of the depth residual loss
    :var lambda_epi_start: Weight of the epipolar loss at the start of its window
    :var lambda_epi_end: Weight of the epipolar loss at the end of its window
    :var rl1_epsilon: Regularizer of the relative L1 denominator
    :var smoothness_gamma: Edge sensitivity of the disparity smoothness term
    :var candidate_opacity_threshold: Minimum opacity for epipolar candidates
    :var max_candidates: Maximum number of epipolar candidates per step
    :var min_warp_coverage: Warp masks covering less than this fraction of the image
        disable the corresponding stereo term for the step
    :var baseline_range: Vertical baselines are drawn from U[-range, range]
    :var horizontal_baseline_ratio: Ratio b_h / b_v
    :var lr_means: Initial learning rate of the means, relative to the scene extent
    :var lr_means_final: Final learning rate of the means, relative to the extent
    :var lr_log_scales: Learning rate of the log scales
    :var lr_rotations: Learning rate of the rotations
    :var lr_opacity: Learning rate of the opacity logits
    :var lr_colors: Learning rate of the colors
    :var lr_networks: Learning rate of the medium and opacity networks
    :var use_trinocular: Enable the trinocular loss
    :var use_epipolar: Enable the epipolar loss
    :var use_residual: Enable the depth residual loss
    :var use_alpha_adjust: Enable the depth-aware opacity adjustment
    :var residual_bilinear: Sample the rendered depth bilinearly instead of at the
        nearest pixel in the depth residual loss
    :var hidden_width: Width of the hidden layers of both networks
    :var hidden_layers: Number of hidden layers of both networks
    :var direction_frequencies: Number of frequencies of the direction encoding
    :var init_num_gaussians: Number of Gaussians in the initial cloud
    :var init_opacity: Opacity of the initial Gaussians
    :var checkpoint_interval: Number of steps between checkpoints, 0 disables
        intermediate checkpoints
    """

    total_steps: int = 2000
    seed: int = 0
    num_threads: int = 1

    quarter_resolution_until: float = 0.2
    half_resolution_until: float = 0.4

    regularizer_start: float = 0.4
    regularizer_end: float = 0.8

    alpha_transition: float = 0.4
    alpha_initial_weight: float = 0.5
    alpha_decay: AlphaDecay = attr.field(
        default=AlphaDecay.STEP, converter=str_to_enum_converter(AlphaDecay)
    )

    densify_from_step: int = 100
    densify_until: float = 0.7
    densify_interval: int = 100
    densify_grad_threshold: float = 2e-4
    prune_opacity_threshold: float = 0.005
    percent_dense: float = 0.01
    max_gaussians: int = 600

    lambda_ssim: float = 0.2
    lambda_tri: float = 0.1
    lambda_res: float = 0.01
    lambda_epi_start: float = 0.4
    lambda_epi_end: float = 0.2
    rl1_epsilon: float = 1e-3
    smoothness_gamma: float = 1.0

    candidate_opacity_threshold: float = 0.8
    max_candidates: int = 4096
    min_warp_coverage: float = 0.1
    baseline_range: float = 0.4
    horizontal_baseline_ratio: float = 1.5

    lr_means: float = 1.6e-4
    lr_means_final: float = 1.6e-6
    lr_log_scales: float = 5e-3
    lr_rotations: float = 1e-3
    lr_opacity: float = 5e-2
    lr_colors: float = 2.5e-3
    lr_networks: float = 1e-3

    use_trinocular: bool = True
    use_epipolar: bool = True
    use_residual: bool = True
    use_alpha_adjust: bool = True
    residual_bilinear: bool = False

    hidden_width: int = 32
    hidden_layers: int = 2
    direction_frequencies: int = 4

    init_num_gaussians: int = 100
    init_opacity: float = 0.1
    checkpoint_interval: int = 500

    def __attrs_post_init__(self) -> None:
        """
        Validate the relations between the configuration values.
        """
        if self.total_steps < 1:
            raise ValueError(f"total_steps must be positive, got {self.total_steps}")
        fractions = {
            "quarter_resolution_until": self.quarter_resolution_until,
            "half_resolution_until": self.half_resolution_until,
            "regularizer_start": self.regularizer_start,
            "regularizer_end": self.regularizer_end,
            "alpha_transition": self.alpha_transition,
            "densify_until": self.densify_until,
        }
        for name, value in fractions.items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be a fraction in [0, 1], got {value}")
        if self.quarter_resolution_until > self.half_resolution_until:
            raise ValueError(
                "quarter_resolution_until must not exceed half_resolution_until"
            )
        if self.regularizer_start > self.regularizer_end:
            raise ValueError("regularizer_start must not exceed regularizer_end")
        if not 0.0 <= self.alpha_initial_weight <= 1.0:
            raise ValueError(
                f"alpha_initial_weight must be in [0, 1], got "
                f"{self.alpha_initial_weight}"
            )
        weights = {
            "lambda_ssim": self.lambda_ssim,
            "lambda_tri": self.lambda_tri,
            "lambda_res": self.lambda_res,
            "lambda_epi_start": self.lambda_epi_start,
            "lambda_epi_end": self.lambda_epi_end,
        }
        for name, value in weights.items():
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")
        if not 0.0 < self.candidate_opacity_threshold < 1.0:
            raise ValueError("candidate_opacity_threshold must be in (0, 1)")
        if self.max_gaussians < 1 or self.init_num_gaussians < 1:
            raise ValueError("The cloud must be allowed to hold at least one Gaussian")

    @classmethod
    def from_preset(
        cls, preset: Union[str, TrainPreset], **overrides: Any
    ) -> "TrainConfig":
        """
        Create a configuration that follows one of the named schedules.

        :param preset: TrainPreset or its string value
        :param overrides: Additional field values that take precedence over the preset
        :return: TrainConfig instance
        """
        preset = str_to_enum_converter(TrainPreset)(preset)
        values: Dict[str, Any] = dict(_PRESET_VALUES[preset])
        values.update(overrides)
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        """
        Return the configuration as a flat dictionary. Enum values are represented
        by their member name.
        """
        output: Dict[str, Any] = {}
        for field in attr.fields(type(self)):
            value = getattr(self, field.name)
            output[field.name] = getattr(value, "name", value)
        return output


_PRESET_VALUES: Dict[TrainPreset, Dict[str, Any]] = {
    TrainPreset.STANDARD: {
        "regularizer_start": 0.4,
        "regularizer_end": 0.8,
        "alpha_transition": 0.4,
        "densify_until": 0.7,
    },
    TrainPreset.EXTENDED: {
        "regularizer_start": 0.4,
        "regularizer_end": 0.8,
        "alpha_transition": 2.0 / 3.0,
        "densify_until": 2.0 / 3.0,
    },
}


@attr.define(slots=False, frozen=True)
class ScheduleState:
    """
    Effective values of all scheduled quantities at one training step.

    :var step: Training step t
    :var resolution_divisor: Image downscaling divisor, one of 4, 2, 1
    :var trinocular_active: True if the trinocular loss is active
    :var epipolar_active: True if the epipolar loss is active
    :var lambda_epi: Weight of the epipolar loss, 0 when inactive
    :var alpha_weight: Blend weight w of the opacity adjustment
    :var densify_active: True if densification may run at this step
    """

    step: int
    resolution_divisor: int
    trinocular_active: bool
    epipolar_active: bool
    lambda_epi: float
    alpha_weight: float
    densify_active: bool

    def to_dict(self) -> Dict[str, Any]:
        """
        Return the schedule state as a flat dictionary.
        """
        return attr.asdict(self)


@attr.define(slots=False)
class StepOutputs:
    """
    Everything computed in the forward pass of one training step.

    :var report: LossReport of the step
    :var central: RenderBundle of the central view
    :var terms: Weighted loss terms that were summed into the total, keyed by name.
        Used to trace non-finite gradients back to a term
    """

    report: LossReport
    central: RenderBundle
    terms: Dict[str, torch.Tensor] = attr.field(factory=dict)


@attr.define(slots=False)
class DensificationResult:
    """
    Outcome of a densification pass.

    Row i of the new cloud was derived from row `sources[i]` of the old cloud. Rows
    with `fresh[i]` set are new Gaussians (clones or split children), the others are
    surviving Gaussians carried over unchanged.

    :var cloud: Cloud after cloning, splitting and pruning
    :var sources: Index of the originating Gaussian in the old cloud, shape (N',)
    :var fresh: True for Gaussians created by this pass, shape (N',)
    :var num_cloned: Number of cloned Gaussians
    :var num_split: Number of Gaussians that were split
    :var num_pruned: Number of Gaussians removed for low opacity or the size cap
    """

    cloud: GaussianCloud
    sources: torch.Tensor
    fresh: torch.Tensor
    num_cloned: int = 0
    num_split: int = 0
    num_pruned: int = 0

    @property
    def changed(self) -> bool:
        """
        Return True if the pass added or removed any Gaussian.
        """
        return bool(self.num_cloned or self.num_split or self.num_pruned)


@attr.define(slots=False)
class TrainingResult:
    """
    Outcome of a training run.

    :var cloud: Optimized Gaussian cloud, detached
    :var field: Optimized medium and opacity networks
    :var log: One record per step followed by the validation record
    :var validation: Held-out metrics computed after the last step
    :var checkpoint_dir: Directory of the final checkpoint, if one was written
    """

    cloud: GaussianCloud
    field: Any
    log: List[Dict[str, Any]] = attr.field(factory=list)
    validation: Dict[str, Any] = attr.field(factory=dict)
    checkpoint_dir: Optional[str] = None


@attr.define(slots=False)
class Checkpoint:
    """
    Snapshot of a training run.

    :var cloud: Gaussian cloud at the time of the snapshot
    :var field: MediumField at the time of the snapshot
    :var config: TrainConfig of the run
    :var step: Number of completed training steps
    """

    cloud: GaussianCloud
    field: Any
    config: TrainConfig
    step: int
