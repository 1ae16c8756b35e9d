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

import logging
import math

import attr
import torch

from aquasplat.data_models import (
    DTYPE,
    DensificationResult,
    GaussianCloud,
    SplatList,
    TrainConfig,
)
from aquasplat.scene import quaternion_to_rotation

SPLIT_CHILDREN = 2
SPLIT_SCALE_FACTOR = 0.8 * SPLIT_CHILDREN
# Children of a split Gaussian have their scales divided by this factor


@attr.define(slots=False)
class DensificationStats:
    """
    Running average of the screen-space positional gradient of every Gaussian.

    :var gradient_sum: Sum of the norms of the screen-space mean gradients, shape (N,)
    :var counts: Number of steps in which each Gaussian was rendered, shape (N,)
    """

    gradient_sum: torch.Tensor
    counts: torch.Tensor

    @classmethod
    def zeros(cls, num_gaussians: int) -> "DensificationStats":
        """
        Create empty statistics for a cloud of `num_gaussians` Gaussians.
        """
        return cls(
            gradient_sum=torch.zeros(num_gaussians, dtype=DTYPE),
            counts=torch.zeros(num_gaussians, dtype=DTYPE),
        )

    def __len__(self) -> int:
        """
        Return the number of tracked Gaussians.
        """
        return self.gradient_sum.shape[0]

    def accumulate(self, splats: SplatList) -> None:
        """
        Add the screen-space gradients of a rendered SplatList to the statistics.

        Must be called after back-propagation, when `splats.means2d.grad` holds the
        gradient of the loss with respect to the projected centers.

        :param splats: SplatList of the central render of the step
        """
        gradient = splats.means2d.grad
        if gradient is None or len(splats) == 0:
            return
        norms = torch.linalg.norm(gradient.detach(), dim=1)
        self.gradient_sum.index_add_(0, splats.indices, norms)
        self.counts.index_add_(0, splats.indices, torch.ones_like(norms))

    def average(self) -> torch.Tensor:
        """
        Return the mean gradient norm per Gaussian, 0 for Gaussians never rendered.
        """
        return torch.where(
            self.counts > 0,
            self.gradient_sum / torch.clamp(self.counts, min=1.0),
            torch.zeros_like(self.gradient_sum),
        )


def split_children(cloud: GaussianCloud, generator: torch.Generator) -> GaussianCloud:
    """
    Replace every Gaussian of `cloud` by SPLIT_CHILDREN smaller copies.

    Child positions are drawn from the parent Gaussian itself and child scales are
    the parent scales divided by SPLIT_SCALE_FACTOR. Rotation, opacity and color are
    inherited.

    :param cloud: Gaussians to split
    :param generator: Seeded random generator for the child positions
    :return: GaussianCloud holding the children, all first children first
    """
    with torch.no_grad():
        scales = cloud.scales.repeat(SPLIT_CHILDREN, 1)
        noise = torch.randn(scales.shape, generator=generator, dtype=DTYPE)
        rotations = quaternion_to_rotation(cloud.rotations).repeat(SPLIT_CHILDREN, 1, 1)
        offsets = (rotations @ (noise * scales)[:, :, None])[:, :, 0]
        return GaussianCloud(
            means=cloud.means.repeat(SPLIT_CHILDREN, 1) + offsets,
            log_scales=cloud.log_scales.repeat(SPLIT_CHILDREN, 1)
            - math.log(SPLIT_SCALE_FACTOR),
            rotations=cloud.rotations.repeat(SPLIT_CHILDREN, 1),
            opacity_logits=cloud.opacity_logits.repeat(SPLIT_CHILDREN),
            colors=cloud.colors.repeat(SPLIT_CHILDREN, 1),
        )


def densify_prune(
    cloud: GaussianCloud,
    stats: DensificationStats,
    config: TrainConfig,
    scene_extent: float,
    generator: torch.Generator,
) -> DensificationResult:
    """
    Adapt the density of a cloud to its reconstruction error.

    Gaussians whose average screen-space gradient reaches
    `config.densify_grad_threshold` are densified: small ones (largest scale at most
    `config.percent_dense` times the scene extent) are cloned, large ones are split
    into two children. Gaussians with an opacity below
    `config.prune_opacity_threshold` are then removed, as are newly created
    Gaussians that do not fit within `config.max_gaussians`.

    :param cloud: Current cloud
    :param stats: Gradient statistics accumulated since the last pass
    :param config: TrainConfig holding the thresholds
    :param scene_extent: Radius of the scene, scaling the size threshold
    :param generator: Seeded random generator for the split children
    :return: DensificationResult holding the new cloud and its row mapping
    """
    if len(stats) != len(cloud):
        raise ValueError(
            f"Densification statistics track {len(stats)} Gaussians, but the cloud "
            f"holds {len(cloud)}."
        )
    cloud = cloud.detached()
    num_gaussians = len(cloud)
    with torch.no_grad():
        high_gradient = stats.average() >= config.densify_grad_threshold
        small = cloud.scales.max(dim=1).values <= config.percent_dense * scene_extent
        clone_mask = high_gradient & small
        split_mask = high_gradient & ~small

        clone_sources = torch.nonzero(clone_mask, as_tuple=False).reshape(-1)
        split_sources = torch.nonzero(split_mask, as_tuple=False).reshape(-1)
        children = split_children(cloud.masked(split_mask), generator)
        combined = cloud.concatenated(cloud.masked(clone_mask)).concatenated(children)
        sources = torch.cat(
            [
                torch.arange(num_gaussians),
                clone_sources,
                split_sources.repeat(SPLIT_CHILDREN),
            ]
        )
        fresh = torch.arange(len(combined)) >= num_gaussians

        keep = combined.opacities >= config.prune_opacity_threshold
        keep[:num_gaussians] &= ~split_mask
        kept = torch.nonzero(keep, as_tuple=False).reshape(-1)
        if kept.shape[0] > config.max_gaussians:
            logging.info(
                f"Densification would grow the cloud to {kept.shape[0]} Gaussians; "
                f"keeping the first {config.max_gaussians}."
            )
            kept = kept[: config.max_gaussians]

    result = DensificationResult(
        cloud=combined.masked(kept),
        sources=sources[kept],
        fresh=fresh[kept],
        num_cloned=int(clone_mask.sum()),
        num_split=int(split_mask.sum()),
        num_pruned=len(combined) - kept.shape[0] - int(split_mask.sum()),
    )
    logging.debug(
        f"Densification: cloned {result.num_cloned}, split {result.num_split}, "
        f"pruned {result.num_pruned}; the cloud now holds {len(result.cloud)} "
        f"Gaussians."
    )
    return result
