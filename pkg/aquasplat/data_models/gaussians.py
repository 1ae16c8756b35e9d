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

from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import attr
import torch

from .utils import DTYPE, to_optional_tensor, to_tensor

PARAMETER_NAMES: Tuple[str, ...] = (
    "means",
    "log_scales",
    "rotations",
    "opacity_logits",
    "colors",
)
# Order in which the learnable tensors of a GaussianCloud are flattened

PARAMETER_WIDTHS: Dict[str, int] = {
    "means": 3,
    "log_scales": 3,
    "rotations": 4,
    "opacity_logits": 1,
    "colors": 3,
}


@attr.define(slots=False)
class GaussianPrimitive:
    """
    Representation of a single anisotropic 3D Gaussian.

    :var mean: Center of the Gaussian in world coordinates, shape (3,)
    :var log_scale: Natural logarithm of the per-axis standard deviations, shape (3,)
    :var rotation: Unit quaternion (w, x, y, z) orienting the Gaussian, shape (4,)
    :var opacity_logit: Logit of the peak opacity
    :var color: RGB color in [0, 1], shape (3,)
    """

    mean: torch.Tensor = attr.field(converter=to_tensor)
    log_scale: torch.Tensor = attr.field(converter=to_tensor)
    rotation: torch.Tensor = attr.field(converter=to_tensor)
    opacity_logit: torch.Tensor = attr.field(converter=to_tensor)
    color: torch.Tensor = attr.field(converter=to_tensor)

    def __attrs_post_init__(self) -> None:
        """
        Validate the shapes of the primitive's parameters.
        """
        expected = {
            "mean": (3,),
            "log_scale": (3,),
            "rotation": (4,),
            "opacity_logit": (),
            "color": (3,),
        }
        for name, shape in expected.items():
            value = getattr(self, name)
            if tuple(value.shape) != shape:
                raise ValueError(
                    f"Invalid shape {tuple(value.shape)} for Gaussian field '{name}', "
                    f"expected {shape}."
                )

    @property
    def opacity(self) -> torch.Tensor:
        """
        Return the peak opacity of the Gaussian, in (0, 1).
        """
        return torch.sigmoid(self.opacity_logit)

    @property
    def scale(self) -> torch.Tensor:
        """
        Return the per-axis standard deviations of the Gaussian.
        """
        return torch.exp(self.log_scale)


@attr.define(slots=False)
class GaussianCloud:
    """
    Ordered collection of 3D Gaussians, stored as one tensor per parameter.

    The ordering of the Gaussians is their identity: it is used to break ties
    between Gaussians at equal depth.

    :var means: Centers, shape (N, 3)
    :var log_scales: Log standard deviations, shape (N, 3)
    :var rotations: Quaternions (w, x, y, z), shape (N, 4)
    :var opacity_logits: Opacity logits, shape (N,)
    :var colors: RGB colors in [0, 1], shape (N, 3)
    """

    means: torch.Tensor = attr.field(converter=to_tensor)
    log_scales: torch.Tensor = attr.field(converter=to_tensor)
    rotations: torch.Tensor = attr.field(converter=to_tensor)
    opacity_logits: torch.Tensor = attr.field(converter=to_tensor)
    colors: torch.Tensor = attr.field(converter=to_tensor)

    def __attrs_post_init__(self) -> None:
        """
        Validate that all parameter tensors describe the same number of Gaussians.
        """
        num_gaussians = self.means.shape[0] if self.means.ndim > 0 else -1
        for name in PARAMETER_NAMES:
            value = getattr(self, name)
            width = PARAMETER_WIDTHS[name]
            expected = (num_gaussians,) if width == 1 else (num_gaussians, width)
            if tuple(value.shape) != expected:
                raise ValueError(
                    f"Invalid shape {tuple(value.shape)} for cloud parameter "
                    f"'{name}', expected {expected}."
                )

    def __len__(self) -> int:
        """
        Return the number of Gaussians in the cloud.
        """
        return self.means.shape[0]

    def __getitem__(self, index: int) -> GaussianPrimitive:
        """
        Return the Gaussian at position `index` as a GaussianPrimitive.
        """
        return GaussianPrimitive(
            mean=self.means[index],
            log_scale=self.log_scales[index],
            rotation=self.rotations[index],
            opacity_logit=self.opacity_logits[index],
            color=self.colors[index],
        )

    def __iter__(self) -> Iterator[GaussianPrimitive]:
        """
        Iterate over the Gaussians in the cloud.
        """
        for index in range(len(self)):
            yield self[index]

    @classmethod
    def empty(cls) -> "GaussianCloud":
        """
        Create a cloud that contains no Gaussians.
        """
        return cls(
            means=torch.zeros((0, 3), dtype=DTYPE),
            log_scales=torch.zeros((0, 3), dtype=DTYPE),
            rotations=torch.zeros((0, 4), dtype=DTYPE),
            opacity_logits=torch.zeros((0,), dtype=DTYPE),
            colors=torch.zeros((0, 3), dtype=DTYPE),
        )

    @classmethod
    def from_primitives(
        cls, primitives: Sequence[GaussianPrimitive]
    ) -> "GaussianCloud":
        """
        Create a cloud from a sequence of individual Gaussians.

        :param primitives: Gaussians to collect, in order
        :return: GaussianCloud holding the Gaussians
        """
        if len(primitives) == 0:
            return cls.empty()
        return cls(
            means=torch.stack([p.mean for p in primitives]),
            log_scales=torch.stack([p.log_scale for p in primitives]),
            rotations=torch.stack([p.rotation for p in primitives]),
            opacity_logits=torch.stack([p.opacity_logit for p in primitives]),
            colors=torch.stack([p.color for p in primitives]),
        )

    @property
    def opacities(self) -> torch.Tensor:
        """
        Return the peak opacities of all Gaussians, shape (N,).
        """
        return torch.sigmoid(self.opacity_logits)

    @property
    def scales(self) -> torch.Tensor:
        """
        Return the per-axis standard deviations of all Gaussians, shape (N, 3).
        """
        return torch.exp(self.log_scales)

    def parameters(self) -> Dict[str, torch.Tensor]:
        """
        Return the learnable tensors of the cloud, keyed by name in flattening order.
        """
        return {name: getattr(self, name) for name in PARAMETER_NAMES}

    def requires_grad_(self, requires_grad: bool = True) -> "GaussianCloud":
        """
        Turn all parameter tensors into autograd leaves that track gradients.

        :param requires_grad: True to track gradients, False to stop tracking
        :return: The cloud itself
        """
        for name in PARAMETER_NAMES:
            value = getattr(self, name).detach().contiguous()
            setattr(self, name, value.requires_grad_(requires_grad))
        return self

    def detached(self) -> "GaussianCloud":
        """
        Return a copy of the cloud with all tensors detached from the autograd graph.
        """
        return GaussianCloud(
            **{name: getattr(self, name).detach().clone() for name in PARAMETER_NAMES}
        )

    def masked(self, keep: torch.Tensor) -> "GaussianCloud":
        """
        Return a cloud holding only the Gaussians for which `keep` is True.

        :param keep: Boolean tensor of shape (N,)
        :return: New GaussianCloud, order preserved
        """
        return GaussianCloud(
            **{name: getattr(self, name)[keep] for name in PARAMETER_NAMES}
        )

    def concatenated(self, other: "GaussianCloud") -> "GaussianCloud":
        """
        Return a cloud holding the Gaussians of this cloud followed by those of
        `other`.
        """
        return GaussianCloud(
            **{
                name: torch.cat([getattr(self, name), getattr(other, name)], dim=0)
                for name in PARAMETER_NAMES
            }
        )

    def to_rows(self) -> List[List[float]]:
        """
        Return the Gaussians as rows of 14 floats:
        mean(3) log_scale(3) rotation(4) opacity_logit color(3).
        """
        rows = torch.cat(
            [
                self.means.detach(),
                self.log_scales.detach(),
                self.rotations.detach(),
                self.opacity_logits.detach()[:, None],
                self.colors.detach(),
            ],
            dim=1,
        )
        return rows.tolist()

    @classmethod
    def from_rows(cls, rows: torch.Tensor) -> "GaussianCloud":
        """
        Create a cloud from a (N, 14) tensor of rows, as produced by `to_rows`.
        """
        rows = to_tensor(rows).reshape(-1, 14)
        return cls(
            means=rows[:, 0:3].clone(),
            log_scales=rows[:, 3:6].clone(),
            rotations=rows[:, 6:10].clone(),
            opacity_logits=rows[:, 10].clone(),
            colors=rows[:, 11:14].clone(),
        )


@attr.define(slots=False)
class CloudInitSpec:
    """
    Description of an initial Gaussian cloud.

    Either `points` is given, in which case one Gaussian is placed at every point, or
    `count` Gaussians are drawn uniformly inside the box [`lower`, `upper`].

    :var count: Number of Gaussians to draw when no points are given
    :var lower: Lower corner of the sampling box, shape (3,)
    :var upper: Upper corner of the sampling box, shape (3,)
    :var points: Optional explicit positions, shape (M, 3)
    :var colors: Optional colors for the explicit positions, shape (M, 3)
    :var opacity: Initial opacity of every Gaussian
    :var scale: Initial standard deviation. If omitted, the root mean squared
        distance to the three nearest neighbours is used
    """

    count: int = 100
    lower: Optional[torch.Tensor] = attr.field(
        default=None, converter=to_optional_tensor
    )
    upper: Optional[torch.Tensor] = attr.field(
        default=None, converter=to_optional_tensor
    )
    points: Optional[torch.Tensor] = attr.field(
        default=None, converter=to_optional_tensor
    )
    colors: Optional[torch.Tensor] = attr.field(
        default=None, converter=to_optional_tensor
    )
    opacity: float = 0.1
    scale: Optional[float] = None

    def __attrs_post_init__(self) -> None:
        """
        Validate the initialization description.
        """
        if not 0.0 < self.opacity < 1.0:
            raise ValueError(f"Initial opacity must be in (0, 1), got {self.opacity}")
        if self.points is not None:
            self.points = self.points.reshape(-1, 3)
            if self.colors is not None and self.colors.shape != self.points.shape:
                raise ValueError("Colors must have the same shape as the points.")
            return
        if self.lower is None or self.upper is None:
            raise ValueError("Either points or sampling bounds must be provided.")
        if self.count < 1 or bool(torch.any(self.upper <= self.lower)):
            raise ValueError(
                f"Empty sampling bounds: count={self.count}, lower="
                f"{self.lower.tolist()}, upper={self.upper.tolist()}"
            )
