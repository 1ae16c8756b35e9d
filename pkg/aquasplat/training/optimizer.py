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
from typing import Dict, List, Optional

import torch

from aquasplat.data_models import (
    PARAMETER_NAMES,
    DensificationResult,
    GaussianCloud,
    TrainConfig,
)
from aquasplat.networks import MediumField
from aquasplat.scene import normalize_quaternions

NETWORK_GROUP = "networks"
ADAM_EPSILON = 1e-15


def exponential_learning_rate(
    step: int, initial: float, final: float, total_steps: int
) -> float:
    """
    Interpolate a learning rate log-linearly from `initial` at step 0 to `final` at
    `total_steps`.
    """
    if initial <= 0 or final <= 0:
        return 0.0
    fraction = min(max(step / max(total_steps, 1), 0.0), 1.0)
    return math.exp((1.0 - fraction) * math.log(initial) + fraction * math.log(final))


class GaussianOptimizer:
    """
    Adam optimizer over the tensors of a Gaussian cloud and the medium networks.

    Every cloud tensor forms its own parameter group, named after the tensor, and
    all network weights form the group 'networks'. The learning rate of the means
    is scaled by the scene extent and decays exponentially over the run.
    Densification replaces the cloud tensors; the Adam moments of surviving
    Gaussians are carried over and those of new Gaussians start at zero.

    :param cloud: GaussianCloud to optimize. Its tensors are turned into autograd
        leaves
    :param field: Optional MediumField whose parameters are optimized too
    :param config: TrainConfig holding the learning rates
    :param scene_extent: Radius of the scene, scaling the learning rate of the means
    """

    def __init__(
        self,
        cloud: GaussianCloud,
        field: Optional[MediumField],
        config: TrainConfig,
        scene_extent: float,
    ) -> None:
        self.config = config
        self.scene_extent = scene_extent
        self.cloud = cloud.requires_grad_(True)
        learning_rates = {
            "means": config.lr_means * scene_extent,
            "log_scales": config.lr_log_scales,
            "rotations": config.lr_rotations,
            "opacity_logits": config.lr_opacity,
            "colors": config.lr_colors,
        }
        groups: List[Dict] = [
            {"params": [getattr(cloud, name)], "lr": learning_rates[name], "name": name}
            for name in PARAMETER_NAMES
        ]
        if field is not None:
            groups.append(
                {
                    "params": list(field.parameters()),
                    "lr": config.lr_networks,
                    "name": NETWORK_GROUP,
                }
            )
        self.optimizer = torch.optim.Adam(groups, lr=0.0, eps=ADAM_EPSILON)

    def _group(self, name: str) -> Dict:
        """
        Return the parameter group called `name`.
        """
        for group in self.optimizer.param_groups:
            if group["name"] == name:
                return group
        raise KeyError(f"No parameter group named '{name}'")

    def learning_rate(self, name: str) -> float:
        """
        Return the current learning rate of a parameter group.
        """
        return self._group(name)["lr"]

    def update_learning_rate(self, step: int) -> float:
        """
        Set the learning rate of the means for a training step.

        :param step: Training step
        :return: The new learning rate of the means
        """
        learning_rate = exponential_learning_rate(
            step,
            self.config.lr_means * self.scene_extent,
            self.config.lr_means_final * self.scene_extent,
            self.config.total_steps,
        )
        self._group("means")["lr"] = learning_rate
        return learning_rate

    def zero_grad(self) -> None:
        """
        Reset the gradients of all optimized tensors.
        """
        self.optimizer.zero_grad(set_to_none=True)

    def step(self) -> None:
        """
        Apply one Adam update, keep the colors inside [0, 1] and the rotations on the
        unit sphere.
        """
        self.optimizer.step()
        with torch.no_grad():
            self.cloud.colors.clamp_(0.0, 1.0)
            self.cloud.rotations.copy_(normalize_quaternions(self.cloud.rotations))

    def replace_cloud(self, result: DensificationResult) -> GaussianCloud:
        """
        Swap the optimized cloud for the outcome of a densification pass.

        :param result: DensificationResult mapping new rows to old ones
        :return: The new cloud, whose tensors are the optimized leaves
        """
        new_cloud = result.cloud.detached().requires_grad_(True)
        for name in PARAMETER_NAMES:
            group = self._group(name)
            old_tensor = group["params"][0]
            new_tensor = getattr(new_cloud, name)
            stored_state = self.optimizer.state.pop(old_tensor, None)
            if stored_state:
                for key in ("exp_avg", "exp_avg_sq"):
                    moments = stored_state[key][result.sources]
                    fresh = result.fresh.reshape((-1,) + (1,) * (moments.ndim - 1))
                    stored_state[key] = torch.where(
                        fresh, torch.zeros_like(moments), moments
                    )
                self.optimizer.state[new_tensor] = stored_state
            group["params"][0] = new_tensor
        self.cloud = new_cloud
        return new_cloud
