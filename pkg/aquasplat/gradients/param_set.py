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
from typing import Dict, List, Mapping, Optional, Tuple

import attr
import torch
from torch import nn

from aquasplat.data_models import GaussianCloud
from aquasplat.exceptions import NonFiniteGradientError


@attr.define(slots=False)
class ParamSet:
    """
    Ordered, named view on all learnable tensors of a scene.

    The flattening order is: the cloud tensors in the order means, log_scales,
    rotations, opacity_logits, colors, followed by the parameters of every network
    module in `torch.nn.Module.named_parameters` order, prefixed with the module
    name. Each tensor is flattened in row-major order.

    :var names: Name of every parameter group
    :var tensors: Leaf tensor of every parameter group
    """

    names: List[str] = attr.field(factory=list)
    tensors: List[torch.Tensor] = attr.field(factory=list)

    @classmethod
    def from_model(
        cls, cloud: GaussianCloud, networks: Optional[Mapping[str, nn.Module]] = None
    ) -> "ParamSet":
        """
        Collect the learnable tensors of a cloud and, optionally, of networks.

        :param cloud: GaussianCloud whose tensors are autograd leaves
        :param networks: Optional mapping of prefix to network module, for example
            {"phi_med": field.phi_med, "phi_alpha": field.phi_alpha}
        :return: ParamSet over all collected tensors
        """
        names: List[str] = []
        tensors: List[torch.Tensor] = []
        for name, tensor in cloud.parameters().items():
            names.append(name)
            tensors.append(tensor)
        for prefix, module in (networks or {}).items():
            for name, tensor in module.named_parameters():
                names.append(f"{prefix}.{name}")
                tensors.append(tensor)
        return cls(names=names, tensors=tensors)

    def __len__(self) -> int:
        """
        Return the total number of scalar parameters.
        """
        return sum(tensor.numel() for tensor in self.tensors)

    def sizes(self) -> Dict[str, int]:
        """
        Return the number of scalar parameters per group.
        """
        return {name: t.numel() for name, t in zip(self.names, self.tensors)}

    def locate(self, flat_index: int) -> Tuple[int, int]:
        """
        Map an index into the flattened vector to (group position, index in group).

        :param flat_index: Index into the flattened parameter vector
        :return: Tuple of the group position in `names` and the index inside the
            flattened group tensor
        """
        if not 0 <= flat_index < len(self):
            raise IndexError(
                f"Parameter index {flat_index} is out of range for {len(self)} "
                f"parameters."
            )
        offset = 0
        for position, tensor in enumerate(self.tensors):
            if flat_index < offset + tensor.numel():
                return position, flat_index - offset
            offset += tensor.numel()
        raise IndexError(flat_index)

    def flatten(self) -> torch.Tensor:
        """
        Return a detached copy of all parameters as one vector.
        """
        return torch.cat([t.detach().reshape(-1) for t in self.tensors])

    def zero_grad(self) -> None:
        """
        Clear the accumulated gradients of all parameter tensors.
        """
        for tensor in self.tensors:
            tensor.grad = None


@attr.define(slots=False)
class GradSet:
    """
    Gradients of a scalar with respect to a ParamSet, in the same layout.

    :var names: Name of every parameter group
    :var gradients: Gradient of every parameter group, zero for unused groups
    """

    names: List[str]
    gradients: List[torch.Tensor]

    @classmethod
    def from_tensors(
        cls, params: ParamSet, gradients: List[Optional[torch.Tensor]]
    ) -> "GradSet":
        """
        Create a GradSet, replacing missing gradients by zeros.
        """
        return cls(
            names=list(params.names),
            gradients=[
                torch.zeros_like(tensor) if grad is None else grad.detach().clone()
                for tensor, grad in zip(params.tensors, gradients)
            ],
        )

    def __getitem__(self, name: str) -> torch.Tensor:
        """
        Return the gradient of the parameter group called `name`.
        """
        return self.gradients[self.names.index(name)]

    def flatten(self) -> torch.Tensor:
        """
        Return all gradients as one vector, in ParamSet flattening order.
        """
        return torch.cat([grad.reshape(-1) for grad in self.gradients])

    def non_finite_groups(self) -> List[str]:
        """
        Return the names of the groups holding NaN or infinite gradients.
        """
        return [
            name
            for name, grad in zip(self.names, self.gradients)
            if not bool(torch.all(torch.isfinite(grad)))
        ]

    @property
    def is_finite(self) -> bool:
        """
        Return True if every gradient entry is finite.
        """
        return len(self.non_finite_groups()) == 0


def gradients_of(
    value: torch.Tensor, params: ParamSet, retain_graph: bool = False
) -> GradSet:
    """
    Differentiate a scalar with respect to every tensor of a ParamSet, without
    touching the `.grad` attributes.

    :param value: Scalar tensor
    :param params: ParamSet to differentiate with respect to
    :param retain_graph: True to keep the graph for further differentiation
    :return: GradSet holding the gradients
    """
    if not value.requires_grad:
        return GradSet.from_tensors(params, [None] * len(params.tensors))
    gradients = torch.autograd.grad(
        value, params.tensors, retain_graph=retain_graph, allow_unused=True
    )
    return GradSet.from_tensors(params, list(gradients))


def backward(
    loss: torch.Tensor,
    params: ParamSet,
    terms: Optional[Mapping[str, torch.Tensor]] = None,
) -> GradSet:
    """
    Back-propagate a scalar loss into the `.grad` attributes of a ParamSet.

    Non-leaf tensors that called `retain_grad` during the forward pass receive
    their gradients too. When the result is not finite, each of the `terms` is
    differentiated separately to find the one responsible.

    :param loss: Scalar loss of the step
    :param params: ParamSet to differentiate with respect to
    :param terms: Optional named loss terms that were summed into `loss`
    :raises NonFiniteGradientError: If any gradient entry is NaN or infinite
    :return: GradSet holding the gradients
    """
    params.zero_grad()
    diagnose = terms is not None and len(terms) > 0
    if loss.requires_grad:
        loss.backward(retain_graph=diagnose)
    grads = GradSet.from_tensors(params, [tensor.grad for tensor in params.tensors])
    bad_groups = grads.non_finite_groups()
    if not bad_groups:
        return grads

    offending_term = "total"
    offending_group = bad_groups[0]
    for name, term in (terms or {}).items():
        term_groups = gradients_of(term, params, retain_graph=True).non_finite_groups()
        if term_groups:
            offending_term, offending_group = name, term_groups[0]
            break
    logging.error(
        f"Non-finite gradients in parameter groups {bad_groups}, traced to loss term "
        f"'{offending_term}'."
    )
    raise NonFiniteGradientError(term=offending_term, parameter=offending_group)
