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
from typing import Any, Dict, List

import attr
import torch

from .enums import LossTerm


@attr.define(slots=False)
class LossReport:
    """
    Values of all terms of the training objective for one step.

    The term tensors are unweighted. Terms that were inactive in the step are exactly
    zero and have their flag in `active` set to False.

    :var photometric: Photometric loss L_photo
    :var trinocular: Trinocular stereo loss L_tri
    :var epipolar: Epipolar depth prior loss L_epi
    :var residual: Depth residual loss L_res
    :var total: Weighted sum of all terms, the tensor to back-propagate
    :var lambda_tri: Effective weight of L_tri
    :var lambda_epi: Effective weight of L_epi at this step
    :var lambda_res: Effective weight of L_res
    :var lambda_ssim: Weight of the SSIM part inside L_photo
    :var active: Activity flag per weighted term
    :var components: Sub-terms (r_l1, r_ssim, obj_stereo, full_stereo, smooth) and
        diagnostic scalars such as warp coverage and candidate counts
    """

    photometric: torch.Tensor
    trinocular: torch.Tensor
    epipolar: torch.Tensor
    residual: torch.Tensor
    total: torch.Tensor
    lambda_tri: float
    lambda_epi: float
    lambda_res: float
    lambda_ssim: float
    active: Dict[LossTerm, bool] = attr.field(factory=dict)
    components: Dict[str, float] = attr.field(factory=dict)

    def term(self, term: LossTerm) -> torch.Tensor:
        """
        Return the tensor for a single loss term.

        :param term: LossTerm to return
        :return: Scalar tensor holding the value of the term
        """
        return {
            LossTerm.PHOTOMETRIC: self.photometric,
            LossTerm.TRINOCULAR: self.trinocular,
            LossTerm.EPIPOLAR: self.epipolar,
            LossTerm.RESIDUAL: self.residual,
            LossTerm.TOTAL: self.total,
        }[term]

    def weight(self, term: LossTerm) -> float:
        """
        Return the weight with which a term enters the total.
        """
        return {
            LossTerm.PHOTOMETRIC: 1.0,
            LossTerm.TRINOCULAR: self.lambda_tri,
            LossTerm.EPIPOLAR: self.lambda_epi,
            LossTerm.RESIDUAL: self.lambda_res,
            LossTerm.TOTAL: 1.0,
        }[term]

    def recomputed_total(self) -> float:
        """
        Return the total recomputed from the individual terms and their weights.
        """
        return sum(
            self.weight(term) * float(self.term(term).detach())
            for term in LossTerm.weighted_terms()
            if self.active.get(term, term == LossTerm.PHOTOMETRIC)
        )

    @property
    def is_finite(self) -> bool:
        """
        Return True if every term and the total are finite.
        """
        return all(math.isfinite(float(self.term(term).detach())) for term in LossTerm)

    def to_dict(self) -> Dict[str, Any]:
        """
        Return the scalar values of the report as a flat, JSON-serializable
        dictionary.
        """
        output: Dict[str, Any] = {
            str(term): float(self.term(term).detach()) for term in LossTerm
        }
        output.update(
            {
                "lambda_tri": self.lambda_tri,
                "lambda_epi": self.lambda_epi,
                "lambda_res": self.lambda_res,
                "lambda_ssim": self.lambda_ssim,
            }
        )
        output.update({f"{term}_active": flag for term, flag in self.active.items()})
        output.update(self.components)
        return output


@attr.define(slots=False)
class TrinocularLosses:
    """
    The terms of the trinocular view consistency loss for one step.

    :var obj_stereo: Consistency of the warped object renders with the central one
    :var full_stereo: Consistency of the warped composites with the ground truth
    :var smooth: Edge-aware smoothness of both disparity maps
    :var total: Sum of the three terms
    :var skipped_axes: Warp axes whose stereo terms were skipped for low coverage
    """

    obj_stereo: torch.Tensor
    full_stereo: torch.Tensor
    smooth: torch.Tensor
    total: torch.Tensor
    skipped_axes: List[str] = attr.field(factory=list)

    def to_dict(self) -> Dict[str, float]:
        """
        Return the scalar values of the terms, keyed by name.
        """
        return {
            "obj_stereo": float(self.obj_stereo.detach()),
            "full_stereo": float(self.full_stereo.detach()),
            "smooth": float(self.smooth.detach()),
        }
