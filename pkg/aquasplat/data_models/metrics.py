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
from typing import Any, Dict, List, Union

import attr

from .enums import MetricTask
from .utils import str_to_enum_converter

INFINITE_PSNR = "inf"
# Serialized form of the PSNR of two identical images


def _serialize_psnr(value: float) -> Union[float, str]:
    """
    Return a JSON-compatible representation of a PSNR value.
    """
    return INFINITE_PSNR if math.isinf(value) else value


@attr.define(slots=False)
class ViewMetric:
    """
    Image quality of a single view.

    :var name: Name of the view
    :var psnr: Peak signal-to-noise ratio in dB, +inf for identical images
    :var ssim: Structural similarity in [-1, 1]
    """

    name: str
    psnr: float
    ssim: float

    def to_dict(self) -> Dict[str, Any]:
        """
        Return the view metrics as a JSON-serializable dictionary.
        """
        return {
            "view": self.name,
            "psnr": _serialize_psnr(self.psnr),
            "ssim": self.ssim,
        }


@attr.define(slots=False)
class MetricReport:
    """
    Image quality over a set of views.

    :var task: Evaluation task that was measured
    :var views: Metrics per view
    """

    task: MetricTask = attr.field(converter=str_to_enum_converter(MetricTask))
    views: List[ViewMetric] = attr.field(factory=list)

    @property
    def mean_psnr(self) -> float:
        """
        Return the mean PSNR over all views, NaN when there are no views.
        """
        if not self.views:
            return math.nan
        return sum(view.psnr for view in self.views) / len(self.views)

    @property
    def mean_ssim(self) -> float:
        """
        Return the mean SSIM over all views, NaN when there are no views.
        """
        if not self.views:
            return math.nan
        return sum(view.ssim for view in self.views) / len(self.views)

    def summary(self) -> Dict[str, Any]:
        """
        Return the aggregate metrics as a JSON-serializable dictionary.
        """
        return {
            "task": str(self.task),
            "num_views": len(self.views),
            "psnr": _serialize_psnr(self.mean_psnr),
            "ssim": self.mean_ssim,
        }

    def to_records(self) -> List[Dict[str, Any]]:
        """
        Return one record per view followed by the aggregate record.
        """
        records = [dict(view.to_dict(), task=str(self.task)) for view in self.views]
        records.append(self.summary())
        return records
