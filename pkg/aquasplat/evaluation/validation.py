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

from typing import Any, Dict, Optional, Sequence

import torch

from aquasplat.data_models import (
    AlphaAdjustState,
    DatasetView,
    GaussianCloud,
    MetricTask,
)
from aquasplat.networks import MediumField
from aquasplat.rendering import render

from .metrics import depth_mae, evaluate


def validate(
    cloud: GaussianCloud,
    field: Optional[MediumField],
    views: Sequence[DatasetView],
) -> Dict[str, Any]:
    """
    Measure the quality of a reconstruction on a set of views.

    Every view is rendered at full resolution without opacity adjustment. The
    composite is compared with the observed image, the restored render with the
    clean image and the rendered depth with the true depth, when those are
    available.

    :param cloud: Reconstructed Gaussian cloud
    :param field: Reconstructed medium, or None
    :param views: Views to evaluate, usually the held-out views
    :return: Dictionary holding the novel-view metrics, the restoration metrics and
        the depth mean absolute error
    """
    composites: Dict[str, torch.Tensor] = {}
    restored: Dict[str, torch.Tensor] = {}
    depth_errors = []
    with torch.no_grad():
        for view in views:
            bundle = render(
                cloud, view.camera, medium=field, alpha_state=AlphaAdjustState.raw()
            )
            composites[view.name] = bundle.composite
            if view.clean_image is not None:
                restored[view.name] = render(
                    cloud, view.camera, medium=field, restore=True
                ).composite
            if view.depth is not None:
                depth_errors.append(depth_mae(bundle.depth, view.depth))

    observed = {view.name: view.image for view in views}
    clean = {
        view.name: view.clean_image for view in views if view.clean_image is not None
    }
    result: Dict[str, Any] = {
        "num_views": len(views),
        str(MetricTask.NOVEL_VIEW): evaluate(
            composites, observed, task=MetricTask.NOVEL_VIEW
        ).to_records(),
    }
    if restored:
        result[str(MetricTask.RESTORATION)] = evaluate(
            restored, clean, task=MetricTask.RESTORATION
        ).to_records()
        result["degraded_vs_clean"] = evaluate(
            {name: observed[name] for name in clean},
            clean,
            task=MetricTask.RESTORATION,
        ).summary()
    if depth_errors:
        result["depth_mae"] = sum(depth_errors) / len(depth_errors)
    return result
