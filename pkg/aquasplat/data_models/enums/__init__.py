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

# noqa: D104

from .alpha_decay import AlphaDecay
from .loss_term import LossTerm
from .medium_preset_name import MediumPresetName
from .metric_task import MetricTask
from .render_component import RenderComponent
from .train_preset import TrainPreset
from .warp_axis import WarpAxis

__all__ = [
    "AlphaDecay",
    "LossTerm",
    "MediumPresetName",
    "MetricTask",
    "RenderComponent",
    "TrainPreset",
    "WarpAxis",
]
