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

from typing import Dict, Union

import attr
import torch

from .enums import MediumPresetName
from .utils import DTYPE, str_to_enum_converter, to_rgb_tensor


@attr.define(slots=False)
class MediumParameters:
    """
    Constant per-channel medium coefficients, each of shape (3,).

    :var sigma_attn: Attenuation coefficient of the object radiance, >= 0
    :var sigma_bs: Backscatter coefficient, >= 0
    :var c_med: Color of the medium at infinite depth, in [0, 1]
    """

    sigma_attn: torch.Tensor = attr.field(converter=to_rgb_tensor)
    sigma_bs: torch.Tensor = attr.field(converter=to_rgb_tensor)
    c_med: torch.Tensor = attr.field(converter=to_rgb_tensor)

    @classmethod
    def clear(cls) -> "MediumParameters":
        """
        Return a medium that neither attenuates nor scatters.
        """
        return cls(sigma_attn=0.0, sigma_bs=0.0, c_med=0.0)


@attr.define(slots=False)
class MediumPreset:
    """
    Coefficients of the physical image formation model used for degradation.

    :var name: Name of the preset
    :var beta_d: Direct-signal attenuation coefficient per channel
    :var beta_b: Backscatter coefficient per channel
    :var beta_inf: Veiling light (medium color at infinity) per channel
    """

    name: str
    beta_d: torch.Tensor = attr.field(converter=to_rgb_tensor)
    beta_b: torch.Tensor = attr.field(converter=to_rgb_tensor)
    beta_inf: torch.Tensor = attr.field(converter=to_rgb_tensor)

    @classmethod
    def from_name(cls, name: Union[str, MediumPresetName]) -> "MediumPreset":
        """
        Return one of the built-in presets.

        :param name: MediumPresetName or its string value
        :return: MediumPreset holding the coefficients of the preset
        """
        preset_name = str_to_enum_converter(MediumPresetName)(name)
        return cls(name=str(preset_name), **_PRESET_COEFFICIENTS[preset_name])

    def as_medium(self) -> MediumParameters:
        """
        Return the preset as constant medium parameters for the renderer.
        """
        return MediumParameters(
            sigma_attn=self.beta_d, sigma_bs=self.beta_b, c_med=self.beta_inf
        )

    def to_dict(self) -> Dict[str, object]:
        """
        Return a JSON-serializable dictionary describing the preset.
        """
        return {
            "name": self.name,
            "beta_d": self.beta_d.tolist(),
            "beta_b": self.beta_b.tolist(),
            "beta_inf": self.beta_inf.tolist(),
        }


_PRESET_COEFFICIENTS: Dict[MediumPresetName, Dict[str, torch.Tensor]] = {
    MediumPresetName.UNDERWATER: {
        "beta_d": torch.tensor([1.3, 1.2, 0.9], dtype=DTYPE),
        "beta_b": torch.tensor([0.95, 0.85, 0.7], dtype=DTYPE),
        "beta_inf": torch.tensor([0.07, 0.2, 0.39], dtype=DTYPE),
    },
    MediumPresetName.FOG: {
        "beta_d": torch.tensor([0.5, 0.5, 0.5], dtype=DTYPE),
        "beta_b": torch.tensor([1.2, 1.2, 1.2], dtype=DTYPE),
        "beta_inf": torch.tensor([1.2, 1.2, 1.2], dtype=DTYPE),
    },
}


@attr.define(slots=False, frozen=True)
class AlphaAdjustState:
    """
    Weight of the depth-aware opacity adjustment for one render call.

    :var weight: Blend weight w in [0, 1]. With w = 0 the adjustment network is not
        evaluated at all
    """

    weight: float = attr.field(default=0.0, converter=float)

    def __attrs_post_init__(self) -> None:
        """
        Validate the blend weight.
        """
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(
                f"Opacity adjustment weight must be in [0, 1], got {self.weight}"
            )

    @property
    def active(self) -> bool:
        """
        Return True if the adjustment changes any opacity.
        """
        return self.weight > 0.0

    @classmethod
    def raw(cls) -> "AlphaAdjustState":
        """
        Return the state that leaves all opacities unchanged.
        """
        return cls(weight=0.0)
