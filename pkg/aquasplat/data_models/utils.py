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

from enum import Enum
from typing import Any, Callable, Optional, Sequence, Type, TypeVar, Union

import numpy as np
import torch

EnumType = TypeVar("EnumType", bound=Enum)

DTYPE = torch.float64
# All geometric and photometric quantities are carried in double precision


def to_tensor(value: Any) -> torch.Tensor:
    """
    Convert an array-like input to a float64 torch tensor.

    Tensors that are already float64 are returned as they are, so that the autograd
    graph attached to them is preserved.

    :param value: Tensor, numpy array, sequence or scalar to convert
    :return: torch.Tensor with dtype float64
    """
    if isinstance(value, torch.Tensor):
        if value.dtype == DTYPE:
            return value
        return value.to(DTYPE)
    return torch.as_tensor(np.asarray(value, dtype=np.float64), dtype=DTYPE)


def to_optional_tensor(value: Any) -> Optional[torch.Tensor]:
    """
    Convert an array-like input to a float64 torch tensor, passing None through.

    :param value: Value to convert, or None
    :return: torch.Tensor with dtype float64, or None
    """
    if value is None:
        return None
    return to_tensor(value)


def to_rgb_tensor(value: Union[float, Sequence[float], torch.Tensor]) -> torch.Tensor:
    """
    Convert a scalar or a per-channel sequence to a tensor of three channel values.

    :param value: Scalar (applied to all channels) or three channel values
    :return: torch.Tensor of shape (3,)
    """
    tensor = to_tensor(value)
    if tensor.ndim == 0:
        tensor = tensor.repeat(3)
    if tensor.shape != (3,):
        raise ValueError(
            f"Expected a scalar or three channel values, got shape "
            f"{tuple(tensor.shape)}"
        )
    return tensor


def str_to_enum_converter(
    enum: Type[EnumType],
) -> Callable[[Union[str, EnumType]], EnumType]:
    """
    Construct a converter function to convert an input value into an instance of the
    Enum subclass passed in `enum`.

    Strings are matched against the enum values first and the member names second.

    :param enum: type of the Enum to which the converter should convert
    :return: Converter function that takes an input value and attempts to convert it
        into an instance of `enum`
    """

    def _converter(input_value: Union[str, EnumType]) -> EnumType:
        """
        Convert an input value to an instance of an Enum.

        :param input_value: Value to convert
        :return: Instance of the Enum
        """
        if isinstance(input_value, enum):
            return input_value
        if isinstance(input_value, str):
            try:
                return enum(input_value)
            except ValueError:
                if input_value in enum.__members__:
                    return enum[input_value]
        raise ValueError(
            f"Invalid argument! Cannot convert value {input_value} to Enum "
            f"{enum.__name__}"
        )

    return _converter
