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

from typing import Any, Dict, Type, TypeVar, cast

from omegaconf import OmegaConf
from omegaconf.errors import (
    ConfigKeyError,
    ConfigTypeError,
    MissingMandatoryValue,
    ValidationError,
)

from aquasplat.exceptions import ConfigurationError

OutputTypeVar = TypeVar("OutputTypeVar")


def deserialize_dictionary(
    input_dictionary: Dict[str, Any], output_type: Type[OutputTypeVar]
) -> OutputTypeVar:
    """
    Deserialize an `input_dictionary` to an object of the type passed in
    `output_type`.

    Keys that are not fields of `output_type` are rejected. String values are
    converted to the type of the field they are assigned to.

    :param input_dictionary: Dictionary to deserialize
    :param output_type: attrs class that the dictionary represents
    :raises ConfigurationError: If the dictionary does not match the schema of
        `output_type`, or the resulting object is invalid
    :return: Object of type `output_type`, holding the data passed in
        `input_dictionary`
    """
    schema = OmegaConf.structured(output_type)
    try:
        values = OmegaConf.merge(schema, OmegaConf.create(input_dictionary))
        return cast(output_type, OmegaConf.to_object(values))
    except (
        ConfigKeyError,
        MissingMandatoryValue,
        ConfigTypeError,
        ValidationError,
        ValueError,
    ) as error:
        raise ConfigurationError(
            input_dictionary=input_dictionary,
            output_type=output_type,
            message=str(error.args[0]) if error.args else str(error),
            error_type=type(error),
        ) from error
