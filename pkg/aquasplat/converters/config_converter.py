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

import io
from typing import Any, Dict, Type, TypeVar

import attr
from dotenv import dotenv_values

from aquasplat.utils import deserialize_dictionary

ConfigTypeVar = TypeVar("ConfigTypeVar")


def _format_value(value: Any) -> str:
    """
    Format a configuration value so that it parses back to the same value.
    """
    value = getattr(value, "name", value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


class ConfigConverter:
    """
    Class that handles conversion of configuration objects (TrainConfig,
    FixtureSpec) to and from flat 'key=value' text.

    Lines starting with '#' are comments. Enum values are written by member name.
    Keys that are not fields of the configuration type are rejected.
    """

    @staticmethod
    def to_dict(config: Any) -> Dict[str, str]:
        """
        Return the fields of a configuration object as strings, keyed by name.
        """
        return {
            field.name: _format_value(getattr(config, field.name))
            for field in attr.fields(type(config))
        }

    @staticmethod
    def to_text(config: Any) -> str:
        """
        Serialize a configuration object to 'key=value' text.

        :param config: attrs configuration object, for example a TrainConfig
        :return: String holding one 'key=value' line per field
        """
        values = ConfigConverter.to_dict(config)
        return "".join(f"{key}={value}\n" for key, value in values.items())

    @staticmethod
    def from_text(text: str, output_type: Type[ConfigTypeVar]) -> ConfigTypeVar:
        """
        Parse 'key=value' text into a configuration object.

        Fields that are not mentioned keep their default value.

        :param text: Configuration text
        :param output_type: Configuration class to create, for example TrainConfig
        :raises ConfigurationError: If a key is unknown, a value has the wrong type
            or the resulting configuration is invalid
        :return: Configuration object of type `output_type`
        """
        values = dict(dotenv_values(stream=io.StringIO(text)))
        return deserialize_dictionary(values, output_type)

    @staticmethod
    def save(config: Any, path: str) -> None:
        """
        Write a configuration object to a 'key=value' file.
        """
        with open(path, "w", encoding="utf-8") as config_file:
            config_file.write(ConfigConverter.to_text(config))

    @staticmethod
    def load(path: str, output_type: Type[ConfigTypeVar]) -> ConfigTypeVar:
        """
        Read a configuration object from a 'key=value' file.
        """
        values = dict(dotenv_values(dotenv_path=path))
        return deserialize_dictionary(values, output_type)
