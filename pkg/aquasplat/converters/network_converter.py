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

from typing import Dict, List, Tuple

import numpy as np
import torch

from aquasplat.data_models import DTYPE
from aquasplat.exceptions import SceneFormatError
from aquasplat.networks import MediumField, linear_layers

from .scene_converter import format_floats, parse_floats

NETWORK_MAGIC = "# aquasplat-networks"
NETWORK_VERSION = 1
NETWORK_NAMES = ("phi_med", "phi_alpha")

LayerWeights = Tuple[np.ndarray, np.ndarray]


class _LineReader:
    """
    Cursor over the non-empty lines of a text, tracking 1-based line numbers.
    """

    def __init__(self, text: str, path: str) -> None:
        self.path = path
        self._lines = [
            (number + 1, line.strip())
            for number, line in enumerate(text.splitlines())
            if line.strip()
        ]
        self._cursor = 0

    def next(self) -> Tuple[int, str]:
        """
        Return the next non-empty line and its line number.
        """
        if self._cursor >= len(self._lines):
            raise SceneFormatError(self.path, "unexpected end of file")
        entry = self._lines[self._cursor]
        self._cursor += 1
        return entry

    def keyword(self, name: str, num_values: int) -> Tuple[int, List[str]]:
        """
        Read a line of the form '<name> <value> ...' with `num_values` values.
        """
        line_number, line = self.next()
        fields = line.split()
        if len(fields) != num_values + 1 or fields[0] != name:
            raise SceneFormatError(
                self.path,
                f"expected '{name}' followed by {num_values} value(s), got '{line}'",
                line_number,
            )
        return line_number, fields[1:]


def _to_int(value: str, path: str, line_number: int) -> int:
    """
    Parse an integer field of a network file.
    """
    try:
        return int(value)
    except ValueError as error:
        raise SceneFormatError(path, str(error), line_number) from error


class NetworkConverter:
    """
    Class that handles conversion of the medium and opacity networks to and from
    the network text format.

    A network file starts with '# aquasplat-networks' and 'version 1', followed by
    'scene_extent <value>'. Then, for each network, a 'network <name> <num_layers>'
    line is followed per linear layer by a 'layer <out> <in>' line, <out> rows of
    <in> weights and one row of <out> biases.
    """

    @staticmethod
    def to_text(field: MediumField) -> str:
        """
        Serialize the networks of a MediumField to network text.

        :param field: MediumField to serialize
        :return: String holding the network file contents
        """
        lines = [
            NETWORK_MAGIC,
            f"version {NETWORK_VERSION}",
            f"scene_extent {field.scene_extent:.17g}",
        ]
        for name in NETWORK_NAMES:
            layers = linear_layers(getattr(field, name))
            lines.append(f"network {name} {len(layers)}")
            for layer in layers:
                weight = layer.weight.detach()
                lines.append(f"layer {weight.shape[0]} {weight.shape[1]}")
                lines.extend(format_floats(row) for row in weight.tolist())
                lines.append(format_floats(layer.bias.detach().tolist()))
        return "\n".join(lines) + "\n"

    @staticmethod
    def _read_network(reader: _LineReader, name: str) -> List[LayerWeights]:
        """
        Read the layers of one network.
        """
        line_number, values = reader.keyword("network", 2)
        if values[0] != name:
            raise SceneFormatError(
                reader.path,
                f"expected network '{name}', got '{values[0]}'",
                line_number,
            )
        layers: List[LayerWeights] = []
        for _ in range(_to_int(values[1], reader.path, line_number)):
            line_number, sizes = reader.keyword("layer", 2)
            out_features = _to_int(sizes[0], reader.path, line_number)
            in_features = _to_int(sizes[1], reader.path, line_number)
            rows = []
            for _ in range(out_features):
                row_number, line = reader.next()
                rows.append(parse_floats(line, in_features, reader.path, row_number))
            row_number, line = reader.next()
            bias = parse_floats(line, out_features, reader.path, row_number)
            weight = np.stack(rows) if rows else np.zeros((0, in_features))
            layers.append((weight, bias))
        return layers

    @staticmethod
    def from_text(text: str, path: str = "<string>") -> MediumField:
        """
        Parse network text into a MediumField.

        The architecture (hidden width, number of hidden layers and number of
        encoding frequencies) is derived from the layer sizes.

        :param text: Network file contents
        :param path: Path of the file the text was read from, used in error messages
        :raises SceneFormatError: If the text is not a valid network file
        :return: MediumField holding the stored weights
        """
        reader = _LineReader(text, path)
        line_number, magic = reader.next()
        if magic != NETWORK_MAGIC:
            raise SceneFormatError(path, f"missing '{NETWORK_MAGIC}' header", 1)
        line_number, version = reader.keyword("version", 1)
        if version[0] != str(NETWORK_VERSION):
            raise SceneFormatError(
                path, f"unsupported version '{version[0]}'", line_number
            )
        line_number, extent = reader.keyword("scene_extent", 1)
        try:
            scene_extent = float(extent[0])
        except ValueError as error:
            raise SceneFormatError(path, str(error), line_number) from error
        networks: Dict[str, List[LayerWeights]] = {
            name: NetworkConverter._read_network(reader, name)
            for name in NETWORK_NAMES
        }

        medium_layers = networks["phi_med"]
        hidden_layers = len(medium_layers) - 1
        hidden_width = medium_layers[0][0].shape[0] if hidden_layers > 0 else 32
        frequencies, remainder = divmod(medium_layers[0][0].shape[1] - 3, 6)
        if hidden_layers < 0 or remainder != 0 or frequencies < 0:
            raise SceneFormatError(path, "invalid medium network architecture")
        field = MediumField(
            hidden_width=hidden_width,
            hidden_layers=hidden_layers,
            frequencies=frequencies,
            scene_extent=scene_extent,
        )
        with torch.no_grad():
            for name, layers in networks.items():
                modules = linear_layers(getattr(field, name))
                if len(modules) != len(layers):
                    raise SceneFormatError(
                        path, f"network '{name}' does not match '{NETWORK_NAMES[0]}'"
                    )
                for module, (weight, bias) in zip(modules, layers):
                    if tuple(module.weight.shape) != weight.shape:
                        raise SceneFormatError(
                            path,
                            f"layer of shape {weight.shape} in network '{name}' does "
                            f"not fit the architecture",
                        )
                    module.weight.copy_(torch.from_numpy(weight).to(DTYPE))
                    module.bias.copy_(torch.from_numpy(bias).to(DTYPE))
        return field

    @staticmethod
    def save(field: MediumField, path: str) -> None:
        """
        Write the networks of a MediumField to a network file.
        """
        with open(path, "w", encoding="utf-8") as network_file:
            network_file.write(NetworkConverter.to_text(field))

    @staticmethod
    def load(path: str) -> MediumField:
        """
        Read a MediumField from a network file.
        """
        with open(path, "r", encoding="utf-8") as network_file:
            return NetworkConverter.from_text(network_file.read(), path=path)
