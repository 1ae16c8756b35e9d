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

from typing import List

import numpy as np
import torch

from aquasplat.data_models import DTYPE, GaussianCloud
from aquasplat.exceptions import SceneFormatError

SCENE_MAGIC = "# aquasplat-scene"
SCENE_VERSION = 1
ROW_WIDTH = 14


def format_floats(values) -> str:
    """
    Format floats with 17 significant digits, so that float64 values survive a round
    trip through text exactly.
    """
    return " ".join(f"{float(value):.17g}" for value in values)


def parse_floats(line: str, expected: int, path: str, line_number: int) -> np.ndarray:
    """
    Parse a line of whitespace separated floats.

    :raises SceneFormatError: If the line does not hold exactly `expected` floats
    """
    try:
        values = np.array(line.split(), dtype=np.float64)
    except ValueError as error:
        raise SceneFormatError(path, str(error), line_number) from error
    if values.shape[0] != expected:
        raise SceneFormatError(
            path, f"expected {expected} values, found {values.shape[0]}", line_number
        )
    return values


class SceneConverter:
    """
    Class that handles conversion of Gaussian clouds to and from the scene text
    format.

    A scene file starts with the lines '# aquasplat-scene', 'version 1' and
    'count N', followed by one row of 14 floats per Gaussian: mean (3), log scale (3),
    rotation quaternion (w, x, y, z), opacity logit and color (3).
    """

    @staticmethod
    def to_text(cloud: GaussianCloud) -> str:
        """
        Serialize a cloud to scene text.

        :param cloud: GaussianCloud to serialize
        :return: String holding the scene file contents
        """
        lines = [SCENE_MAGIC, f"version {SCENE_VERSION}", f"count {len(cloud)}"]
        lines.extend(format_floats(row) for row in cloud.to_rows())
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str, path: str = "<string>") -> GaussianCloud:
        """
        Parse scene text into a cloud.

        :param text: Scene file contents
        :param path: Path of the file the text was read from, used in error messages
        :raises SceneFormatError: If the text is not a valid scene
        :return: GaussianCloud holding the Gaussians of the scene
        """
        lines = text.splitlines()
        if len(lines) < 3 or lines[0].strip() != SCENE_MAGIC:
            raise SceneFormatError(path, f"missing '{SCENE_MAGIC}' header", 1)
        if lines[1].split() != ["version", str(SCENE_VERSION)]:
            raise SceneFormatError(path, f"unsupported version '{lines[1]}'", 2)
        count_fields = lines[2].split()
        if len(count_fields) != 2 or count_fields[0] != "count":
            raise SceneFormatError(path, "expected 'count N'", 3)
        try:
            count = int(count_fields[1])
        except ValueError as error:
            raise SceneFormatError(path, str(error), 3) from error
        rows: List[np.ndarray] = []
        for offset, line in enumerate(lines[3:]):
            if not line.strip():
                continue
            rows.append(parse_floats(line, ROW_WIDTH, path, offset + 4))
        if len(rows) != count:
            raise SceneFormatError(
                path, f"header announces {count} Gaussians, found {len(rows)}"
            )
        if count == 0:
            return GaussianCloud.empty()
        values = np.stack(rows)
        if not np.all(np.isfinite(values)):
            raise SceneFormatError(path, "scene holds non-finite values")
        return GaussianCloud.from_rows(torch.from_numpy(values).to(DTYPE))

    @staticmethod
    def save(cloud: GaussianCloud, path: str) -> None:
        """
        Write a cloud to a scene file.
        """
        with open(path, "w", encoding="utf-8") as scene_file:
            scene_file.write(SceneConverter.to_text(cloud))

    @staticmethod
    def load(path: str) -> GaussianCloud:
        """
        Read a cloud from a scene file.
        """
        with open(path, "r", encoding="utf-8") as scene_file:
            return SceneConverter.from_text(scene_file.read(), path=path)
