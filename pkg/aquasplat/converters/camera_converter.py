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

from typing import List, Optional, Sequence, Tuple

import torch

from aquasplat.data_models import DTYPE, CameraView
from aquasplat.exceptions import SceneFormatError

from .scene_converter import format_floats, parse_floats

VIEW_COMMENT = "# view "
# A comment of this form directly before a block names the camera


def _split_blocks(
    text: str,
) -> List[Tuple[Optional[str], List[Tuple[int, str]]]]:
    """
    Split camera text into blocks of (line number, line) pairs, with the name from a
    preceding view comment if there is one.
    """
    blocks: List[Tuple[Optional[str], List[Tuple[int, str]]]] = []
    current: List[Tuple[int, str]] = []
    name: Optional[str] = None
    for number, raw_line in enumerate(text.splitlines(), start=1):
        if raw_line.startswith(VIEW_COMMENT) and not current:
            name = raw_line[len(VIEW_COMMENT) :].strip() or None
            continue
        line = raw_line.split("#", 1)[0].strip()
        if line:
            current.append((number, line))
        elif not raw_line.strip() and current:
            blocks.append((name, current))
            current, name = [], None
    if current:
        blocks.append((name, current))
    return blocks


class CameraConverter:
    """
    Class that handles conversion of cameras to and from the camera text format.

    Cameras are written as blocks separated by blank lines. Each block holds four
    lines: the intrinsic matrix K (9 floats, row-major), the world-to-camera rotation
    R (9 floats), the translation t (3 floats) and 'width height'. '#' starts a
    comment; a comment '# view <name>' directly before a block names the camera.
    """

    @staticmethod
    def to_text(cameras: Sequence[CameraView]) -> str:
        """
        Serialize cameras to camera text.

        :param cameras: Cameras to serialize
        :return: String holding the camera file contents
        """
        blocks = []
        for camera in cameras:
            lines = []
            if camera.name is not None:
                lines.append(f"{VIEW_COMMENT}{camera.name}")
            lines.extend(
                [
                    format_floats(camera.intrinsics.reshape(-1).tolist()),
                    format_floats(camera.rotation.reshape(-1).tolist()),
                    format_floats(camera.translation.tolist()),
                    f"{camera.width} {camera.height}",
                ]
            )
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"

    @staticmethod
    def from_text(text: str, path: str = "<string>") -> List[CameraView]:
        """
        Parse camera text into cameras.

        :param text: Camera file contents
        :param path: Path of the file the text was read from, used in error messages
        :raises SceneFormatError: If a block is malformed or describes an invalid
            camera
        :return: List of CameraView, in file order
        """
        cameras: List[CameraView] = []
        for name, block in _split_blocks(text):
            first_line = block[0][0]
            if len(block) != 4:
                raise SceneFormatError(
                    path, f"camera block has {len(block)} lines, expected 4", first_line
                )
            intrinsics = parse_floats(block[0][1], 9, path, block[0][0])
            rotation = parse_floats(block[1][1], 9, path, block[1][0])
            translation = parse_floats(block[2][1], 3, path, block[2][0])
            size = block[3][1].split()
            if len(size) != 2 or not all(field.isdigit() for field in size):
                raise SceneFormatError(path, "expected 'width height'", block[3][0])
            try:
                cameras.append(
                    CameraView(
                        intrinsics=torch.from_numpy(intrinsics.reshape(3, 3)).to(DTYPE),
                        rotation=torch.from_numpy(rotation.reshape(3, 3)).to(DTYPE),
                        translation=torch.from_numpy(translation).to(DTYPE),
                        width=int(size[0]),
                        height=int(size[1]),
                        name=name,
                    )
                )
            except ValueError as error:
                raise SceneFormatError(path, str(error), first_line) from error
        return cameras

    @staticmethod
    def save(cameras: Sequence[CameraView], path: str) -> None:
        """
        Write cameras to a camera file.
        """
        with open(path, "w", encoding="utf-8") as camera_file:
            camera_file.write(CameraConverter.to_text(cameras))

    @staticmethod
    def load(path: str) -> List[CameraView]:
        """
        Read cameras from a camera file.
        """
        with open(path, "r", encoding="utf-8") as camera_file:
            return CameraConverter.from_text(camera_file.read(), path=path)
