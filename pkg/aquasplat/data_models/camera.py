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

from typing import Optional

import attr
import torch

from .utils import DTYPE, to_tensor

ORTHONORMALITY_TOLERANCE = 1e-6


def _validate_intrinsics(instance, attribute, value: torch.Tensor) -> None:
    """
    Validate that the intrinsic matrix has the pinhole form with positive focal
    lengths.
    """
    if tuple(value.shape) != (3, 3):
        raise ValueError(f"Intrinsics must be a 3x3 matrix, got {tuple(value.shape)}")
    if value[0, 0] <= 0 or value[1, 1] <= 0:
        raise ValueError(
            f"Focal lengths must be positive, got fx={float(value[0, 0])}, "
            f"fy={float(value[1, 1])}"
        )


def _validate_rotation(instance, attribute, value: torch.Tensor) -> None:
    """
    Validate that the rotation matrix is orthonormal.
    """
    if tuple(value.shape) != (3, 3):
        raise ValueError(f"Rotation must be a 3x3 matrix, got {tuple(value.shape)}")
    identity = torch.eye(3, dtype=DTYPE)
    deviation = torch.max(torch.abs(value @ value.T - identity))
    if deviation > ORTHONORMALITY_TOLERANCE:
        raise ValueError(
            f"Rotation matrix is not orthonormal, R @ R.T deviates from identity by "
            f"{float(deviation):.3e}"
        )


def _validate_translation(instance, attribute, value: torch.Tensor) -> None:
    """
    Validate the shape of the translation vector.
    """
    if tuple(value.shape) != (3,):
        raise ValueError(f"Translation must have shape (3,), got {tuple(value.shape)}")


def _validate_positive(instance, attribute, value: int) -> None:
    """
    Validate that an image dimension is a positive integer.
    """
    if value < 1:
        raise ValueError(f"Image {attribute.name} must be positive, got {value}")


@attr.define(slots=False)
class CameraView:
    """
    Pinhole camera with world-to-camera extrinsics.

    A world point X maps to camera coordinates R @ X + t and to pixel coordinates by
    applying K and dividing by depth. Pixel centers sit at integer coordinates, so
    the image spans [0, width - 1] x [0, height - 1].

    :var intrinsics: 3x3 intrinsic matrix K
    :var rotation: 3x3 world-to-camera rotation R
    :var translation: World-to-camera translation t, shape (3,)
    :var width: Image width in pixels
    :var height: Image height in pixels
    :var name: Optional name of the view
    """

    intrinsics: torch.Tensor = attr.field(
        converter=to_tensor, validator=_validate_intrinsics
    )
    rotation: torch.Tensor = attr.field(
        converter=to_tensor, validator=_validate_rotation
    )
    translation: torch.Tensor = attr.field(
        converter=to_tensor, validator=_validate_translation
    )
    width: int = attr.field(converter=int, validator=_validate_positive)
    height: int = attr.field(converter=int, validator=_validate_positive)
    name: Optional[str] = attr.field(default=None, kw_only=True)

    @property
    def fx(self) -> float:
        """
        Return the horizontal focal length in pixels.
        """
        return float(self.intrinsics[0, 0])

    @property
    def fy(self) -> float:
        """
        Return the vertical focal length in pixels.
        """
        return float(self.intrinsics[1, 1])

    @property
    def center(self) -> torch.Tensor:
        """
        Return the camera center in world coordinates, -R^T t.
        """
        return -self.rotation.T @ self.translation

    @property
    def projection_matrix(self) -> torch.Tensor:
        """
        Return the 3x4 projection matrix K [R | t].
        """
        extrinsics = torch.cat([self.rotation, self.translation[:, None]], dim=1)
        return self.intrinsics @ extrinsics

    @property
    def num_pixels(self) -> int:
        """
        Return the number of pixels in the image.
        """
        return self.width * self.height

    def with_translation(self, translation: torch.Tensor) -> "CameraView":
        """
        Return a copy of the camera with a different translation vector.

        :param translation: New world-to-camera translation, shape (3,)
        :return: CameraView sharing intrinsics and rotation with this camera
        """
        return CameraView(
            intrinsics=self.intrinsics,
            rotation=self.rotation,
            translation=translation,
            width=self.width,
            height=self.height,
            name=self.name,
        )

    def downscaled(self, divisor: int) -> "CameraView":
        """
        Return the camera for an image that is `divisor` times smaller along both
        axes.

        Pixel centers are remapped so that the downscaled pixel (0, 0) covers the
        first `divisor` x `divisor` block of the original image.

        :param divisor: Integer downscaling factor, at least 1
        :return: CameraView with scaled intrinsics and image size
        """
        if divisor < 1:
            raise ValueError(f"Downscaling divisor must be at least 1, got {divisor}")
        if divisor == 1:
            return self
        intrinsics = self.intrinsics.clone()
        intrinsics[0, 0] = intrinsics[0, 0] / divisor
        intrinsics[1, 1] = intrinsics[1, 1] / divisor
        intrinsics[0, 2] = (intrinsics[0, 2] + 0.5) / divisor - 0.5
        intrinsics[1, 2] = (intrinsics[1, 2] + 0.5) / divisor - 0.5
        return CameraView(
            intrinsics=intrinsics,
            rotation=self.rotation,
            translation=self.translation,
            width=max(self.width // divisor, 1),
            height=max(self.height // divisor, 1),
            name=self.name,
        )

    @classmethod
    def centered(
        cls,
        focal_length: float,
        width: int,
        height: int,
        rotation: Optional[torch.Tensor] = None,
        translation: Optional[torch.Tensor] = None,
        name: Optional[str] = None,
    ) -> "CameraView":
        """
        Create a camera with square pixels and a centered principal point.

        :param focal_length: Focal length in pixels, used for both axes
        :param width: Image width in pixels
        :param height: Image height in pixels
        :param rotation: Optional world-to-camera rotation, identity if omitted
        :param translation: Optional world-to-camera translation, zero if omitted
        :param name: Optional name of the view
        :return: CameraView instance
        """
        intrinsics = torch.tensor(
            [
                [focal_length, 0.0, (width - 1) / 2],
                [0.0, focal_length, (height - 1) / 2],
                [0.0, 0.0, 1.0],
            ],
            dtype=DTYPE,
        )
        return cls(
            intrinsics=intrinsics,
            rotation=torch.eye(3, dtype=DTYPE) if rotation is None else rotation,
            translation=(
                torch.zeros(3, dtype=DTYPE) if translation is None else translation
            ),
            width=width,
            height=height,
            name=name,
        )
