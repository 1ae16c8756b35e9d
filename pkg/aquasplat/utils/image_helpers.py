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

import os

import cv2
import numpy as np
import torch
from PIL import Image as PILImage

from aquasplat.data_models import DTYPE


def to_uint8(image: torch.Tensor) -> np.ndarray:
    """
    Convert a float image with values in [0, 1] to 8-bit, clipping out-of-range
    values.
    """
    array = image.detach().cpu().numpy()
    return np.round(np.clip(array, 0.0, 1.0) * 255.0).astype(np.uint8)


def save_png(image: torch.Tensor, path: str) -> None:
    """
    Write an (H, W, 3) RGB image with values in [0, 1] as an 8-bit PNG.

    :param image: Image to write
    :param path: Path of the PNG file
    """
    bgr = cv2.cvtColor(to_uint8(image), cv2.COLOR_RGB2BGR)
    if not cv2.imwrite(path, bgr):
        raise OSError(f"Unable to write image to '{path}'")


def load_png(path: str) -> torch.Tensor:
    """
    Read an 8-bit RGB image as an (H, W, 3) tensor with values in [0, 1].

    :param path: Path of the image file
    :return: Float64 tensor holding the image
    """
    bgr = cv2.imread(path, cv2.IMREAD_COLOR)
    if bgr is None:
        raise OSError(f"Unable to read image from '{path}'")
    rgb = cv2.cvtColor(bgr, cv2.COLOR_BGR2RGB)
    return torch.from_numpy(rgb.astype(np.float64) / 255.0)


def save_depth_png(depth: torch.Tensor, path: str) -> None:
    """
    Write a depth map as a grayscale PNG, min-max normalized to the 8-bit range.

    :param depth: Depth map of shape (H, W)
    :param path: Path of the PNG file
    """
    array = depth.detach().cpu().numpy()
    span = float(array.max() - array.min()) if array.size > 0 else 0.0
    if span > 0:
        array = (array - array.min()) / span
    else:
        array = np.zeros_like(array)
    PILImage.fromarray(np.round(array * 255.0).astype(np.uint8), mode="L").save(path)


def save_array(array: torch.Tensor, path: str) -> None:
    """
    Write a tensor as a float64 .npy file, for lossless comparison.
    """
    np.save(path, array.detach().cpu().numpy().astype(np.float64))


def load_array(path: str) -> torch.Tensor:
    """
    Read a .npy file as a float64 tensor.
    """
    if not os.path.isfile(path):
        raise FileNotFoundError(f"No array file found at '{path}'")
    return torch.from_numpy(np.load(path).astype(np.float64)).to(DTYPE)


def load_image(path: str) -> torch.Tensor:
    """
    Read an image from a .npy array file or an 8-bit image file, by extension.
    """
    if path.endswith(".npy"):
        return load_array(path)
    return load_png(path)


def load_depth(path: str) -> torch.Tensor:
    """
    Read a depth map of shape (H, W) from a .npy array or a grayscale image.

    Grayscale images are scaled to [0, 1]. A .npy array with a trailing channel axis
    is reduced to its first channel.
    """
    if path.endswith(".npy"):
        depth = load_array(path)
        return depth[..., 0] if depth.dim() == 3 else depth
    gray = cv2.imread(path, cv2.IMREAD_GRAYSCALE)
    if gray is None:
        raise OSError(f"Unable to read depth map from '{path}'")
    return torch.from_numpy(gray.astype(np.float64) / 255.0)
