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

from typing import Optional, Union

import torch
import torch.nn.functional as F

from aquasplat.data_models import (
    DTYPE,
    CameraView,
    DisparityMaps,
    VirtualViews,
    WarpAxis,
    WarpResult,
)
from aquasplat.data_models.utils import str_to_enum_converter
from aquasplat.gradients.tape import note_branch

from .projection import DEPTH_EPSILON


def make_virtual_poses(
    camera: CameraView, baseline_h: float, baseline_v: float
) -> VirtualViews:
    """
    Create the horizontally and vertically translated companions of a camera.

    The extrinsics are left-composed with the pure translations (b_h, 0, 0) and
    (0, b_v, 0), so the camera centers move by -b_h along the camera x axis and by
    -b_v along the camera y axis. Intrinsics, rotation and image size are shared.

    :param camera: Central camera P_c
    :param baseline_h: Horizontal baseline b_h in scene units
    :param baseline_v: Vertical baseline b_v in scene units
    :return: VirtualViews holding P_c, P_h and P_v
    """
    offset_h = torch.tensor([baseline_h, 0.0, 0.0], dtype=DTYPE)
    offset_v = torch.tensor([0.0, baseline_v, 0.0], dtype=DTYPE)
    return VirtualViews(
        central=camera,
        horizontal=camera.with_translation(camera.translation + offset_h),
        vertical=camera.with_translation(camera.translation + offset_v),
        baseline_h=float(baseline_h),
        baseline_v=float(baseline_v),
    )


def disparity_maps(
    depth: torch.Tensor,
    camera: CameraView,
    baseline_h: float,
    baseline_v: float,
    depth_epsilon: float = DEPTH_EPSILON,
) -> DisparityMaps:
    """
    Convert a depth map of the central view into horizontal and vertical
    disparities, d_h = f_h b_h / D and d_v = f_v b_v / D.

    Pixels with a depth of at most `depth_epsilon` are marked invalid and get zero
    disparity.

    :param depth: Depth map D_c, shape (H, W)
    :param camera: Central camera providing the focal lengths
    :param baseline_h: Horizontal baseline b_h
    :param baseline_v: Vertical baseline b_v
    :param depth_epsilon: Minimum depth of a valid pixel
    :return: DisparityMaps with both disparities and their validity mask
    """
    valid = depth > depth_epsilon
    note_branch(valid)
    safe_depth = torch.where(valid, depth, torch.ones_like(depth))
    zeros = torch.zeros_like(depth)
    horizontal = torch.where(
        valid, (camera.intrinsics[0, 0] * baseline_h) / safe_depth, zeros
    )
    vertical = torch.where(
        valid, (camera.intrinsics[1, 1] * baseline_v) / safe_depth, zeros
    )
    return DisparityMaps(horizontal=horizontal, vertical=vertical, valid=valid)


def alignment_disparities(
    depth: torch.Tensor, views: VirtualViews, depth_epsilon: float = DEPTH_EPSILON
) -> DisparityMaps:
    """
    Return the disparities that align the renders of the virtual views with the
    central view under `inverse_warp`.

    A point at depth z appears f b / z pixels further along the positive axis in a
    view created by `make_virtual_poses` with baseline b, while `inverse_warp`
    samples at x - d. The disparities are therefore computed for the negated
    baselines.

    :param depth: Depth map of the central view, shape (H, W)
    :param views: VirtualViews created by `make_virtual_poses`
    :param depth_epsilon: Minimum depth of a valid pixel
    :return: DisparityMaps for warping P_h and P_v renders onto P_c
    """
    return disparity_maps(
        depth,
        views.central,
        -views.baseline_h,
        -views.baseline_v,
        depth_epsilon=depth_epsilon,
    )


def inverse_warp(
    image: torch.Tensor,
    disparity: torch.Tensor,
    axis: Union[str, WarpAxis],
    valid: Optional[torch.Tensor] = None,
) -> WarpResult:
    """
    Resample an image at locations displaced by a disparity map.

    For the horizontal axis out(x, y) = I(x - d(x, y), y), for the vertical axis
    out(x, y) = I(x, y - d(x, y)). Fractional locations are sampled bilinearly, so
    gradients flow into both the image and the disparity. Pixels whose source
    location falls outside [0, W - 1] x [0, H - 1] are masked and set to zero.

    :param image: Source image, shape (H, W, C)
    :param disparity: Disparity map, shape (H, W)
    :param axis: WarpAxis (or its string value) along which to shift
    :param valid: Optional mask of pixels with a defined disparity, shape (H, W)
    :return: WarpResult holding the warped image and its validity mask
    """
    axis = str_to_enum_converter(WarpAxis)(axis)
    height, width = disparity.shape
    finite = torch.isfinite(disparity)
    if valid is not None:
        finite = finite & valid
    disparity = torch.where(finite, disparity, torch.zeros_like(disparity))

    ys, xs = torch.meshgrid(
        torch.arange(height, dtype=DTYPE),
        torch.arange(width, dtype=DTYPE),
        indexing="ij",
    )
    if axis == WarpAxis.HORIZONTAL:
        xs = xs - disparity
    else:
        ys = ys - disparity
    inside = (xs >= 0) & (xs <= width - 1) & (ys >= 0) & (ys <= height - 1)
    mask = inside & finite
    note_branch(mask)

    grid_x = 2.0 * xs / max(width - 1, 1) - 1.0
    grid_y = 2.0 * ys / max(height - 1, 1) - 1.0
    grid = torch.stack([grid_x, grid_y], dim=-1)[None]
    source = image.permute(2, 0, 1)[None]
    sampled = F.grid_sample(
        source, grid, mode="bilinear", padding_mode="zeros", align_corners=True
    )
    warped = sampled[0].permute(1, 2, 0) * mask[..., None]
    return WarpResult(image=warped, mask=mask)
