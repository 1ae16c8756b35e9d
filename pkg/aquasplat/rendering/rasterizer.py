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

import logging
from typing import Optional, Tuple, Union

import torch

from aquasplat.data_models import (
    DTYPE,
    AlphaAdjustState,
    CameraView,
    GaussianCloud,
    MediumParameters,
    RenderBundle,
    SplatList,
)
from aquasplat.exceptions import RenderError
from aquasplat.geometry import (
    DEPTH_EPSILON,
    SCREEN_LOW_PASS,
    pixel_grid,
    project_covariances,
    project_points,
    ray_directions,
)
from aquasplat.gradients.tape import note_branch
from aquasplat.networks import MediumField, alpha_adjust, medium_eval
from aquasplat.scene import build_covariances

MAX_ALPHA = 0.999
MIN_ALPHA = 1.0 / 255.0
FOOTPRINT_SIGMAS = 3.0
DEPTH_NORMALIZATION_EPSILON = 1e-8

Medium = Union[MediumField, MediumParameters, None]


def sort_splats(
    cloud: GaussianCloud,
    camera: CameraView,
    field: Optional[MediumField] = None,
    alpha_state: Optional[AlphaAdjustState] = None,
    depth_epsilon: float = DEPTH_EPSILON,
    low_pass: float = SCREEN_LOW_PASS,
) -> SplatList:
    """
    Project the Gaussians in front of `camera` and sort them front to back.

    Gaussians at a camera depth of at most `depth_epsilon` are dropped. The sort is
    stable on the cloud order, so Gaussians at equal depth are composited in index
    order. When `alpha_state` is active, each peak opacity is replaced by its
    depth-aware adjustment.

    :param cloud: GaussianCloud to project
    :param camera: CameraView to project into
    :param field: MediumField providing the opacity network, required when
        `alpha_state` is active
    :param alpha_state: Weight of the depth-aware opacity adjustment
    :param depth_epsilon: Minimum camera depth of a rendered Gaussian
    :param low_pass: Isotropic screen-space variance added to every footprint
    :return: SplatList sorted by depth
    """
    _, all_depths, in_front = project_points(
        camera, cloud.means, depth_epsilon=depth_epsilon
    )
    note_branch(in_front)
    visible = torch.nonzero(in_front, as_tuple=False).reshape(-1)
    order = torch.sort(all_depths.detach()[visible], stable=True).indices
    indices = visible[order]
    note_branch(indices)

    means = cloud.means[indices]
    pixels, depths, _ = project_points(camera, means, depth_epsilon=depth_epsilon)
    covariances = build_covariances(cloud.log_scales[indices], cloud.rotations[indices])
    covariances2d = project_covariances(camera, means, covariances, low_pass=low_pass)
    opacities = torch.sigmoid(cloud.opacity_logits[indices])

    if alpha_state is not None and alpha_state.active:
        if field is None:
            raise ValueError(
                "Depth-aware opacity adjustment requires a MediumField, but none "
                "was given."
            )
        directions = means - camera.center
        directions = directions / torch.linalg.norm(directions, dim=1, keepdim=True)
        opacities = alpha_adjust(
            field, opacities, depths, directions, alpha_state.weight
        )

    return SplatList(
        indices=indices,
        means2d=pixels,
        covariances2d=covariances2d,
        depths=depths,
        opacities=opacities,
        colors=cloud.colors[indices],
    )


def splat_alphas(splats: SplatList, pixels: torch.Tensor) -> torch.Tensor:
    """
    Evaluate the opacity of every splat at every pixel.

    alpha = opacity * exp(-1/2 d^T Sigma'^-1 d) inside a radius of three standard
    deviations of the major axis, clipped to at most 0.999. Values below 1/255 are
    set to zero.

    :param splats: Sorted splats
    :param pixels: Pixel coordinates, shape (P, 2)
    :return: Tensor of shape (P, M)
    """
    a = splats.covariances2d[:, 0, 0]
    b = splats.covariances2d[:, 0, 1]
    c = splats.covariances2d[:, 1, 1]
    determinant = a * c - b * b
    offsets = pixels[:, None, :] - splats.means2d[None, :, :]
    dx, dy = offsets[..., 0], offsets[..., 1]
    mahalanobis = (c * dx * dx - 2.0 * b * dx * dy + a * dy * dy) / determinant
    alphas = splats.opacities[None, :] * torch.exp(-0.5 * mahalanobis)

    with torch.no_grad():
        half_spread = torch.sqrt(0.25 * (a - c) ** 2 + b * b)
        major_variance = 0.5 * (a + c) + half_spread
        footprint = (dx * dx + dy * dy) <= (FOOTPRINT_SIGMAS**2) * major_variance
    note_branch(footprint)
    alphas = torch.where(footprint, alphas, torch.zeros_like(alphas))

    clipped = alphas > MAX_ALPHA
    note_branch(clipped)
    alphas = torch.where(clipped, torch.full_like(alphas, MAX_ALPHA), alphas)

    kept = alphas >= MIN_ALPHA
    note_branch(kept)
    return torch.where(kept, alphas, torch.zeros_like(alphas))


def _check_finite(name: str, value: torch.Tensor) -> None:
    """
    Raise a RenderError if `value` holds NaN or infinite entries.
    """
    num_invalid = int((~torch.isfinite(value)).sum())
    if num_invalid > 0:
        raise RenderError(
            quantity=name,
            message="the medium produced non-finite coefficients",
            num_invalid=num_invalid,
        )


def medium_coefficients(
    medium: Medium, camera: CameraView
) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """
    Return per-pixel medium coefficients for every ray of `camera`.

    :param medium: MediumField (evaluated per ray) or MediumParameters (constant)
    :param camera: CameraView whose rays are evaluated
    :return: Tuple of sigma_attn, sigma_bs and c_med, each of shape (P, 3) or (1, 3)
    """
    if isinstance(medium, MediumField):
        sigma_attn, sigma_bs, c_med = medium_eval(medium, ray_directions(camera))
    else:
        sigma_attn = medium.sigma_attn[None, :]
        sigma_bs = medium.sigma_bs[None, :]
        c_med = medium.c_med[None, :]
    for name, value in (
        ("sigma_attn", sigma_attn),
        ("sigma_bs", sigma_bs),
        ("c_med", c_med),
    ):
        _check_finite(name, value)
    return sigma_attn, sigma_bs, c_med


def render(
    cloud: GaussianCloud,
    camera: CameraView,
    medium: Medium = None,
    alpha_state: Optional[AlphaAdjustState] = None,
    restore: bool = False,
    depth_epsilon: float = DEPTH_EPSILON,
) -> RenderBundle:
    """
    Render a Gaussian cloud through a scattering medium.

    Every pixel composites all splats in front of the camera, front to back. With
    T_i the object transmittance in front of splat i:

      I_obj = sum_i T_i alpha_i c_i exp(-sigma_attn z_i)
      I_med = c_med [sum_i T_i (exp(-sigma_bs z_{i-1}) - exp(-sigma_bs z_i))
              + T_N exp(-sigma_bs z_N)], with z_0 = 0
      D = sum_i T_i alpha_i z_i / (sum_i T_i alpha_i + 1e-8)

    A ray that meets no splat renders I_obj = 0, I_med = c_med, D = 0 and T = 1.
    Without a medium the plain alpha-blended color is rendered and I_med = 0.

    :param cloud: GaussianCloud to render
    :param camera: CameraView to render from
    :param medium: MediumField, constant MediumParameters, or None for no medium
    :param alpha_state: Depth-aware opacity adjustment to apply. Requires
        `medium` to be a MediumField when active
    :param restore: True to render the restored scene: attenuation is removed and
        the medium contribution is dropped, so the composite equals I_obj
    :param depth_epsilon: Minimum camera depth of a rendered Gaussian
    :return: RenderBundle holding all images of the render
    """
    field = medium if isinstance(medium, MediumField) else None
    splats = sort_splats(
        cloud, camera, field=field, alpha_state=alpha_state, depth_epsilon=depth_epsilon
    )
    if splats.means2d.requires_grad and not splats.means2d.is_leaf:
        splats.means2d.retain_grad()

    pixels = pixel_grid(camera)
    num_pixels = pixels.shape[0]
    alphas = splat_alphas(splats, pixels)
    survival = torch.cumprod(1.0 - alphas, dim=1)
    ones = torch.ones((num_pixels, 1), dtype=DTYPE)
    transmittance = torch.cat([ones, survival[:, :-1]], dim=1)
    residual = survival[:, -1] if len(splats) > 0 else ones[:, 0]
    weights = transmittance * alphas
    depths = splats.depths

    if medium is None:
        object_image = weights @ splats.colors
        medium_image = torch.zeros((num_pixels, 3), dtype=DTYPE)
    else:
        sigma_attn, sigma_bs, c_med = medium_coefficients(medium, camera)
        if restore:
            sigma_attn = torch.zeros_like(sigma_attn)
        attenuation = torch.exp(-sigma_attn[:, None, :] * depths[None, :, None])
        object_image = torch.sum(
            weights[..., None] * splats.colors[None, :, :] * attenuation, dim=1
        )
        if restore:
            medium_image = torch.zeros((num_pixels, 3), dtype=DTYPE)
        else:
            previous = torch.cat([depths.new_zeros(1), depths])[:-1]
            entering = torch.exp(-sigma_bs[:, None, :] * previous[None, :, None])
            leaving = torch.exp(-sigma_bs[:, None, :] * depths[None, :, None])
            scattered = torch.sum(transmittance[..., None] * (entering - leaving), 1)
            last_depth = depths[-1] if len(splats) > 0 else depths.new_zeros(())
            background = residual[:, None] * torch.exp(-sigma_bs * last_depth)
            medium_image = c_med * (scattered + background)

    accumulated = weights.sum(dim=1)
    depth = (weights @ depths) / (accumulated + DEPTH_NORMALIZATION_EPSILON)
    logging.debug(
        f"Rendered {len(splats)} of {len(cloud)} Gaussians at "
        f"{camera.width}x{camera.height}."
    )

    shape = (camera.height, camera.width)
    object_image = object_image.reshape(*shape, 3)
    medium_image = medium_image.reshape(*shape, 3)
    return RenderBundle(
        object_image=object_image,
        medium_image=medium_image,
        composite=composite_full(object_image, medium_image),
        depth=depth.reshape(shape),
        transmittance=residual.reshape(shape),
        splats=splats,
        camera=camera,
    )


def composite_full(
    object_image: torch.Tensor, medium_image: torch.Tensor
) -> torch.Tensor:
    """
    Composite an object image with a medium image, I = I_obj + I_med.

    :param object_image: Object radiance, shape (H, W, 3)
    :param medium_image: Medium radiance, shape (H, W, 3)
    :return: Composite image, shape (H, W, 3)
    """
    if object_image.shape != medium_image.shape:
        raise ValueError(
            f"Cannot composite an object image of shape {tuple(object_image.shape)} "
            f"with a medium image of shape {tuple(medium_image.shape)}."
        )
    return object_image + medium_image
