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
import math
import os
from typing import Dict, List, Mapping, Union

import torch

from aquasplat.data_models import MetricReport, MetricTask, ViewMetric
from aquasplat.losses import structural_similarity
from aquasplat.utils import load_image

IMAGE_EXTENSIONS = (".npy", ".png")
# In order of preference when a view is stored in more than one format


def _check_shapes(image1: torch.Tensor, image2: torch.Tensor) -> None:
    """
    Raise a ValueError if two images do not have the same shape.
    """
    if image1.shape != image2.shape:
        raise ValueError(
            f"Cannot compare images of shapes {tuple(image1.shape)} and "
            f"{tuple(image2.shape)}"
        )


def psnr(image1: torch.Tensor, image2: torch.Tensor) -> float:
    """
    Return the peak signal-to-noise ratio of two images with values in [0, 1],
    10 log10(1 / MSE), with the MSE taken over all pixels and channels.

    :param image1: First image
    :param image2: Second image, same shape as `image1`
    :return: PSNR in dB, math.inf for identical images
    """
    _check_shapes(image1, image2)
    mse = float(torch.mean((image1.detach() - image2.detach()) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)


def ssim(image1: torch.Tensor, image2: torch.Tensor) -> float:
    """
    Return the mean structural similarity of two (H, W, C) images.

    Only windows that lie fully inside the images are evaluated, with an 11x11
    Gaussian window of standard deviation 1.5, averaged over channels.

    :param image1: First image
    :param image2: Second image, same shape as `image1`
    :raises ValueError: If the images are smaller than the window
    :return: SSIM in [-1, 1]
    """
    _check_shapes(image1, image2)
    with torch.no_grad():
        return float(structural_similarity(image1, image2, same_padding=False))


def depth_mae(depth: torch.Tensor, reference: torch.Tensor) -> float:
    """
    Return the mean absolute difference of two depth maps.
    """
    _check_shapes(depth, reference)
    return float(torch.mean(torch.abs(depth.detach() - reference.detach())))


def evaluate(
    predictions: Mapping[str, torch.Tensor],
    ground_truths: Mapping[str, torch.Tensor],
    task: Union[str, MetricTask] = MetricTask.NOVEL_VIEW,
) -> MetricReport:
    """
    Compute PSNR and SSIM for every predicted view against its ground truth.

    :param predictions: Predicted images keyed by view name
    :param ground_truths: Ground truth images keyed by view name. Must hold every
        predicted view
    :param task: Evaluation task to tag the report with
    :return: MetricReport with one entry per predicted view, in sorted name order
    """
    missing = sorted(set(predictions) - set(ground_truths))
    if missing:
        raise ValueError(f"No ground truth found for views {missing}")
    views: List[ViewMetric] = []
    for name in sorted(predictions):
        prediction, ground_truth = predictions[name], ground_truths[name]
        views.append(
            ViewMetric(
                name=name,
                psnr=psnr(prediction, ground_truth),
                ssim=ssim(prediction, ground_truth),
            )
        )
    report = MetricReport(task=task, views=views)
    logging.info(
        f"Evaluated {len(views)} views for task '{report.task}': PSNR "
        f"{report.mean_psnr:.3f} dB, SSIM {report.mean_ssim:.4f}"
    )
    return report


def load_image_folder(folder: str) -> Dict[str, torch.Tensor]:
    """
    Load all images of a folder, keyed by file name stem.

    When a view is stored both as .npy array and as PNG, the lossless array is used.

    :param folder: Folder holding the images
    :return: Dictionary mapping view names to (H, W, 3) tensors
    """
    if not os.path.isdir(folder):
        raise FileNotFoundError(f"Image folder '{folder}' does not exist")
    paths: Dict[str, str] = {}
    for extension in reversed(IMAGE_EXTENSIONS):
        for filename in sorted(os.listdir(folder)):
            stem, file_extension = os.path.splitext(filename)
            if file_extension.lower() == extension:
                paths[stem] = os.path.join(folder, filename)
    return {name: load_image(path) for name, path in paths.items()}


def evaluate_folders(
    prediction_folder: str,
    ground_truth_folder: str,
    task: Union[str, MetricTask] = MetricTask.NOVEL_VIEW,
) -> MetricReport:
    """
    Compare the images in a folder of predictions with those in a ground truth
    folder, matched by file name stem.

    :param prediction_folder: Folder holding the predicted images
    :param ground_truth_folder: Folder holding the ground truth images
    :param task: Evaluation task to tag the report with
    :return: MetricReport with one entry per predicted image
    """
    predictions = load_image_folder(prediction_folder)
    if not predictions:
        raise ValueError(f"No images found in '{prediction_folder}'")
    return evaluate(predictions, load_image_folder(ground_truth_folder), task=task)
