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

import json
import logging
import os
from typing import Any, Dict, List, Optional

import torch
from pathvalidate import sanitize_filename

from aquasplat.data_models import DatasetView, MediumPreset, TrainingDataset
from aquasplat.utils import load_array, save_array, save_depth_png, save_png

from .camera_converter import CameraConverter

MANIFEST_FILE = "manifest.json"
CAMERA_FILE = "cameras.txt"
DEGRADED_FOLDER = "degraded"
CLEAN_FOLDER = "clean"
DEPTH_FOLDER = "depth"
DATASET_FORMAT = "aquasplat-dataset"


def view_file_stem(name: str) -> str:
    """
    Return the file name stem used for the images of a view.
    """
    return sanitize_filename(name)


def save_view_image(image: torch.Tensor, folder: str, name: str) -> None:
    """
    Write an RGB image as a lossless .npy array and an 8-bit PNG preview.
    """
    os.makedirs(folder, exist_ok=True, mode=0o770)
    stem = os.path.join(folder, view_file_stem(name))
    save_array(image, stem + ".npy")
    save_png(image, stem + ".png")


def save_view_depth(depth: torch.Tensor, folder: str, name: str) -> None:
    """
    Write a depth map as a lossless .npy array and a normalized grayscale PNG.
    """
    os.makedirs(folder, exist_ok=True, mode=0o770)
    stem = os.path.join(folder, view_file_stem(name))
    save_array(depth, stem + ".npy")
    save_depth_png(depth, stem + ".png")


def _load_optional(folder: str, name: str) -> Optional[torch.Tensor]:
    """
    Read the array of a view from `folder`, or return None if it does not exist.
    """
    path = os.path.join(folder, view_file_stem(name) + ".npy")
    return load_array(path) if os.path.isfile(path) else None


class DatasetConverter:
    """
    Class that handles reading and writing datasets of posed images.

    A dataset directory holds 'manifest.json' (view names, train/test split and
    medium preset), 'cameras.txt' with one camera block per view in manifest order,
    and the folders 'degraded', 'clean' and 'depth' with one .npy array (and a PNG
    preview) per view. Only the degraded images are mandatory.
    """

    @staticmethod
    def save(dataset: TrainingDataset, directory: str) -> str:
        """
        Write a dataset to a directory.

        :param dataset: TrainingDataset to write
        :param directory: Target directory, created if needed
        :return: Path of the directory
        """
        os.makedirs(directory, exist_ok=True, mode=0o770)
        manifest: Dict[str, Any] = {
            "format": DATASET_FORMAT,
            "version": 1,
            "preset": None if dataset.preset is None else dataset.preset.to_dict(),
            "train_views": [view.name for view in dataset.train_views],
            "test_views": [view.name for view in dataset.test_views],
        }
        with open(os.path.join(directory, MANIFEST_FILE), "w") as manifest_file:
            json.dump(manifest, manifest_file, indent=2)
        CameraConverter.save(
            [view.camera for view in dataset.views],
            os.path.join(directory, CAMERA_FILE),
        )
        for view in dataset.views:
            save_view_image(
                view.image, os.path.join(directory, DEGRADED_FOLDER), view.name
            )
            if view.clean_image is not None:
                save_view_image(
                    view.clean_image, os.path.join(directory, CLEAN_FOLDER), view.name
                )
            if view.depth is not None:
                save_view_depth(
                    view.depth, os.path.join(directory, DEPTH_FOLDER), view.name
                )
        logging.info(f"Dataset with {len(dataset.views)} views saved to '{directory}'.")
        return directory

    @staticmethod
    def load(directory: str) -> TrainingDataset:
        """
        Read a dataset from a directory written by `save`.

        :param directory: Dataset directory
        :return: TrainingDataset holding all views
        """
        manifest_path = os.path.join(directory, MANIFEST_FILE)
        if not os.path.isfile(manifest_path):
            raise FileNotFoundError(f"No dataset manifest found at '{manifest_path}'")
        with open(manifest_path, "r") as manifest_file:
            manifest = json.load(manifest_file)
        names: List[str] = manifest["train_views"] + manifest["test_views"]
        cameras = CameraConverter.load(os.path.join(directory, CAMERA_FILE))
        if len(cameras) != len(names):
            raise ValueError(
                f"Dataset manifest lists {len(names)} views, but '{CAMERA_FILE}' "
                f"holds {len(cameras)} cameras."
            )
        views: List[DatasetView] = []
        for name, camera in zip(names, cameras):
            camera.name = name
            image = _load_optional(os.path.join(directory, DEGRADED_FOLDER), name)
            if image is None:
                raise FileNotFoundError(
                    f"Degraded image of view '{name}' is missing from '{directory}'"
                )
            views.append(
                DatasetView(
                    name=name,
                    camera=camera,
                    image=image,
                    clean_image=_load_optional(
                        os.path.join(directory, CLEAN_FOLDER), name
                    ),
                    depth=_load_optional(os.path.join(directory, DEPTH_FOLDER), name),
                )
            )
        preset = manifest.get("preset")
        num_train = len(manifest["train_views"])
        return TrainingDataset(
            train_views=views[:num_train],
            test_views=views[num_train:],
            preset=None if preset is None else MediumPreset(**preset),
        )
