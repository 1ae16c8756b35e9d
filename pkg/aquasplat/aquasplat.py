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
import sys
from typing import Dict, List, Optional, Sequence, Union

import torch
from tqdm.auto import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from .converters import (
    CameraConverter,
    CheckpointConverter,
    ConfigConverter,
    DatasetConverter,
    SceneConverter,
    save_view_depth,
    save_view_image,
)
from .data_models import (
    AlphaAdjustState,
    CameraView,
    FiniteDifferenceReport,
    FixtureSpec,
    MediumPreset,
    MediumPresetName,
    MetricReport,
    MetricTask,
    RenderComponent,
    SyntheticFixture,
    TrainConfig,
    TrainingResult,
)
from .data_models.utils import str_to_enum_converter
from .evaluation import evaluate_folders, load_image_folder
from .rendering import render
from .simulation import degrade, make_fixture, normalize_depth
from .training import check_gradients, train
from .utils import load_depth

DEFAULT_LOG_LEVEL = logging.INFO
DEFAULT_LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
SCENE_FILE = "scene.txt"
DEPTH_EXTENSIONS = (".npy", ".png")


def _load_depth_folder(folder: str) -> Dict[str, torch.Tensor]:
    """
    Load all depth maps of a folder, keyed by file name stem. A .npy array takes
    precedence over an image with the same stem.
    """
    if not os.path.isdir(folder):
        raise FileNotFoundError(f"Depth folder '{folder}' does not exist")
    paths: Dict[str, str] = {}
    for extension in reversed(DEPTH_EXTENSIONS):
        for filename in sorted(os.listdir(folder)):
            stem, file_extension = os.path.splitext(filename)
            if file_extension.lower() == extension:
                paths[stem] = os.path.join(folder, filename)
    return {name: load_depth(path) for name, path in paths.items()}


class AquaSplat:
    """
    Reconstruct scenes seen through a scattering medium with Gaussian splatting.

    The `AquaSplat` class provides methods for the full pipeline: simulating
    degraded datasets, training a Gaussian cloud and the medium networks, rendering
    a trained checkpoint, evaluating rendered images and verifying the analytic
    gradients of the training objective.

    :param log_level: Level of the default log handler, installed only when the root
        logger has no handlers yet
    """

    def __init__(self, log_level: int = DEFAULT_LOG_LEVEL):
        if not logging.root.handlers:
            logging.basicConfig(
                handlers=[logging.StreamHandler(stream=sys.stdout)],
                level=log_level,
                format=DEFAULT_LOG_FORMAT,
            )

    def simulate_fixture(
        self, spec: FixtureSpec, output_dir: Optional[str] = None
    ) -> SyntheticFixture:
        """
        Generate a synthetic scene, render it from a camera arc and degrade the
        renders with the medium preset of `spec`.

        :param spec: FixtureSpec describing the scene, cameras and medium
        :param output_dir: Optional directory to write the dataset to. The
            ground-truth cloud is written next to it as 'scene.txt'
        :return: SyntheticFixture holding the ground-truth cloud and the dataset
        """
        fixture = make_fixture(spec)
        logging.info(
            f"Generated fixture with {len(fixture.cloud)} Gaussians and "
            f"{len(fixture.dataset.views)} views."
        )
        if output_dir is not None:
            DatasetConverter.save(fixture.dataset, output_dir)
            SceneConverter.save(fixture.cloud, os.path.join(output_dir, SCENE_FILE))
        return fixture

    def simulate_images(
        self,
        clean_dir: str,
        depth_dir: str,
        output_dir: str,
        preset: Union[str, MediumPresetName, MediumPreset] = MediumPresetName.FOG,
    ) -> List[str]:
        """
        Degrade a folder of clean images with the physical image formation model.

        Every clean image is paired with the depth map of the same file name stem.
        Depth maps are min-max normalized before degradation.

        :param clean_dir: Folder holding the clean RGB images
        :param depth_dir: Folder holding one depth map per clean image
        :param output_dir: Folder to write the degraded images to
        :param preset: Built-in preset name or custom MediumPreset
        :return: Names of the degraded views, in sorted order
        """
        if not isinstance(preset, MediumPreset):
            preset = MediumPreset.from_name(preset)
        images = load_image_folder(clean_dir)
        if not images:
            raise ValueError(f"No images found in '{clean_dir}'")
        depths = _load_depth_folder(depth_dir)
        missing = sorted(set(images) - set(depths))
        if missing:
            raise ValueError(f"No depth map found for images {missing}")
        names = sorted(images)
        with logging_redirect_tqdm(tqdm_class=tqdm):
            for name in tqdm(names, desc="Degrading images"):
                degraded = degrade(images[name], normalize_depth(depths[name]), preset)
                save_view_image(degraded, output_dir, name)
        logging.info(
            f"{len(names)} images degraded with preset '{preset.name}' and saved to "
            f"'{output_dir}'."
        )
        return names

    def train(
        self,
        config: Union[str, TrainConfig],
        dataset_dir: str,
        output_dir: Optional[str] = None,
    ) -> TrainingResult:
        """
        Train a Gaussian cloud and the medium networks on a dataset directory.

        :param config: TrainConfig, or path to a key=value configuration file
        :param dataset_dir: Dataset directory as written by `simulate_fixture`
        :param output_dir: Optional directory for the training log and checkpoints
        :return: TrainingResult holding the optimized model and the metrics on the
            held-out views
        """
        if not isinstance(config, TrainConfig):
            config = ConfigConverter.load(config, TrainConfig)
        dataset = DatasetConverter.load(dataset_dir)
        logging.info(
            f"Training for {config.total_steps} steps on {len(dataset.train_views)} "
            f"views, {len(dataset.test_views)} views held out."
        )
        return train(config, dataset, output_dir=output_dir)

    def render(
        self,
        checkpoint_dir: str,
        cameras: Union[str, Sequence[CameraView]],
        output_dir: str,
        component: Union[str, RenderComponent] = RenderComponent.COMPOSITE,
    ) -> Dict[str, List[str]]:
        """
        Render a trained checkpoint from a set of cameras.

        Every requested component is written to its own subfolder of `output_dir`,
        one .npy array and one PNG preview per camera. Images of the 'restored'
        component are rendered with the attenuation of the medium removed and the
        backscatter discarded.

        :param checkpoint_dir: Checkpoint directory written during training
        :param cameras: Path to a camera file, or list of CameraView
        :param output_dir: Directory to write the images to
        :param component: RenderComponent to write, or 'all'
        :return: Dictionary mapping every written component to the names of the
            rendered views
        """
        component = str_to_enum_converter(RenderComponent)(component)
        checkpoint = CheckpointConverter.load(checkpoint_dir)
        if isinstance(cameras, str):
            cameras = CameraConverter.load(cameras)
        components = component.expand()
        names = [
            camera.name if camera.name is not None else f"view_{index:03d}"
            for index, camera in enumerate(cameras)
        ]
        with torch.no_grad(), logging_redirect_tqdm(tqdm_class=tqdm):
            for name, camera in tqdm(list(zip(names, cameras)), desc="Rendering views"):
                bundle = render(
                    checkpoint.cloud,
                    camera,
                    medium=checkpoint.field,
                    alpha_state=AlphaAdjustState.raw(),
                )
                outputs = {
                    RenderComponent.COMPOSITE: bundle.composite,
                    RenderComponent.OBJECT: bundle.object_image,
                    RenderComponent.MEDIUM: bundle.medium_image,
                }
                for item in components:
                    folder = os.path.join(output_dir, str(item))
                    if item == RenderComponent.DEPTH:
                        save_view_depth(bundle.depth, folder, name)
                    elif item == RenderComponent.RESTORED:
                        restored = render(
                            checkpoint.cloud,
                            camera,
                            medium=checkpoint.field,
                            restore=True,
                        )
                        save_view_image(restored.composite, folder, name)
                    else:
                        save_view_image(outputs[item], folder, name)
        logging.info(
            f"Rendered {len(names)} views of checkpoint '{checkpoint_dir}' to "
            f"'{output_dir}'."
        )
        return {str(item): names for item in components}

    def evaluate(
        self,
        prediction_dir: str,
        ground_truth_dir: str,
        task: Union[str, MetricTask] = MetricTask.NOVEL_VIEW,
        output_file: Optional[str] = None,
    ) -> MetricReport:
        """
        Compare a folder of rendered images with a folder of ground truth images.

        :param prediction_dir: Folder holding the rendered images
        :param ground_truth_dir: Folder holding the ground truth images, matched to
            the predictions by file name stem
        :param task: Evaluation task to tag the report with
        :param output_file: Optional path of a file to write the metric records to,
            one JSON object per line
        :return: MetricReport with one entry per predicted image
        """
        report = evaluate_folders(prediction_dir, ground_truth_dir, task=task)
        if output_file is not None:
            with open(output_file, "w") as metric_file:
                for record in report.to_records():
                    metric_file.write(json.dumps(record) + "\n")
        logging.info(f"Evaluation result: {report.summary()}")
        return report

    def check_gradients(
        self, seed: int = 0, step_size: float = 1e-6, tolerance: float = 1e-4
    ) -> Dict[str, FiniteDifferenceReport]:
        """
        Verify the analytic gradient of every loss term with finite differences on a
        micro-scene.

        :param seed: Seed of the micro-scene
        :param step_size: Finite difference step size
        :param tolerance: Maximum relative error per checked entry
        :return: FiniteDifferenceReport per loss term, keyed by term name
        """
        return check_gradients(seed=seed, step_size=step_size, tolerance=tolerance)
