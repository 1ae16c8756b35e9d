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

import numpy as np
import torch
from tqdm.auto import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from aquasplat.converters import CheckpointConverter, checkpoint_folder_name
from aquasplat.data_models import (
    Checkpoint,
    CloudInitSpec,
    DatasetView,
    GaussianCloud,
    TrainConfig,
    TrainingDataset,
    TrainingResult,
)
from aquasplat.evaluation import validate
from aquasplat.exceptions import NonFiniteGradientError, TrainingAbortedError
from aquasplat.gradients import ParamSet, backward
from aquasplat.networks import MediumField
from aquasplat.scene import bounds_from_cameras, init_cloud

from .baselines import sample_baselines
from .densification import DensificationStats, densify_prune
from .optimizer import GaussianOptimizer
from .schedule import schedule_at
from .step import compute_step, step_generator

LOG_FILE = "train_log.jsonl"
CHECKPOINT_FOLDER = "checkpoints"
DENSIFY_SEED_OFFSET = 7919
# Separates the densification random stream from the per-step candidate stream


def network_modules(field: MediumField) -> Dict[str, torch.nn.Module]:
    """
    Return the networks of a MediumField keyed by the prefix used in a ParamSet.
    """
    return {"phi_med": field.phi_med, "phi_alpha": field.phi_alpha}


class Trainer:
    """
    Optimizes a Gaussian cloud and the medium networks on a dataset of posed
    images.

    Every step picks a training view, evaluates the scheduled objective,
    back-propagates it and applies one optimizer step. Densification and
    checkpoints run on their configured intervals. When an output directory is
    given, every step is appended to a JSON lines log and checkpoints are written
    below it.

    :param config: TrainConfig of the run
    :param dataset: TrainingDataset to optimize on, with at least two training views
    :param output_dir: Optional directory for the log and the checkpoints
    :param initial_cloud: Optional cloud to start from instead of a random cloud
        inside the volume the training cameras look at
    """

    def __init__(
        self,
        config: TrainConfig,
        dataset: TrainingDataset,
        output_dir: Optional[str] = None,
        initial_cloud: Optional[GaussianCloud] = None,
    ) -> None:
        if len(dataset.train_views) < 2:
            raise ValueError(
                f"Training needs at least two training views, got "
                f"{len(dataset.train_views)}."
            )
        self.config = config
        self.dataset = dataset
        self.output_dir = output_dir
        torch.set_num_threads(config.num_threads)
        torch.manual_seed(config.seed)
        self.rng = np.random.default_rng(config.seed)
        self.scene_extent = dataset.scene_extent

        if initial_cloud is None:
            lower, upper = bounds_from_cameras(
                [view.camera for view in dataset.train_views]
            )
            initial_cloud = init_cloud(
                CloudInitSpec(
                    count=config.init_num_gaussians,
                    lower=lower,
                    upper=upper,
                    opacity=config.init_opacity,
                ),
                seed=config.seed,
            )
        self.field = MediumField(
            hidden_width=config.hidden_width,
            hidden_layers=config.hidden_layers,
            frequencies=config.direction_frequencies,
            scene_extent=self.scene_extent,
            seed=config.seed,
        )
        self.optimizer = GaussianOptimizer(
            initial_cloud.detached(), self.field, config, self.scene_extent
        )
        self.stats = DensificationStats.zeros(len(self.cloud))
        self.densify_generator = step_generator(config.seed, DENSIFY_SEED_OFFSET)
        self.log: List[Dict[str, Any]] = []
        self.last_checkpoint: Optional[str] = None
        self._view_queue: List[int] = []

    @property
    def cloud(self) -> GaussianCloud:
        """
        Return the cloud that is currently being optimized.
        """
        return self.optimizer.cloud

    def _next_view(self) -> DatasetView:
        """
        Return the training view for the next step, cycling through the views in a
        new random order every epoch.
        """
        if not self._view_queue:
            self._view_queue = self.rng.permutation(
                len(self.dataset.train_views)
            ).tolist()
        return self.dataset.train_views[self._view_queue.pop(0)]

    def _write_record(self, record: Dict[str, Any]) -> None:
        """
        Append a record to the in-memory log and to the log file, if any.
        """
        self.log.append(record)
        if self.output_dir is None:
            return
        with open(os.path.join(self.output_dir, LOG_FILE), "a") as log_file:
            log_file.write(json.dumps(record) + "\n")

    def save_checkpoint(self, step: int) -> Optional[str]:
        """
        Write a checkpoint after `step` completed steps.

        :param step: Number of completed steps
        :return: Path of the checkpoint directory, or None without output directory
        """
        if self.output_dir is None:
            return None
        directory = os.path.join(
            self.output_dir, CHECKPOINT_FOLDER, checkpoint_folder_name(step)
        )
        CheckpointConverter.save(
            Checkpoint(
                cloud=self.cloud.detached(),
                field=self.field,
                config=self.config,
                step=step,
            ),
            directory,
        )
        self.last_checkpoint = directory
        return directory

    def train_step(self, step: int) -> Dict[str, Any]:
        """
        Run a single optimization step.

        :param step: Index of the step
        :raises TrainingAbortedError: If the loss is not finite
        :return: Log record of the step
        """
        config = self.config
        schedule = schedule_at(step, config)
        view = self._next_view()
        baselines = sample_baselines(
            self.rng, config.baseline_range, config.horizontal_baseline_ratio
        )
        self.optimizer.update_learning_rate(step)

        outputs = compute_step(
            self.cloud, self.field, view, schedule, config, baselines
        )
        report = outputs.report
        record: Dict[str, Any] = {"step": step, "view": view.name}
        record.update(report.to_dict())
        if not report.is_finite:
            logging.error(f"Non-finite loss at step {step}: {report.to_dict()}")
            raise TrainingAbortedError(
                step=step,
                losses=report.to_dict(),
                last_checkpoint=self.last_checkpoint,
            )

        params = ParamSet.from_model(self.cloud, network_modules(self.field))
        try:
            backward(report.total, params, terms=outputs.terms)
        except NonFiniteGradientError as error:
            logging.warning(f"Skipping the update of step {step}: {error}")
            self.optimizer.zero_grad()
            record["skipped_update"] = True
            return record

        if schedule.densify_active:
            self.stats.accumulate(outputs.central.splats)
        self.optimizer.step()
        self.optimizer.zero_grad()

        if (
            schedule.densify_active
            and step >= config.densify_from_step
            and (step + 1) % config.densify_interval == 0
        ):
            result = densify_prune(
                self.cloud,
                self.stats,
                config,
                self.scene_extent,
                self.densify_generator,
            )
            if result.changed:
                self.optimizer.replace_cloud(result)
            self.stats = DensificationStats.zeros(len(self.cloud))
            record["densified"] = True
        return record

    def train(self) -> TrainingResult:
        """
        Run the full optimization and validate the result on the held-out views.

        :raises TrainingAbortedError: If the loss becomes non-finite. Checkpoints
            written before the failure are kept
        :return: TrainingResult holding the optimized model and the log
        """
        config = self.config
        if self.output_dir is not None:
            os.makedirs(self.output_dir, exist_ok=True, mode=0o770)
            log_path = os.path.join(self.output_dir, LOG_FILE)
            if os.path.isfile(log_path):
                os.remove(log_path)
        logging.info(
            f"Training {len(self.cloud)} Gaussians for {config.total_steps} steps on "
            f"{len(self.dataset.train_views)} views."
        )
        with logging_redirect_tqdm(tqdm_class=tqdm):
            for step in tqdm(range(config.total_steps), desc="Training"):
                self._write_record(self.train_step(step))
                completed = step + 1
                if (
                    config.checkpoint_interval > 0
                    and completed % config.checkpoint_interval == 0
                    and completed < config.total_steps
                ):
                    self.save_checkpoint(completed)
        final_checkpoint = self.save_checkpoint(config.total_steps)

        views = self.dataset.test_views or self.dataset.train_views
        validation = validate(self.cloud.detached(), self.field, views)
        self._write_record({"validation": validation})
        logging.info(f"Training finished with {len(self.cloud)} Gaussians.")
        return TrainingResult(
            cloud=self.cloud.detached(),
            field=self.field,
            log=self.log,
            validation=validation,
            checkpoint_dir=final_checkpoint,
        )


def train(
    config: TrainConfig,
    dataset: TrainingDataset,
    output_dir: Optional[str] = None,
) -> TrainingResult:
    """
    Optimize a Gaussian cloud and the medium networks on a dataset.

    :param config: TrainConfig of the run
    :param dataset: TrainingDataset with at least two training views
    :param output_dir: Optional directory for the log and the checkpoints
    :return: TrainingResult holding the optimized model, the log and the held-out
        metrics
    """
    return Trainer(config, dataset, output_dir=output_dir).train()
