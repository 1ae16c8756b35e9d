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
import math

from aquasplat.data_models import MetricReport, MetricTask, ViewMetric


class TestMetricReport:
    def test_records_serialize_infinite_psnr(self):
        # Arrange
        report = MetricReport(
            task="restoration",
            views=[
                ViewMetric(name="a", psnr=math.inf, ssim=1.0),
                ViewMetric(name="b", psnr=20.0, ssim=0.5),
            ],
        )

        # Act
        records = report.to_records()

        # Assert
        assert report.task == MetricTask.RESTORATION
        assert len(records) == 3
        assert records[0] == {
            "view": "a",
            "psnr": "inf",
            "ssim": 1.0,
            "task": "restoration",
        }
        assert records[-1]["psnr"] == "inf"
        assert records[-1]["ssim"] == 0.75
        assert records[-1]["num_views"] == 2
        for record in records:
            json.dumps(record, allow_nan=False)

    def test_empty_report(self):
        # Act
        report = MetricReport(task=MetricTask.NOVEL_VIEW)

        # Assert
        assert math.isnan(report.mean_psnr)
        assert math.isnan(report.mean_ssim)
